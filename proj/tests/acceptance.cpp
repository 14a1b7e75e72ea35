// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include "nilcyl/suites.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <sys/wait.h>

using namespace nilcyl;

namespace {

struct Verdict {
  bool ok = true;
  std::string note;
};

// Lyndon words of length k over r letters (Duval's generator).
long lyndon_count(int r, int k) {
  long count = 0;
  std::vector<int> w{-1};
  while (!w.empty()) {
    ++w.back();
    if (static_cast<int>(w.size()) == k)
      ++count;
    const std::size_t m = w.size();
    while (static_cast<int>(w.size()) < k)
      w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == r - 1)
      w.pop_back();
  }
  return count;
}

std::vector<Signature> signatures_up_to(int rmax) {
  std::vector<Signature> out;
  for (int g = 0; 2 * g <= rmax; ++g)
    for (int n = 1; 2 * g + n - 1 <= rmax; ++n)
      if (2 * g + n - 1 >= 1)
        out.emplace_back(g, n);
  return out;
}

Integer kernel_rank(const Signature &sig, int k) {
  const IntMatrix P = pk_matrix(sig, k);
  return Integer(P.cols() - smith(P).rank);
}

Verdict suite_verdict(const std::string &name, const suites::SuiteParams &p,
                      std::size_t expected_cases) {
  const auto rep = suites::run_suite(name, p);
  std::ostringstream note;
  note << rep.cases.size() - static_cast<std::size_t>(rep.failures()) << "/"
       << rep.cases.size() << " cases";
  if (rep.cases.size() != expected_cases)
    return {false, note.str() + ", expected " + std::to_string(expected_cases)};
  return {rep.passed(), note.str()};
}

std::pair<int, std::string> run_cli(const std::string &args) {
  const std::string cmd = std::string(NILCYL_BIN) + " " + args + " 2>/dev/null";
  std::string out;
  FILE *p = popen(cmd.c_str(), "r");
  if (!p)
    return {-1, out};
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0)
    out.append(buf.data(), got);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Verdict witt_counts() {
  for (int r = 1; r <= 4; ++r)
    for (int k = 1; k <= 8; ++k) {
      const auto hall = hall_basis(Signature(0, r + 1), k).ids.size();
      const Integer formula = witt_rank(r, k);
      const long lyndon = lyndon_count(r, k);
      if (Integer(static_cast<long>(hall)) != formula || formula != lyndon)
        return {false, "r=" + std::to_string(r) + " k=" + std::to_string(k)};
    }
  return {true, "32 pairs"};
}

Verdict dk_ranks() {
  int n = 0;
  for (const auto &sig : signatures_up_to(4))
    for (int k = 2; k <= 5; ++k, ++n) {
      const int r = sig.rank();
      if (kernel_rank(sig, k) != r * witt_rank(r, k) - witt_rank(r, k + 1))
        return {false, "g=" + std::to_string(sig.g) + " n=" +
                           std::to_string(sig.n) + " k=" + std::to_string(k)};
    }
  return {true, std::to_string(n) + " cases"};
}

Verdict dprime() {
  int n = 0;
  for (const auto &sig : signatures_up_to(4))
    for (int k = 2; k <= 4; ++k, ++n)
      if (!dprime_lattice_matches(sig, k))
        return {false, "g=" + std::to_string(sig.g) + " n=" +
                           std::to_string(sig.n) + " k=" + std::to_string(k)};
  return {true, std::to_string(n) + " cases"};
}

Verdict first_quotient() {
  for (int n = 2; n <= 6; ++n) {
    const RankRow row = rank_table(Signature(0, n), 2).rows.at(0);
    const Integer excess = row.dkHprime - (n - 1);
    if (excess != Integer((n - 1) * (n - 2) / 2))
      return {false, "n=" + std::to_string(n)};
  }
  return {true, "n = 2..6"};
}

Verdict ad_injective() {
  int n = 0;
  for (const auto &sig : signatures_up_to(4))
    for (int i = 1; i < sig.n; ++i) {
      const int x = sig.x(i);
      for (int k = 2; k <= 4; ++k, ++n) {
        const IntMatrix A = ad_matrix(sig, x, k);
        if (rank(A) != A.cols())
          return {false, "not injective at k=" + std::to_string(k)};
      }
      const auto ker = kernel_basis(ad_matrix(sig, x, 1));
      ++n;
      if (ker.size() != 1 || ker[0][static_cast<std::size_t>(x)] * ker[0][static_cast<std::size_t>(x)] != 1)
        return {false, "degree-one kernel is not spanned by the letter"};
      for (int b = 0; b < sig.rank(); ++b)
        if (b != x && sgn(ker[0][static_cast<std::size_t>(b)]) != 0)
          return {false, "degree-one kernel is not spanned by the letter"};
    }
  return {true, std::to_string(n) + " cases"};
}

Verdict h3_cokernel() {
  for (int r = 1; r <= 3; ++r) {
    const Signature sig(0, r + 1);
    for (int k = 2; k <= 4; ++k) {
      Integer rhs = h3_rank(sig, k);
      for (int i = k + 1; i <= 2 * k - 2; ++i)
        rhs -= kernel_rank(sig, i);
      if (kernel_rank(sig, k) != rhs)
        return {false, "r=" + std::to_string(r) + " k=" + std::to_string(k)};
    }
  }
  return {true, "9 cases"};
}

Verdict cli_determinism() {
  const std::string args =
      "verify --suite crossed-hom --seed 17 --trials 10 --witness-dir /tmp/nilcyl_acceptance";
  const auto a = run_cli(args);
  const auto b = run_cli(args + " --jobs 1");
  if (a.first != 0 || b.first != 0)
    return {false, "verify exited with " + std::to_string(a.first)};
  if (a.second.empty() || a.second != b.second)
    return {false, "reports differ"};
  return {true, std::to_string(a.second.size()) + " bytes identical"};
}

} // namespace

int main() {
  suites::SuiteParams p;
  p.jobs = 4;

  struct Criterion {
    int id;
    const char *name;
    double limit; // seconds, 0 = none
    std::function<Verdict()> check;
  };
  const std::vector<Criterion> criteria = {
      {1, "Witt counts", 5, witt_counts},
      {2, "bracket kernel ranks", 60, dk_ranks},
      {3, "prime kernel lattice", 0, dprime},
      {4, "first quotient count", 0, first_quotient},
      {5, "ad injectivity", 0, ad_injective},
      {6, "theta round trip and additivity", 120,
       [&] { return suite_verdict("theta", p, 4 * 200); }},
      {7, "crossed-homomorphism law", 0,
       [&] {
         suites::SuiteParams q = p;
         q.trials = 50;
         return suite_verdict("crossed-hom", q, 4 * 50 + 2 * 50);
       }},
      {8, "H3 rank and cokernel consistency", 0, h3_cokernel},
      {9, "lifts of automorphisms", 0,
       [&] { return suite_verdict("lift-aut", p, 100); }},
      {10, "split projection is a homomorphism", 0,
       [&] { return suite_verdict("split-f", p, 3 * 100); }},
      {11, "symplectic block test", 0,
       [&] { return suite_verdict("autstar-h", p, 100); }},
      {12, "CLI determinism", 0, cli_determinism},
  };

  int failed = 0;
  for (const auto &c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception &e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const std::chrono::duration<double> dt =
        std::chrono::steady_clock::now() - start;
    if (c.limit > 0 && dt.count() > c.limit) {
      v.ok = false;
      v.note += ", over the time limit";
    }
    failed += v.ok ? 0 : 1;
    std::printf("%s %2d %s (%s, %.2f s)\n", v.ok ? "PASS" : "FAIL", c.id,
                c.name, v.note.c_str(), dt.count());
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
