#include "nilcyl/suites.hpp"

#include "nilcyl/sampling.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

namespace nilcyl::suites {

using namespace sampling;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  Json inputs = Json::object();
};

struct Case {
  std::string group;
  std::function<Outcome(Rng &)> run;
};

struct Plan {
  Json grid;
  std::vector<Case> cases;
};

Outcome check(bool ok, std::string detail = {}, Json inputs = Json::object()) {
  return {ok, ok ? std::string() : std::move(detail), std::move(inputs)};
}

std::string sig_label(const Signature &s) {
  return "g=" + std::to_string(s.g) + ",n=" + std::to_string(s.n);
}

// Signatures with 1 <= 2g+n-1 <= rmax.
std::vector<Signature> signatures_up_to(int rmax) {
  std::vector<Signature> out;
  for (int g = 0; 2 * g <= rmax; ++g)
    for (int n = 1; 2 * g + n - 1 <= rmax; ++n)
      if (2 * g + n - 1 >= 1)
        out.emplace_back(g, n);
  return out;
}

int need_positive(const std::optional<int> &v, int fallback, const char *name) {
  const int x = v.value_or(fallback);
  if (x < 1)
    throw std::invalid_argument(std::string("--") + name + " must be positive");
  return x;
}

struct SigK {
  Signature sig;
  int k;
};

std::vector<SigK> grid_or(const SuiteParams &p, std::vector<SigK> fallback) {
  if (p.g || p.n || p.k) {
    if (!(p.g && p.n && p.k))
      throw std::invalid_argument("--g, --n and --k must be given together");
    if (*p.g < 0 || *p.n < 1 || *p.k < 2)
      throw std::invalid_argument("need g >= 0, n >= 1, k >= 2");
    return {{Signature(*p.g, *p.n), *p.k}};
  }
  return fallback;
}

Json sigk_json(const std::vector<SigK> &v) {
  Json a = Json::array();
  for (const auto &s : v)
    a.push_back(Json::array({s.sig.g, s.sig.n, s.k}));
  return a;
}

Plan plan_witt(const SuiteParams &p) {
  const int rmax = need_positive(p.rmax, 4, "rmax");
  const int kmax = need_positive(p.kmax, 8, "kmax");
  Plan plan{Json{{"rmax", rmax}, {"kmax", kmax}}, {}};
  for (int r = 1; r <= rmax; ++r)
    for (int k = 1; k <= kmax; ++k)
      plan.cases.push_back(
          {"r=" + std::to_string(r) + ",k=" + std::to_string(k), [r, k](Rng &) {
             const Integer count(static_cast<long>(
                 hall_basis(Signature(0, r + 1), k).ids.size()));
             const Integer expect = witt_rank(r, k);
             return check(count == expect, "Hall count " + count.get_str() +
                                               " vs formula " + expect.get_str());
           }});
  return plan;
}

Plan plan_dk_rank(const SuiteParams &p) {
  const int rmax = need_positive(p.rmax, 4, "rmax");
  const int kmax = need_positive(p.kmax, 5, "kmax");
  Plan plan{Json{{"rmax", rmax}, {"kmax", kmax}}, {}};
  for (const auto &sig : signatures_up_to(rmax))
    for (int k = 2; k <= kmax; ++k)
      plan.cases.push_back(
          {sig_label(sig) + ",k=" + std::to_string(k), [sig, k](Rng &) {
             const int r = sig.rank();
             const IntMatrix P = pk_matrix(sig, k);
             const int rk = rank(P);
             const Integer ker(P.cols() - rk);
             const Integer expect = r * witt_rank(r, k) - witt_rank(r, k + 1);
             if (Integer(rk) != witt_rank(r, k + 1))
               return check(false, "bracket map is not surjective");
             return check(ker == expect, "kernel rank " + ker.get_str() +
                                             " vs formula " + expect.get_str());
           }});
  return plan;
}

Plan plan_dprime(const SuiteParams &p) {
  const int rmax = need_positive(p.rmax, 4, "rmax");
  const int kmax = need_positive(p.kmax, 4, "kmax");
  Plan plan{Json{{"rmax", rmax}, {"kmax", kmax}}, {}};
  for (const auto &sig : signatures_up_to(rmax))
    for (int k = 2; k <= kmax; ++k)
      plan.cases.push_back(
          {sig_label(sig) + ",k=" + std::to_string(k), [sig, k](Rng &) {
             return check(dprime_lattice_matches(sig, k),
                          "alpha-block kernel differs from the prime lattice");
           }});
  return plan;
}

Plan plan_ad(const SuiteParams &p) {
  const int rmax = need_positive(p.rmax, 4, "rmax");
  const int kmax = need_positive(p.kmax, 4, "kmax");
  Plan plan{Json{{"rmax", rmax}, {"kmax", kmax}}, {}};
  for (const auto &sig : signatures_up_to(rmax))
    for (int i = 1; i < sig.n; ++i)
      for (int k = 1; k <= kmax; ++k)
        plan.cases.push_back({sig_label(sig) + ",i=" + std::to_string(i) +
                                  ",k=" + std::to_string(k),
                              [sig, i, k](Rng &) {
                                return check(
                                    ad_injective_as_expected(sig, sig.x(i), k),
                                    "unexpected kernel of ad");
                              }});
  return plan;
}

Plan plan_theta(const SuiteParams &p) {
  const int trials = need_positive(p.trials, 100, "trials");
  const auto grid = grid_or(p, {{Signature(0, 4), 2},
                                {Signature(1, 2), 2},
                                {Signature(0, 3), 3},
                                {Signature(1, 1), 3}});
  Plan plan{Json{{"points", sigk_json(grid)}, {"trials", trials}}, {}};
  for (const auto &[sig, k] : grid) {
    const std::string label = sig_label(sig) + ",k=" + std::to_string(k);
    for (int t = 0; t < trials; ++t)
      plan.cases.push_back({label + " roundtrip", [sig, k](Rng &rng) {
                              const GradedTuple a = random_kernel_tuple(sig, k, rng);
                              const GradedTuple back = theta(realize(a), k);
                              return check(back == a, "theta(realize(t)) != t",
                                           Json{{"tuple", to_json(a)}});
                            }});
    for (int t = 0; t < trials; ++t)
      plan.cases.push_back({label + " additive", [sig, k](Rng &rng) {
                              const GradedTuple a = random_kernel_tuple(sig, k, rng);
                              const GradedTuple b = random_kernel_tuple(sig, k, rng);
                              const NilAut pa = realize(a), pb = realize(b);
                              return check(theta(compose(pb, pa), k) == a + b,
                                           "theta is not additive",
                                           Json{{"phi", to_json(pa)},
                                                {"psi", to_json(pb)}});
                            }});
  }
  return plan;
}

Plan plan_crossed(const SuiteParams &p) {
  const int trials = need_positive(p.trials, 50, "trials");
  const auto grid = grid_or(p, {{Signature(0, 3), 3},
                                {Signature(1, 2), 3},
                                {Signature(0, 4), 3},
                                {Signature(1, 1), 4}});
  Plan plan{Json{{"points", sigk_json(grid)}, {"trials", trials}}, {}};
  for (const auto &[sig, k] : grid) {
    const std::string label = sig_label(sig) + ",k=" + std::to_string(k);
    for (int t = 0; t < trials; ++t)
      plan.cases.push_back({label + " intertwine", [sig, k](Rng &rng) {
                              const CylModel M = random_model(sig, k, rng);
                              const CylModel N = random_model(sig, k, rng);
                              const bool ok =
                                  derive_eta(compose(M, N))
                                      .same_as(compose(derive_eta(M), derive_eta(N)));
                              return check(ok, "eta(MN) != eta(M) eta(N)",
                                           Json{{"M", to_json(M)}, {"N", to_json(N)}});
                            }});
  }
  // entrywise products on models trivial below degree k-1
  for (int k : {3, 4}) {
    const Signature sig = k == 3 ? Signature(1, 2) : Signature(0, 3);
    const std::string label = sig_label(sig) + ",k=" + std::to_string(k);
    for (int t = 0; t < trials; ++t)
      plan.cases.push_back({label + " entrywise", [sig, k](Rng &rng) {
                              ModelOptions opt;
                              opt.start_degree = k - 1;
                              const CylModel M = random_model(sig, k, rng, opt);
                              const CylModel N = random_model(sig, k, rng, opt);
                              const CylModel MN = compose(M, N);
                              bool ok = true;
                              for (int b = 0; b < sig.rank(); ++b)
                                ok = ok && equal_mod(MN.mu()[b],
                                                     M.mu()[b] * N.mu()[b], k);
                              return check(ok, "entries are not multiplicative",
                                           Json{{"M", to_json(M)}, {"N", to_json(N)}});
                            }});
  }
  return plan;
}

Plan plan_h3(const SuiteParams &p) {
  const int rmax = need_positive(p.rmax, 3, "rmax");
  const int kmax = need_positive(p.kmax, 4, "kmax");
  Plan plan{Json{{"rmax", rmax}, {"kmax", kmax}}, {}};
  for (int r = 1; r <= rmax; ++r)
    for (int k = 2; k <= kmax; ++k)
      plan.cases.push_back(
          {"r=" + std::to_string(r) + ",k=" + std::to_string(k), [r, k](Rng &) {
             const Signature sig(0, r + 1);
             auto snf_rank = [&](int i) {
               const IntMatrix P = pk_matrix(sig, i);
               return Integer(P.cols() - rank(P));
             };
             Integer rhs = h3_rank(sig, k);
             for (int i = k + 1; i <= 2 * k - 2; ++i)
               rhs -= snf_rank(i);
             const Integer lhs = snf_rank(k);
             return check(lhs == rhs, "rank " + lhs.get_str() +
                                          " vs cokernel count " + rhs.get_str());
           }});
  return plan;
}

Plan plan_lift(const SuiteParams &p) {
  const int trials = need_positive(p.trials, 100, "trials");
  const Signature sigs[] = {Signature(0, 3), Signature(1, 2), Signature(0, 4),
                            Signature(1, 1)};
  Plan plan{Json{{"trials", trials}}, {}};
  for (int t = 0; t < trials; ++t) {
    const Signature sig = sigs[t % 4];
    const int k = 2 + (t / 4) % 2;
    const int l = k + 1 + (t / 8) % 2;
    plan.cases.push_back(
        {sig_label(sig) + ",k=" + std::to_string(k) + ",l=" + std::to_string(l),
         [sig, k, l](Rng &rng) {
           const NilAut phi = random_automorphism(sig, k, rng);
           const NilAut lift = random_lift(phi, l, rng);
           const bool ok = is_automorphism(lift) && truncate(lift, k).same_as(phi);
           return check(ok, "lift is not an automorphism",
                        Json{{"phi", to_json(phi)}, {"lift", to_json(lift)}});
         }});
  }
  return plan;
}

Plan plan_split(const SuiteParams &p) {
  const int trials = need_positive(p.trials, 100, "trials");
  std::vector<Signature> sigs = {Signature(0, 3), Signature(0, 4),
                                 Signature(1, 2)};
  if (p.g || p.n) {
    if (!(p.g && p.n))
      throw std::invalid_argument("--g and --n must be given together");
    sigs = {Signature(*p.g, *p.n)};
  }
  Json pts = Json::array();
  for (const auto &s : sigs)
    pts.push_back(Json::array({s.g, s.n}));
  Plan plan{Json{{"points", pts}, {"trials", trials}}, {}};
  for (const auto &sig : sigs)
    for (int t = 0; t < trials; ++t)
      plan.cases.push_back({sig_label(sig), [sig](Rng &rng) {
                              ModelOptions opt;
                              opt.zero_framed = true;
                              opt.h15 = true;
                              const CylModel M = random_model(sig, 3, rng, opt);
                              const CylModel N = random_model(sig, 3, rng, opt);
                              const bool ok =
                                  split_projection_f(compose(M, N))
                                      .same_as(compose(split_projection_f(M),
                                                       split_projection_f(N)));
                              return check(ok, "f(MN) != f(M) f(N)",
                                           Json{{"M", to_json(M)}, {"N", to_json(N)}});
                            }});
  return plan;
}

IntMatrix violate_block_form(const Signature &sig, const IntMatrix &A,
                             Rng &rng) {
  IntMatrix B = A;
  const int nx = sig.n - 1;
  const int r = sig.rank();
  const long d = uniform(rng, 0, 1) ? 1 : -1;
  switch (uniform(rng, 0, 2)) {
  case 0: // m/l row in an x column
    if (nx > 0) {
      B(static_cast<int>(uniform(rng, nx, r - 1)),
        static_cast<int>(uniform(rng, 0, nx - 1))) += d;
      break;
    }
    [[fallthrough]];
  case 1: { // scale an m/l column: P no longer symplectic
    const int c = static_cast<int>(uniform(rng, nx, r - 1));
    for (int a = 0; a < r; ++a)
      B(a, c) *= 2;
    break;
  }
  default: // shear inside P that breaks the form
    B(nx, nx) += d;
    break;
  }
  return B;
}

Plan plan_autstar_h(const SuiteParams &p) {
  const int trials = need_positive(p.trials, 100, "trials");
  const Signature sigs[] = {Signature(1, 1), Signature(1, 2), Signature(2, 1),
                            Signature(1, 3)};
  Plan plan{Json{{"trials", trials}}, {}};
  for (int t = 0; t < trials; ++t) {
    const Signature sig = sigs[t % 4];
    plan.cases.push_back({sig_label(sig), [sig](Rng &rng) {
                            ModelOptions opt;
                            opt.zero_framed = true;
                            const CylModel M = random_model(sig, 3, rng, opt);
                            const IntMatrix A = abelianization(derive_eta(M));
                            if (!aut_star_H_member(sig, A))
                              return check(false, "model action fails block test",
                                           Json{{"M", to_json(M)}});
                            const IntMatrix B = violate_block_form(sig, A, rng);
                            return check(!aut_star_H_member(sig, B),
                                         "violated matrix passes block test",
                                         Json{{"M", to_json(M)},
                                              {"matrix", B.to_string()}});
                          }});
  }
  return plan;
}

using Planner = Plan (*)(const SuiteParams &);

const std::map<std::string, Planner> &planners() {
  static const std::map<std::string, Planner> m = {
      {"witt", plan_witt},         {"dk-rank", plan_dk_rank},
      {"lemma-dprime", plan_dprime}, {"ad-inject", plan_ad},
      {"theta", plan_theta},       {"crossed-hom", plan_crossed},
      {"h3-coker", plan_h3},       {"lift-aut", plan_lift},
      {"split-f", plan_split},     {"autstar-h", plan_autstar_h}};
  return m;
}

std::string group_of(const std::string &key) {
  return key.substr(0, key.rfind('#'));
}

} // namespace

bool SuiteReport::passed() const { return failures() == 0; }

int SuiteReport::failures() const {
  return static_cast<int>(std::count_if(cases.begin(), cases.end(),
                                        [](const auto &c) { return !c.pass; }));
}

const std::vector<std::string> &suite_names() {
  static const std::vector<std::string> names = {
      "witt",  "dk-rank",  "lemma-dprime", "ad-inject", "theta",
      "crossed-hom", "h3-coker", "lift-aut", "split-f", "autstar-h"};
  return names;
}

bool is_suite(const std::string &name) { return planners().count(name) > 0; }

SuiteReport run_suite(const std::string &name, const SuiteParams &p) {
  auto it = planners().find(name);
  if (it == planners().end())
    throw std::invalid_argument("unknown suite '" + name + "'");
  const Plan plan = it->second(p);
  const int total = static_cast<int>(plan.cases.size());
  std::vector<int> todo;
  if (p.only_case) {
    if (*p.only_case < 0 || *p.only_case >= total)
      throw std::invalid_argument("--case out of range (suite has " +
                                  std::to_string(total) + " cases)");
    todo.push_back(*p.only_case);
  } else {
    for (int i = 0; i < total; ++i)
      todo.push_back(i);
  }

  std::map<std::string, int> seen;
  std::vector<std::string> keys(static_cast<std::size_t>(total));
  for (int i = 0; i < total; ++i) {
    const std::string &g = plan.cases[static_cast<std::size_t>(i)].group;
    keys[static_cast<std::size_t>(i)] = g + "#" + std::to_string(seen[g]++);
  }

  std::vector<CaseResult> results(todo.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t slot; (slot = next++) < todo.size();) {
      const int i = todo[slot];
      CaseResult &res = results[slot];
      res.index = i;
      res.key = keys[static_cast<std::size_t>(i)];
      Rng rng = case_rng(p.seed, static_cast<std::uint64_t>(i));
      try {
        Outcome o = plan.cases[static_cast<std::size_t>(i)].run(rng);
        res.pass = o.pass;
        res.detail = std::move(o.detail);
        if (!o.pass)
          res.inputs = std::move(o.inputs);
      } catch (const std::exception &e) {
        res.pass = false;
        res.detail = std::string("exception: ") + e.what();
      }
    }
  };
  const int jobs = std::max(1, std::min<int>(p.jobs, static_cast<int>(todo.size())));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j)
    pool.emplace_back(worker);
  worker();
  for (auto &t : pool)
    t.join();

  return SuiteReport{name, plan.grid, p.seed, std::move(results)};
}

std::string render_report(const SuiteReport &r) {
  std::ostringstream out;
  out << "suite " << r.suite << "\n";
  out << "seed " << r.seed << "\n";
  out << "grid " << r.grid.dump() << "\n";
  std::vector<std::string> order;
  std::map<std::string, std::pair<int, int>> groups; // passed, total
  for (const auto &c : r.cases) {
    const std::string g = group_of(c.key);
    if (!groups.count(g))
      order.push_back(g);
    auto &[pass, total] = groups[g];
    ++total;
    pass += c.pass ? 1 : 0;
  }
  for (const auto &g : order) {
    const auto [pass, total] = groups[g];
    out << (pass == total ? "ok   " : "FAIL ") << g << " " << pass << "/"
        << total << "\n";
  }
  for (const auto &c : r.cases)
    if (!c.pass)
      out << "failed case " << c.index << " " << c.key << ": " << c.detail
          << "\n";
  const int total = static_cast<int>(r.cases.size());
  out << "result " << (r.passed() ? "PASS" : "FAIL") << " "
      << total - r.failures() << "/" << total << "\n";
  return out.str();
}

std::vector<std::filesystem::path>
write_witnesses(const SuiteReport &r, const std::filesystem::path &dir) {
  std::vector<std::filesystem::path> paths;
  if (r.passed())
    return paths;
  std::filesystem::create_directories(dir);
  for (const auto &c : r.cases) {
    if (c.pass)
      continue;
    const Json w{{"suite", r.suite}, {"seed", r.seed},   {"case", c.index},
                 {"key", c.key},     {"grid", r.grid},   {"detail", c.detail},
                 {"inputs", c.inputs}};
    const auto path = dir / (r.suite + "-seed" + std::to_string(r.seed) +
                             "-case" + std::to_string(c.index) + ".json");
    std::ofstream(path) << w.dump(2) << "\n";
    paths.push_back(path);
  }
  return paths;
}

} // namespace nilcyl::suites
