// nilcyl: rank tables, Magnus expansions, model composition, verification.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage or input error,
// 3 model rejected by the admissibility gate.

#include "nilcyl/suites.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <thread>

using namespace nilcyl;

namespace {

constexpr int kOk = 0, kFail = 1, kUsage = 2, kRejected = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int cmd_ranks(int g, int n, int kmax, const std::string &format) {
  if (g < 0 || n < 1 || 2 * g + n - 1 < 1)
    throw UsageError("need g >= 0, n >= 1 and 2g+n-1 >= 1");
  if (kmax < 2)
    throw UsageError("--kmax must be at least 2");
  const RankTable t = rank_table(Signature(g, n), kmax);
  if (format == "json")
    std::cout << rank_table_json(t).dump(2) << "\n";
  else
    std::cout << rank_table_tsv(t);
  return kOk;
}

int cmd_expand(int g, int n, const std::string &text, int trunc) {
  if (g < 0 || n < 1)
    throw UsageError("need g >= 0 and n >= 1");
  if (trunc < 0 || trunc > 14)
    throw UsageError("--trunc must be in 0..14");
  const Signature sig(g, n);
  if (sig.rank() > 15)
    throw UsageError("at most 15 generators are supported");
  Word w;
  try {
    w = parse_word(sig, text);
  } catch (const ParseError &e) {
    std::cerr << "error: " << e.what() << "\n  " << text << "\n  "
              << std::string(std::min(e.position(), text.size()), ' ')
              << "^\n";
    return kUsage;
  }
  std::cout << print_series(expand(w, trunc)) << "\n";
  return kOk;
}

CylModel load_model(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw UsageError("cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error &e) {
    throw SchemaError(path + ": " + e.what());
  }
  try {
    return model_from_json(j);
  } catch (const SchemaError &e) {
    throw SchemaError(path + ": " + e.what());
  } catch (const NotAdmissible &e) {
    throw NotAdmissible(path + ": " + e.what());
  }
}

int cmd_compose(const std::vector<std::string> &files,
                const std::optional<int> &level) {
  std::optional<CylModel> acc;
  for (const auto &f : files) {
    CylModel M = load_model(f);
    if (level && M.level() != *level)
      throw SchemaError(f + ": level " + std::to_string(M.level()) +
                        " does not match --level " + std::to_string(*level));
    if (acc) {
      if (!(acc->sig() == M.sig()))
        throw SchemaError(f + ": signature differs from the first model");
      if (acc->level() != M.level())
        throw SchemaError(f + ": level differs from the first model");
      acc = compose(*acc, M);
    } else {
      acc = std::move(M);
    }
  }
  std::cout << to_json(*acc, true).dump(2) << "\n";
  return kOk;
}

int cmd_verify(const std::string &suite, const suites::SuiteParams &p,
               const std::string &witness_dir) {
  const auto start = std::chrono::steady_clock::now();
  const auto report = suites::run_suite(suite, p);
  std::cout << suites::render_report(report);
  for (const auto &path : suites::write_witnesses(report, witness_dir))
    std::cout << "witness " << path.string() << "\n";
  const std::chrono::duration<double> wall =
      std::chrono::steady_clock::now() - start;
  std::cerr << "wall " << wall.count() << " s\n";
  return report.passed() ? kOk : kFail;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Free nilpotent quotients, Lie ranks and cylinder models"};
  app.require_subcommand(1);

  int g = 0, n = 3, kmax = 4, trunc = 4;
  std::string format = "tsv", word;

  auto *ranks = app.add_subcommand("ranks", "Print the rank table");
  ranks->add_option("--g", g, "genus")->required();
  ranks->add_option("--n", n, "boundary count")->required();
  ranks->add_option("--kmax", kmax, "largest degree")->capture_default_str();
  ranks->add_option("--format", format)
      ->check(CLI::IsMember({"tsv", "json"}))
      ->capture_default_str();

  auto *exp = app.add_subcommand("expand", "Magnus expansion of a word");
  exp->add_option("--g", g)->capture_default_str();
  exp->add_option("--n", n)->capture_default_str();
  exp->add_option("--word", word, "word such as \"x1^-1 m2\"")->required();
  exp->add_option("--trunc", trunc, "degree bound")->capture_default_str();

  std::vector<std::string> files;
  std::optional<int> level;
  auto *comp = app.add_subcommand("compose", "Compose model files left to right");
  comp->add_option("files", files, "model JSON files")->required();
  comp->add_option("--level", level, "required level of every model");

  std::string suite, witness_dir = "witnesses";
  suites::SuiteParams sp;
  sp.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  auto *ver = app.add_subcommand("verify", "Run a verification suite");
  ver->add_option("--suite", suite)
      ->required()
      ->check(CLI::IsMember(suites::suite_names()));
  ver->add_option("--seed", sp.seed)->capture_default_str();
  ver->add_option("--trials", sp.trials);
  ver->add_option("--rmax", sp.rmax);
  ver->add_option("--kmax", sp.kmax);
  ver->add_option("--g", sp.g);
  ver->add_option("--n", sp.n);
  ver->add_option("--k", sp.k);
  ver->add_option("--case", sp.only_case, "run one case index");
  ver->add_option("--jobs", sp.jobs)->check(CLI::PositiveNumber);
  ver->add_option("--witness-dir", witness_dir)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*ranks)
      return cmd_ranks(g, n, kmax, format);
    if (*exp)
      return cmd_expand(g, n, word, trunc);
    if (*comp)
      return cmd_compose(files, level);
    return cmd_verify(suite, sp, witness_dir);
  } catch (const NotAdmissible &e) {
    std::cerr << "rejected: " << e.what() << "\n";
    return kRejected;
  } catch (const SchemaError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
