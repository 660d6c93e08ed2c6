#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "canimm/records.hpp"
#include "canimm/schnorr.hpp"

namespace {

using namespace canimm;

// Writes to --out when given, stdout otherwise.
void emit(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(out);
  if (!os) throw std::runtime_error("cannot write " + out);
  os << text;
}

int cmd_build(const std::string& name, BuildConfig config, bool stages_given,
              const std::string& pool_file, const std::string& out) {
  if (stages_given && config.stages == 0) throw std::invalid_argument("--stages must be positive");
  if (!pool_file.empty()) {
    std::ifstream is(pool_file);
    if (!is) throw std::runtime_error("cannot read pool file " + pool_file);
    config.pool = Registry::read(is);
  }
  config.construction = name;
  const RunRecord run = build_run(config);
  std::ostringstream os;
  run.write(os);
  emit(out, os.str());
  return 0;
}

int cmd_check(const std::string& suite, const std::string& file, bool expect_fail,
              const std::string& out) {
  std::ifstream is(file);
  if (!is) {
    std::cerr << "canimm: cannot read " << file << '\n';
    return 2;
  }
  const RunRecord run = RunRecord::read(is);
  const auto verdicts = check_run(run, suite);
  std::ostringstream os;
  std::size_t fails = 0;
  std::size_t inconclusive = 0;
  for (const auto& v : verdicts) {
    v.write(os);
    if (v.failed()) ++fails;
    if (v.status == Status::Inconclusive) ++inconclusive;
  }
  os << "summary\tverdicts=" << verdicts.size() << "\tfail=" << fails
     << "\tinconclusive=" << inconclusive << '\n';
  emit(out, os.str());
  if (expect_fail) return fails > 0 ? 0 : 1;
  return fails > 0 ? 1 : 0;
}

int cmd_measure(std::uint64_t n, std::uint64_t m) {
  if (m <= n) throw std::invalid_argument("measure needs M > n");
  const auto b = check_schnorr_bound(n, m);
  const std::string bound = n == 0 ? "1" : "1/2^" + std::to_string(n);
  std::cout << b.measure.to_string() << " ≤ " << bound << ": " << (b.holds ? "true" : "false")
            << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-horizon constructions and checks for canonical immunity"};
  app.require_subcommand(1);

  std::string out;
  std::string pool_file;

  BuildConfig config;
  std::string construction;
  auto* build = app.add_subcommand("build", "run a construction and write its run file");
  build->add_option("construction", construction, "construction name")
      ->required()
      ->check(CLI::IsMember(construction_names()));
  auto* stages_opt = build->add_option("--stages", config.stages, "stage horizon S");
  build->add_option("--markers", config.markers, "marker count N (also the cofinal bit count)")
      ->check(CLI::PositiveNumber);
  build->add_option("--index-bound", config.index_bound, "largest index checked")
      ->check(CLI::PositiveNumber);
  build->add_option("--budget", config.budget, "step or search budget")->check(CLI::PositiveNumber);
  build->add_option("--blocks", config.blocks, "block, pair or table count")
      ->check(CLI::PositiveNumber);
  build->add_option("--bits", config.bits, "cofinal input string")
      ->check([](const std::string& s) {
        return s.find_first_not_of("01") == std::string::npos ? "" : "bits must be 0 or 1";
      });
  build->add_option("--schedule", config.schedule, "generic transformer list");
  build->add_option("--sigma", config.sigma, "2generic-witness base string");
  build->add_option("--pool", pool_file, "registry file (id, rule code, flag per line)");
  build->add_option("--out", out, "output file");

  std::string suite;
  std::string file;
  bool expect_fail = false;
  auto* check = app.add_subcommand("check", "re-verify the claims of a run file");
  check->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
  check->add_option("file", file, "run file")->required();
  check->add_flag("--expect-fail", expect_fail, "succeed only if some verdict is FAIL");
  check->add_option("--out", out, "verdict file");

  std::uint64_t n = 0;
  std::uint64_t m = 0;
  auto* measure = app.add_subcommand("measure", "exact measure of the truncated U_n");
  measure->add_option("n", n)->required();
  measure->add_option("M", m)->required();

  auto* pool = app.add_subcommand("pool", "print the default registry");
  pool->add_option("--out", out, "output file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build) return cmd_build(construction, config, stages_opt->count() > 0, pool_file, out);
    if (*check) return cmd_check(suite, file, expect_fail, out);
    if (*measure) return cmd_measure(n, m);
    if (*pool) {
      std::ostringstream os;
      default_pool().write(os);
      emit(out, os.str());
      return 0;
    }
  } catch (const ExtensionViolation& ex) {
    std::cerr << "canimm: " << ex.what() << '\n';
    return 3;
  } catch (const std::exception& ex) {
    std::cerr << "canimm: " << ex.what() << '\n';
    return 2;
  }
  return 0;
}
