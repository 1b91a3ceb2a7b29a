// dplab: batch runner for double-phase experiments.
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "dplab/error.hpp"
#include "dplab/experiments.hpp"

namespace {

enum Exit : int { ok = 0, runtime_failure = 1, parse_failure = 2, check_failure = 3 };

std::optional<dplab::ExperimentPlan> load_plan(const std::string& path) {
  try {
    return dplab::plan_from_config(dplab::IniDocument::load(path));
  } catch (const dplab::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const dplab::PreconditionError& e) {
    std::cerr << "error: " << path << ": " << e.what() << '\n';
  }
  return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dplab: experiments for double-phase parabolic equations"};
  app.require_subcommand(1);

  std::string config;
  std::string out_dir;
  int threads = 0;
  std::optional<std::uint64_t> seed;

  auto* run = app.add_subcommand("run", "run an experiment config");
  run->add_option("config", config, "INI experiment config")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "output directory (default: $DPLAB_OUT or ./out)");
  run->add_option("--threads", threads, "cap on worker threads")->check(CLI::NonNegativeNumber);
  run->add_option("--seed", seed, "override the seed of randomized experiments");

  auto* validate = app.add_subcommand("validate", "check a config without running it");
  validate->add_option("config", config, "INI experiment config")->required()->check(CLI::ExistingFile);

  app.add_subcommand("list", "list experiment kinds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? Exit::ok : Exit::parse_failure;
  }

  if (app.got_subcommand("list")) {
    for (const auto& [kind, what] : dplab::experiment_catalog()) {
      std::cout << fmt::format("{:<16}{}\n", kind, what);
    }
    return Exit::ok;
  }

  const auto plan = load_plan(config);
  if (!plan) return Exit::parse_failure;
  if (app.got_subcommand("validate")) {
    std::cout << "ok (" << dplab::plan_kind(*plan) << ")\n";
    return Exit::ok;
  }

#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#endif
  if (out_dir.empty()) {
    const char* env = std::getenv("DPLAB_OUT");
    out_dir = env && *env ? env : "out";
  }

  dplab::ExperimentResult result;
  try {
    result = dplab::run_plan(*plan, seed);
    dplab::write_outputs(out_dir, result);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return Exit::runtime_failure;
  }
  dplab::write_report(std::cout, result);
  std::cout << "outputs: " << std::filesystem::path(out_dir).string() << '\n';
  return result.passed() ? Exit::ok : Exit::check_failure;
}
