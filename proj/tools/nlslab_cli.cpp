#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nlslab/error.hpp"
#include "nlslab/experiment.hpp"

namespace fs = std::filesystem;

namespace {

// 0 all audits passed, 1 an audit failed, 2 invalid config, 3 runtime failure.
constexpr int kAuditFailed = 1;
constexpr int kBadConfig = 2;
constexpr int kRuntimeError = 3;

fs::path output_root(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("NLSLAB_OUT"); env && *env) return env;
  return "nlslab_out";
}

void print_result(const nlslab::ExperimentResult& r) {
  for (const auto& a : r.audits) {
    std::cout << (a.passed ? "PASS " : "FAIL ") << r.name << "/" << a.name << ": " << a.detail << "\n";
  }
  std::cout << r.name << ": " << (r.passed() ? "passed" : "FAILED") << " -> " << r.out_dir.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nlslab: numerical laboratory for defocusing 1D NLS"};
  app.require_subcommand(1);

  std::string out;
  unsigned workers = 1;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
  app.add_option("--out", out, "Output root (default $NLSLAB_OUT or ./nlslab_out)");
  app.add_option("--workers", workers, "Concurrent experiments in a suite")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Override the config seed");
  app.add_flag("-q,--quiet", quiet, "Suppress progress lines");

  // Global options may also follow the subcommand.
  app.fallthrough();
  std::string config_path;
  auto* run = app.add_subcommand("run", "Run one experiment config");
  run->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  auto* validate = app.add_subcommand("validate", "Parse and validate a config without running it");
  validate->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  auto* suite = app.add_subcommand("suite", "Run every config listed in a matrix file");
  suite->add_option("matrix", config_path, "Matrix file")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);
  std::ostream* log = quiet ? nullptr : &std::clog;

  try {
    if (*validate || *run) {
      const auto cfg = nlslab::parse_experiment(nlslab::Config::load(config_path), seed,
                                                fs::path(config_path).stem().string());
      if (*validate) {
        std::cout << "valid " << nlslab::to_string(cfg.kind) << " config " << cfg.hash << "\n"
                  << cfg.canonical;
        return 0;
      }
      const auto res = nlslab::run_experiment(cfg, output_root(out) / cfg.name, log);
      print_result(res);
      return res.passed() ? 0 : kAuditFailed;
    }

    const auto entries = nlslab::run_suite(nlslab::read_matrix(config_path), output_root(out),
                                           workers, seed, log);
    bool ok = true;
    for (const auto& e : entries) {
      if (e.result) {
        print_result(*e.result);
        ok = ok && e.result->passed();
      } else {
        std::cout << "ERROR " << e.config.string() << ": " << e.error << "\n";
        ok = false;
      }
    }
    return ok ? 0 : kAuditFailed;
  } catch (const nlslab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kBadConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
}
