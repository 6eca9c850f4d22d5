// infsup: run stability and convergence experiments and emit CSV/JSON reports.
//
//   infsup [run] <spectral|fourier|fem|saddle|diagnose|counterexample> [flags]
//
// Exit status: 0 when every assertion passes, 2 when one fails, 1 on input errors.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "infsup/config.hpp"
#include "infsup/errors.hpp"
#include "infsup/experiments.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitInputError = 1;
constexpr int kExitAssertion = 2;

struct Flag {
  std::string name;
  std::string key;
  std::string help;
  std::string value;
};

bool is_input_error(infsup::ErrorCode code) {
  using infsup::ErrorCode;
  switch (code) {
    case ErrorCode::AssertionFailure:
      return false;
    default:
      return true;
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  INFSUP_THROW_IF(!out, infsup::ErrorCode::IoError, "cannot write " + path);
  out << text;
  INFSUP_THROW_IF(!out, infsup::ErrorCode::IoError, "write failed for " + path);
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (!args.empty() && args.front() == "run") {
    args.erase(args.begin());
  }

  CLI::App app{"Discrete inf-sup, coercivity and convergence experiments"};
  app.require_subcommand(1);
  std::string config_path;
  std::vector<Flag> flags{
      {"--levels,--n", "levels", "comma-separated, strictly increasing levels", {}},
      {"--s", "s", "comma-separated regularity indices in [-1, 1]", {}},
      {"--out", "out", "CSV output path (default: stdout)", {}},
      {"--json", "json", "JSON report path", {}},
      {"--seed", "seed", "64-bit seed (decimal or 0x hex)", {}},
      {"--data,--f", "data", "JSON file of [index, coefficient] pairs", {}},
      {"--problem", "problem", "default-noncoercive | laplacian", {}},
      {"--exact", "exact", "manufactured exact solution u(x, y)", {}},
      {"--family", "family", "stable | unstable | fourier-stokes", {}},
      {"--A", "A", "form matrix (Matrix Market)", {}},
      {"--gram-u", "gram_u", "trial Gram matrix (Matrix Market)", {}},
      {"--gram-v", "gram_v", "test Gram matrix (Matrix Market)", {}},
      {"--max-rank", "max_rank", "largest certificate rank to try", {}},
      {"--rate", "rate", "regularization rate of the counterexample", {}},
  };
  const std::vector<std::string> kinds{"spectral", "fourier", "fem",
                                       "saddle",   "diagnose", "counterexample"};
  for (const auto& kind : kinds) {
    CLI::App* sub = app.add_subcommand(kind, "run the " + kind + " experiment");
    sub->add_option("--config", config_path, "key = value config file");
    for (auto& f : flags) {
      sub->add_option(f.name, f.value, f.help);
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInputError;
  }

  try {
    const std::string kind = app.get_subcommands().front()->get_name();
    std::vector<std::string> errors;
    std::vector<infsup::config::Entry> entries;
    if (!config_path.empty()) {
      entries = infsup::config::read_entries(config_path, errors);
    }
    entries.push_back({"kind", kind, "subcommand"});
    for (const auto& f : flags) {
      if (!f.value.empty()) {
        entries.push_back({f.key, f.value, "--" + f.key});
      }
    }
    const auto cfg = infsup::config::build(entries, std::move(errors));
    const auto result = infsup::experiments::run(cfg);

    if (cfg.out) {
      write_text(cfg.out->string(), result.table.str());
    } else {
      std::cout << result.table.str();
    }
    if (cfg.json) {
      INFSUP_THROW_IF(!result.json, infsup::ErrorCode::ConfigError,
                      "experiment " + kind + " has no JSON report");
      write_text(cfg.json->string(), *result.json + "\n");
    }
    for (const auto& check : result.table.checks()) {
      if (!check.passed) {
        std::cerr << "assertion failed: " << check.name << "\n";
      }
    }
    return result.table.all_passed() ? kExitPass : kExitAssertion;
  } catch (const infsup::Error& e) {
    std::cerr << e.what() << "\n";
    return is_input_error(e.code()) ? kExitInputError : kExitAssertion;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}
