#pragma once

// Experiment configuration: a key = value text format ('#' starts a comment)
// merged with command-line overrides, validated in one pass so that every
// problem is reported together.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace infsup::config {

enum class Kind { Spectral, Fourier, Fem, Saddle, Diagnose, Counterexample };

std::string to_string(Kind kind);

inline constexpr std::uint64_t kDefaultSeed = 0xA11CE;

struct ExperimentConfig {
  Kind kind = Kind::Spectral;
  std::vector<int> levels;
  std::vector<double> s_values{0.0};
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> json;
  std::uint64_t seed = kDefaultSeed;

  // spectral / fourier: JSON list of [index, coefficient] pairs
  std::optional<std::filesystem::path> data;

  // fem
  std::string problem = "default-noncoercive";
  std::string exact = "sin(pi*x)*sin(pi*y)";
  std::map<std::string, std::string> coefficients;  ///< a11, a12, a22, bx, by, cx, cy, b0

  // saddle
  std::string family = "stable";

  // diagnose
  std::optional<std::filesystem::path> matrix;
  std::optional<std::filesystem::path> gram_trial;
  std::optional<std::filesystem::path> gram_test;
  int max_rank = -1;  ///< -1: half the dimension

  // counterexample
  double rate = 4.0;
};

/// One key = value assignment and where it came from ("file:line" or "--flag").
struct Entry {
  std::string key;
  std::string value;
  std::string origin;
};

/// Splits config text into entries. Malformed lines are reported through `errors`.
std::vector<Entry> parse_entries(const std::string& text, const std::string& source,
                                 std::vector<std::string>& errors);

/// Builds a config from entries; later entries override earlier ones with the same key.
/// Throws ConfigError listing every problem found.
ExperimentConfig build(const std::vector<Entry>& entries, std::vector<std::string> errors = {});

/// Reads and validates a config file. Throws IoError if it cannot be read.
ExperimentConfig validate_config(const std::filesystem::path& path);

/// Entries of a config file, for merging with command-line overrides.
std::vector<Entry> read_entries(const std::filesystem::path& path, std::vector<std::string>& errors);

}  // namespace infsup::config
