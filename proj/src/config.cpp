#include "infsup/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "infsup/errors.hpp"

namespace infsup::config {

namespace {

const std::map<std::string, std::string>& aliases() {
  static const std::map<std::string, std::string> table{
      {"n", "levels"},         {"f", "data"},           {"matrix", "A"},
      {"gram-u", "gram_u"},    {"gram-v", "gram_v"},    {"max-rank", "max_rank"},
      {"experiment", "kind"},
  };
  return table;
}

const std::set<std::string>& coefficient_keys() {
  static const std::set<std::string> keys{"a11", "a12", "a22", "bx", "by", "cx", "cy", "b0"};
  return keys;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = [] {
    std::set<std::string> k{"kind",  "levels", "s",      "out",    "json",   "seed",
                            "data",  "problem", "exact", "family", "A",      "gram_u",
                            "gram_v", "max_rank", "rate"};
    k.insert(coefficient_keys().begin(), coefficient_keys().end());
    return k;
  }();
  return keys;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) {
    out.push_back(trim(item));
  }
  return out;
}

std::optional<long long> parse_int(const std::string& text) {
  long long v = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) {
    return std::nullopt;
  }
  return v;
}

std::optional<double> parse_double(const std::string& text) {
  if (text.empty()) {
    return std::nullopt;
  }
  std::istringstream in(text);
  in.imbue(std::locale::classic());
  double v = 0.0;
  in >> v;
  if (!in || in.peek() != std::char_traits<char>::eof()) {
    return std::nullopt;
  }
  return v;
}

std::optional<std::uint64_t> parse_seed(const std::string& text) {
  int base = 10;
  std::string digits = text;
  if (digits.size() > 2 && digits[0] == '0' && (digits[1] == 'x' || digits[1] == 'X')) {
    base = 16;
    digits = digits.substr(2);
  }
  std::uint64_t v = 0;
  const char* end = digits.data() + digits.size();
  const auto [ptr, ec] = std::from_chars(digits.data(), end, v, base);
  if (ec != std::errc() || ptr != end || digits.empty()) {
    return std::nullopt;
  }
  return v;
}

std::optional<Kind> parse_kind(const std::string& text) {
  static const std::map<std::string, Kind> kinds{
      {"spectral", Kind::Spectral}, {"fourier", Kind::Fourier},
      {"fem", Kind::Fem},           {"saddle", Kind::Saddle},
      {"diagnose", Kind::Diagnose}, {"counterexample", Kind::Counterexample},
  };
  const auto it = kinds.find(text);
  if (it == kinds.end()) {
    return std::nullopt;
  }
  return it->second;
}

}  // namespace

std::string to_string(Kind kind) {
  switch (kind) {
    case Kind::Spectral:
      return "spectral";
    case Kind::Fourier:
      return "fourier";
    case Kind::Fem:
      return "fem";
    case Kind::Saddle:
      return "saddle";
    case Kind::Diagnose:
      return "diagnose";
    case Kind::Counterexample:
      return "counterexample";
  }
  return "unknown";
}

std::vector<Entry> parse_entries(const std::string& text, const std::string& source,
                                 std::vector<std::string>& errors) {
  std::vector<Entry> entries;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string origin = source + ":" + std::to_string(number);
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back(origin + ": expected 'key = value', got '" + line + "'");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) {
      errors.push_back(origin + ": missing key before '='");
      continue;
    }
    entries.push_back({key, trim(line.substr(eq + 1)), origin});
  }
  return entries;
}

ExperimentConfig build(const std::vector<Entry>& entries, std::vector<std::string> errors) {
  std::map<std::string, Entry> merged;
  for (const Entry& raw : entries) {
    Entry e = raw;
    if (const auto it = aliases().find(e.key); it != aliases().end()) {
      e.key = it->second;
    }
    if (known_keys().count(e.key) == 0) {
      errors.push_back(e.origin + ": unknown field '" + raw.key + "'");
      continue;
    }
    merged[e.key] = e;
  }
  const auto fail = [&](const std::string& key, const std::string& message) {
    const auto it = merged.find(key);
    const std::string where = it == merged.end() ? std::string("config") : it->second.origin;
    errors.push_back(where + ": field '" + key + "' " + message);
  };
  const auto value = [&](const std::string& key) -> const std::string* {
    const auto it = merged.find(key);
    return it == merged.end() ? nullptr : &it->second.value;
  };

  ExperimentConfig cfg;
  bool have_kind = false;
  if (const auto* v = value("kind")) {
    if (const auto k = parse_kind(*v)) {
      cfg.kind = *k;
      have_kind = true;
    } else {
      fail("kind", "has unknown experiment '" + *v + "'");
    }
  } else {
    fail("kind", "is required");
  }

  if (const auto* v = value("levels")) {
    bool ok = true;
    for (const std::string& item : split_list(*v)) {
      const auto n = parse_int(item);
      if (!n || *n < 1 || *n > 1'000'000) {
        fail("levels", "has invalid entry '" + item + "' (positive integers expected)");
        ok = false;
        break;
      }
      cfg.levels.push_back(static_cast<int>(*n));
    }
    if (ok && cfg.levels.empty()) {
      fail("levels", "is empty");
    }
    if (ok && !std::is_sorted(cfg.levels.begin(), cfg.levels.end(), std::less_equal<>())) {
      fail("levels", "must be strictly increasing");
    }
  } else if (!have_kind || cfg.kind != Kind::Diagnose) {
    fail("levels", "is required");
  }

  if (const auto* v = value("s")) {
    cfg.s_values.clear();
    for (const std::string& item : split_list(*v)) {
      const auto s = parse_double(item);
      if (!s || *s < -1.0 || *s > 1.0) {
        fail("s", "has invalid entry '" + item + "' (values in [-1, 1] expected)");
        break;
      }
      cfg.s_values.push_back(*s);
    }
  }

  if (const auto* v = value("seed")) {
    if (const auto seed = parse_seed(*v)) {
      cfg.seed = *seed;
    } else {
      fail("seed", "is not an unsigned 64-bit integer: '" + *v + "'");
    }
  }
  if (const auto* v = value("rate")) {
    const auto r = parse_double(*v);
    if (!r || !(*r >= 1.0)) {
      fail("rate", "must be a number >= 1");
    } else {
      cfg.rate = *r;
    }
  }
  if (const auto* v = value("max_rank")) {
    const auto r = parse_int(*v);
    if (!r || *r < 0) {
      fail("max_rank", "must be a non-negative integer");
    } else {
      cfg.max_rank = static_cast<int>(*r);
    }
  }

  if (const auto* v = value("out")) cfg.out = *v;
  if (const auto* v = value("json")) cfg.json = *v;
  if (const auto* v = value("data")) cfg.data = *v;
  if (const auto* v = value("A")) cfg.matrix = *v;
  if (const auto* v = value("gram_u")) cfg.gram_trial = *v;
  if (const auto* v = value("gram_v")) cfg.gram_test = *v;
  if (const auto* v = value("exact")) cfg.exact = *v;
  for (const std::string& key : coefficient_keys()) {
    if (const auto* v = value(key)) cfg.coefficients[key] = *v;
  }

  if (const auto* v = value("problem")) {
    if (*v != "default-noncoercive" && *v != "laplacian") {
      fail("problem", "must be 'default-noncoercive' or 'laplacian'");
    } else {
      cfg.problem = *v;
    }
  }
  if (const auto* v = value("family")) {
    if (*v != "stable" && *v != "unstable" && *v != "fourier-stokes") {
      fail("family", "must be 'stable', 'unstable' or 'fourier-stokes'");
    } else {
      cfg.family = *v;
    }
  }

  if (have_kind && cfg.kind == Kind::Diagnose && !cfg.matrix) {
    fail("A", "is required for diagnose");
  }
  if (have_kind && cfg.kind == Kind::Fem && value("levels") && cfg.levels.size() < 3) {
    fail("levels", "needs at least 3 entries for a slope fit");
  }

  if (!errors.empty()) {
    std::string message = std::to_string(errors.size()) + " configuration error(s)";
    for (const auto& e : errors) {
      message += "\n  " + e;
    }
    throw Error(ErrorCode::ConfigError, message);
  }
  return cfg;
}

std::vector<Entry> read_entries(const std::filesystem::path& path, std::vector<std::string>& errors) {
  std::ifstream in(path);
  INFSUP_THROW_IF(!in, ErrorCode::IoError, "cannot read config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_entries(buffer.str(), path.string(), errors);
}

ExperimentConfig validate_config(const std::filesystem::path& path) {
  std::vector<std::string> errors;
  const auto entries = read_entries(path, errors);
  return build(entries, std::move(errors));
}

}  // namespace infsup::config
