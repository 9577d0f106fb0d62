#pragma once

// Configuration, seed resolution, input specs and JSON-lines output for the
// command-line front end.

#include <dunklkit/transform.hpp>
#include <dunklkit/verify.hpp>

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dunklkit::cli {

/// Usage and configuration problems; the front end maps them to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  std::map<std::string, std::string> values;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::optional<bool> timing;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline std::uint64_t parse_seed(const std::string& text, const std::string& where) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw UsageError(where + ": seed must be a non-negative integer, got '" + text + "'");
  try {
    return std::stoull(text);
  } catch (const std::out_of_range&) {
    throw UsageError(where + ": seed " + text + " does not fit in 64 bits");
  }
}

inline bool parse_bool(const std::string& text, const std::string& where) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw UsageError(where + ": expected a boolean, got '" + text + "'");
}

}  // namespace detail

/// Flat `key = value` lines; `#` starts a comment. Keys: seed, workers, timing.
inline Config parse_config(std::istream& in, const std::string& source = "config") {
  static const std::set<std::string> known{"seed", "workers", "timing"};
  Config cfg;
  std::string line;
  for (int n = 1; std::getline(in, line); ++n) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(n);
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(where + ": expected key = value, got '" + line + "'");
    const std::string key = detail::trim(line.substr(0, eq)), value = detail::trim(line.substr(eq + 1));
    if (key.empty()) throw UsageError(where + ": missing key");
    if (!known.count(key)) throw UsageError(where + ": unknown key '" + key + "'");
    if (cfg.values.count(key)) throw UsageError(where + ": duplicate key '" + key + "'");
    cfg.values[key] = value;
    if (key == "seed") cfg.seed = detail::parse_seed(value, where);
    if (key == "workers") {
      const auto w = detail::parse_seed(value, where);
      if (w == 0 || w > 1024) throw UsageError(where + ": workers must lie in 1..1024");
      cfg.workers = static_cast<unsigned>(w);
    }
    if (key == "timing") cfg.timing = detail::parse_bool(value, where);
  }
  return cfg;
}

inline Config parse_config_text(const std::string& text, const std::string& source = "config") {
  std::istringstream in(text);
  return parse_config(in, source);
}

/// Flag, then DUNKLKIT_SEED, then the config file, then 0.
inline std::uint64_t resolve_seed(const std::optional<std::string>& flag, const char* env, const Config& cfg) {
  if (flag) return detail::parse_seed(*flag, "--seed");
  if (env && *env) return detail::parse_seed(env, "DUNKLKIT_SEED");
  return cfg.seed.value_or(0);
}

// ---------------------------------------------------------------------------
// JSON lines.

/// One JSON object with keys in insertion order and numbers printed with %.17g.
class JsonLine {
 public:
  JsonLine& add(const std::string& key, const std::string& v) { return raw(key, nlohmann::json(v).dump()); }
  JsonLine& add(const std::string& key, const char* v) { return add(key, std::string(v)); }
  JsonLine& add(const std::string& key, double v) { return raw(key, number(v)); }
  JsonLine& add(const std::string& key, int v) { return raw(key, std::to_string(v)); }
  JsonLine& add(const std::string& key, std::size_t v) { return raw(key, std::to_string(v)); }
  JsonLine& add(const std::string& key, unsigned long long v) { return raw(key, std::to_string(v)); }
  JsonLine& add(const std::string& key, bool v) { return raw(key, v ? "true" : "false"); }
  JsonLine& add(const std::string& key, const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + number(v[i]);
    return raw(key, s + "]");
  }
  JsonLine& raw(const std::string& key, const std::string& json) {
    body_ += (body_.empty() ? "" : ",") + nlohmann::json(key).dump() + ":" + json;
    return *this;
  }
  std::string str() const { return "{" + body_ + "}"; }

  /// Non-finite values have no JSON literal and become null.
  static std::string number(double v) { return std::isfinite(v) ? format_double(v) : "null"; }

 private:
  std::string body_;
};

inline JsonLine check_json(const CheckResult& c, bool timing) {
  JsonLine j;
  j.add("type", "check").add("id", c.id).add("suite", c.suite).add("criterion", c.criterion);
  j.add("status", to_string(c.status)).add("residual", c.residual).add("tolerance", c.tolerance);
  if (timing) j.add("runtime_ms", c.runtime_ms);
  if (!c.witness.empty()) j.add("witness", c.witness);
  return j;
}

inline JsonLine summary_json(const VerifyReport& r) {
  JsonLine j;
  j.add("type", "summary").add("suite", r.suite).add("seed", static_cast<unsigned long long>(r.seed)).add("checks", r.checks.size());
  j.add("pass", r.count(CheckStatus::pass)).add("fail", r.count(CheckStatus::fail)).add("skip", r.count(CheckStatus::skip));
  j.add("status", r.ok() ? "pass" : "fail");
  return j;
}

/// The whole report as JSON lines: one object per check, then the summary.
inline std::string report_json(const VerifyReport& r, bool timing) {
  std::string out;
  for (const auto& c : r.checks) out += check_json(c, timing).str() + "\n";
  return out + summary_json(r).str() + "\n";
}

// ---------------------------------------------------------------------------
// Inputs.

inline double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError(what + ": '" + text + "' is not a number");
  }
  if (used != text.size()) throw UsageError(what + ": '" + text + "' is not a number");
  return v;
}

inline std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(detail::trim(item), what));
  if (out.empty()) throw UsageError(what + ": empty list");
  return out;
}

/// "bump:R=1", "bump:R=0.5,c=0.3", "gaussian", "poly-gaussian:<polynomial in x0>".
inline SampledFunction parse_input(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon), args = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "gaussian") return poly_gaussian_function(Poly<Rational>::constant(1, Rational(1)));
  if (kind == "poly-gaussian") {
    try {
      return poly_gaussian_function(parse_poly<Rational>(args, 1));
    } catch (const std::exception& e) {
      throw UsageError("--input: " + std::string(e.what()));
    }
  }
  if (kind == "bump") {
    double R = 1, c = 0;
    std::stringstream ss(args);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw UsageError("--input: expected name=value in '" + item + "'");
      const std::string key = detail::trim(item.substr(0, eq));
      const double v = parse_number(detail::trim(item.substr(eq + 1)), "--input " + key);
      if (key == "R") R = v;
      else if (key == "c") c = v;
      else throw UsageError("--input: unknown bump parameter '" + key + "'");
    }
    if (!(R > 0)) throw UsageError("--input: bump radius must be positive");
    return bump_function(R, c);
  }
  throw UsageError("--input: unknown function '" + kind + "' (bump, gaussian, poly-gaussian)");
}

/// "lin:a:b:n" for n equispaced points, or a comma-separated list.
inline std::vector<double> parse_grid(const std::string& spec) {
  if (spec.rfind("lin:", 0) != 0) return parse_list(spec, "--lambda-grid");
  std::vector<std::string> parts;
  std::stringstream ss(spec.substr(4));
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw UsageError("--lambda-grid: expected lin:a:b:n");
  const double a = parse_number(parts[0], "--lambda-grid"), b = parse_number(parts[1], "--lambda-grid");
  const double n = parse_number(parts[2], "--lambda-grid");
  if (!(n >= 1) || n != std::floor(n) || n > 1e6) throw UsageError("--lambda-grid: point count must be a positive integer");
  std::vector<double> out;
  for (int i = 0; i < static_cast<int>(n); ++i) out.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
  return out;
}

}  // namespace dunklkit::cli
