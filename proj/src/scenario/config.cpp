// Copyright 2026 The lsechain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "lse/scenario/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "lse/sector_basis.hpp"

namespace lse::scenario {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string_view unquote(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  s = unquote(s);
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ArgumentError("'" + std::string(s) + "' is not a finite number");
  }
  return v;
}

long long parse_integer(std::string_view s) {
  s = trim(s);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ArgumentError("'" + std::string(s) + "' is not an integer");
  }
  return v;
}

bool parse_bool(std::string_view s) {
  s = unquote(s);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ArgumentError("'" + std::string(s) + "' is not a boolean");
}

// Items are literals or inclusive ranges start:step:stop.
std::vector<double> parse_double_list(std::string_view s) {
  std::vector<double> out;
  for (std::string_view item : split_list(s)) {
    const auto c1 = item.find(':');
    if (c1 == std::string_view::npos) {
      out.push_back(parse_double(item));
      continue;
    }
    const auto c2 = item.find(':', c1 + 1);
    if (c2 == std::string_view::npos) throw ArgumentError("range '" + std::string(item) + "' needs start:step:stop");
    const double start = parse_double(item.substr(0, c1));
    const double step = parse_double(item.substr(c1 + 1, c2 - c1 - 1));
    const double stop = parse_double(item.substr(c2 + 1));
    if (!(step > 0.0) || stop < start) throw ArgumentError("range '" + std::string(item) + "' is empty or has step <= 0");
    const auto n = static_cast<long long>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (n > 100000) throw ArgumentError("range '" + std::string(item) + "' has more than 100000 points");
    for (long long i = 0; i < n; ++i) out.push_back(start + static_cast<double>(i) * step);
  }
  return out;
}

std::vector<int> parse_int_list(std::string_view s) {
  std::vector<int> out;
  for (double v : parse_double_list(s)) {
    if (v != std::round(v) || std::abs(v) > 1e9) throw ArgumentError("'" + format_g17(v) + "' is not an integer");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

template <typename T>
std::string join(const std::vector<T>& items, auto&& fmt) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += fmt(items[i]);
  }
  return out;
}

const std::vector<std::string_view>& known_keys() {
  static const std::vector<std::string_view> keys = {
      "scenario",          "L",                     "M_rule",          "phi",       "deltaL_rule",
      "deltaR_rule",       "bc",                    "J",               "steady_tolerance",
      "steady_max_iterations", "steady_dense_limit", "dense_cap",      "root_tolerance",
      "match_tolerance",   "spectrum",              "output_dir"};
  return keys;
}

void apply_key(ScenarioConfig& c, std::string_view key, std::string_view value) {
  if (key == "L") {
    c.L = parse_int_list(value);
  } else if (key == "M_rule") {
    c.M_rule = parse_m_rule(unquote(value));
  } else if (key == "phi") {
    c.phi = parse_double_list(value);
  } else if (key == "deltaL_rule" || key == "deltaR_rule") {
    std::vector<DeltaRule> rules;
    for (std::string_view item : split_list(value)) rules.push_back(parse_delta_rule(item));
    (key == "deltaL_rule" ? c.deltaL : c.deltaR) = std::move(rules);
  } else if (key == "bc") {
    c.bc = parse_boundary(unquote(value));
  } else if (key == "J") {
    c.J = parse_double(unquote(value));
  } else if (key == "steady_tolerance") {
    c.steady_tolerance = parse_double(unquote(value));
  } else if (key == "steady_max_iterations") {
    c.steady_max_iterations = static_cast<int>(parse_integer(unquote(value)));
  } else if (key == "steady_dense_limit") {
    c.steady_dense_limit = static_cast<std::size_t>(std::max(0LL, parse_integer(unquote(value))));
  } else if (key == "dense_cap") {
    c.dense_cap = static_cast<std::size_t>(std::max(0LL, parse_integer(unquote(value))));
  } else if (key == "root_tolerance") {
    c.root_tolerance = parse_double(unquote(value));
  } else if (key == "match_tolerance") {
    c.match_tolerance = parse_double(unquote(value));
  } else if (key == "spectrum") {
    c.spectrum = parse_bool(value);
  } else if (key == "output_dir") {
    c.output_dir = std::string(unquote(value));
  }
}

std::string join_errors(const std::vector<std::string>& errors) {
  std::string out = "invalid scenario config:";
  for (const auto& e : errors) out += "\n  " + e;
  return out;
}

}  // namespace

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Fig2:
      return "fig2";
    case ScenarioKind::Fig3a:
      return "fig3a";
    case ScenarioKind::Fig3b:
      return "fig3b";
    case ScenarioKind::Fig4:
      return "fig4";
    case ScenarioKind::Verify:
      return "verify";
    case ScenarioKind::BaeScan:
      return "bae-scan";
    case ScenarioKind::Custom:
      return "custom";
  }
  return "?";
}

ScenarioKind parse_scenario_kind(std::string_view text) {
  for (auto k : {ScenarioKind::Fig2, ScenarioKind::Fig3a, ScenarioKind::Fig3b, ScenarioKind::Fig4,
                 ScenarioKind::Verify, ScenarioKind::BaeScan, ScenarioKind::Custom}) {
    if (to_string(k) == text) return k;
  }
  throw ArgumentError("unknown scenario '" + std::string(text) +
                      "' (expected fig2, fig3a, fig3b, fig4, verify, bae-scan or custom)");
}

int MRule::evaluate(int L) const {
  if (divisor > 0) return L % divisor == 0 ? L / divisor : -1;
  return fixed;
}

std::string MRule::text() const { return divisor > 0 ? "L/" + std::to_string(divisor) : std::to_string(fixed); }

MRule parse_m_rule(std::string_view text) {
  text = trim(text);
  MRule r;
  if (text.starts_with("L/")) {
    const long long d = parse_integer(text.substr(2));
    if (d < 1) throw ArgumentError("M_rule divisor must be >= 1");
    r.divisor = static_cast<int>(d);
  } else if (text == "L") {
    r.divisor = 1;
  } else {
    const long long m = parse_integer(text);
    if (m < 0) throw ArgumentError("M_rule must be >= 0");
    r.fixed = static_cast<int>(m);
  }
  return r;
}

double DeltaRule::evaluate(double J, double phi) const {
  switch (scale) {
    case Scale::Absolute:
      return coefficient;
    case Scale::JLeft:
      return coefficient * J * std::exp(-phi);
    case Scale::JRight:
      return coefficient * J * std::exp(phi);
  }
  return coefficient;
}

std::string DeltaRule::text() const {
  switch (scale) {
    case Scale::Absolute:
      return format_g17(coefficient);
    case Scale::JLeft:
      return format_g17(coefficient) + "*J_L";
    case Scale::JRight:
      return format_g17(coefficient) + "*J_R";
  }
  return format_g17(coefficient);
}

DeltaRule parse_delta_rule(std::string_view text) {
  text = trim(text);
  DeltaRule r;
  auto scale_of = [](std::string_view s) {
    if (s == "J_L") return DeltaRule::Scale::JLeft;
    if (s == "J_R") return DeltaRule::Scale::JRight;
    throw ArgumentError("delta rule scale must be J_L or J_R, got '" + std::string(s) + "'");
  };
  const auto star = text.find('*');
  if (star != std::string_view::npos) {
    r.coefficient = parse_double(text.substr(0, star));
    r.scale = scale_of(trim(text.substr(star + 1)));
  } else if (text == "J_L" || text == "J_R") {
    r.coefficient = 1.0;
    r.scale = scale_of(text);
  } else {
    r.coefficient = parse_double(text);
  }
  if (r.coefficient < 0.0) throw ArgumentError("delta rule coefficient must be >= 0");
  return r;
}

ScenarioConfig default_config(ScenarioKind kind) {
  using S = DeltaRule::Scale;
  ScenarioConfig c;
  c.scenario = kind;
  c.M_rule = MRule{2, 0};
  c.phi = {0.5};
  c.deltaL = {DeltaRule{}};
  c.deltaR = {DeltaRule{}};
  switch (kind) {
    case ScenarioKind::Fig2:
      c.L = {12};
      c.phi.clear();
      for (int i = 1; i <= 40; ++i) c.phi.push_back(0.05 * i);
      break;
    case ScenarioKind::Fig3a:
      c.L = {8, 10, 12, 14, 16};
      c.bc = Boundary::Generalized;
      c.deltaL = {DeltaRule{0.5, S::JLeft}};
      break;
    case ScenarioKind::Fig3b:
      c.L = {8, 12, 16};
      c.M_rule = MRule{4, 0};
      c.bc = Boundary::Generalized;
      c.deltaL = {DeltaRule{0.5, S::JLeft}};
      break;
    case ScenarioKind::Fig4:
      c.L = {6, 8, 10, 12};
      c.bc = Boundary::Generalized;
      c.deltaL = {DeltaRule{0.5, S::JLeft}};
      c.deltaR = {DeltaRule{0.0, S::Absolute}, DeltaRule{0.5, S::JRight}};
      break;
    case ScenarioKind::Verify:
      c.L = {2, 3, 4};
      c.phi = {0.0, 0.5, 1.3};
      c.deltaL = {DeltaRule{0.5, S::JLeft}};
      c.deltaR = {DeltaRule{0.5, S::JRight}};
      break;
    case ScenarioKind::BaeScan:
      c.L = {4, 5, 6, 7, 8};
      c.M_rule = MRule{0, 1};
      break;
    case ScenarioKind::Custom:
      c.L = {8};
      break;
  }
  return c;
}

ConfigError::ConfigError(std::vector<std::string> errors)
    : ValidationError(join_errors(errors)), errors_(std::move(errors)) {}

std::vector<std::string> validate(const ScenarioConfig& c) {
  std::vector<std::string> errors;
  if (c.L.empty()) errors.push_back("L: grid is empty");
  if (c.phi.empty()) errors.push_back("phi: grid is empty");
  if (c.deltaL.empty()) errors.push_back("deltaL_rule: list is empty");
  if (c.deltaR.empty()) errors.push_back("deltaR_rule: list is empty");
  for (int L : c.L) {
    if (L < 2 || L > kMaxSites) {
      errors.push_back("L: " + std::to_string(L) + " outside [2, " + std::to_string(kMaxSites) + "]");
      continue;
    }
    if (c.scenario == ScenarioKind::Verify) continue;
    const int M = c.M_rule.evaluate(L);
    if (M < 0) {
      errors.push_back("M_rule: \"" + c.M_rule.text() + "\" is not an integer at L=" + std::to_string(L));
    } else if (M > L) {
      errors.push_back("M_rule: M=" + std::to_string(M) + " exceeds L=" + std::to_string(L));
    }
  }
  if (c.scenario == ScenarioKind::Verify) {
    for (int L : c.L) {
      if (L > 4) errors.push_back("L: verify runs the full superoperator and supports L <= 4, got " + std::to_string(L));
    }
  }
  if (!(c.J > 0.0)) errors.push_back("J: must be positive");
  if (!(c.steady_tolerance > 0.0)) errors.push_back("steady_tolerance: must be positive");
  if (c.steady_max_iterations < 1) errors.push_back("steady_max_iterations: must be >= 1");
  if (c.dense_cap < 1) errors.push_back("dense_cap: must be >= 1");
  if (!(c.root_tolerance > 0.0)) errors.push_back("root_tolerance: must be positive");
  if (!(c.match_tolerance > 0.0)) errors.push_back("match_tolerance: must be positive");
  if (c.output_dir.empty()) errors.push_back("output_dir: must not be empty");
  const bool uses_bc = c.scenario == ScenarioKind::Custom || c.scenario == ScenarioKind::BaeScan;
  if (uses_bc && c.bc == Boundary::Open) {
    const auto nonzero = [](const DeltaRule& r) { return r.coefficient != 0.0; };
    if (std::any_of(c.deltaL.begin(), c.deltaL.end(), nonzero) ||
        std::any_of(c.deltaR.begin(), c.deltaR.end(), nonzero)) {
      errors.push_back("deltaL_rule/deltaR_rule: open boundary requires zero boundary couplings");
    }
  }
  return errors;
}

ScenarioConfig parse_config_text(std::string_view text) {
  std::vector<std::string> errors;
  std::map<std::string, std::pair<std::string, int>, std::less<>> entries;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (eq == std::string_view::npos) {
      errors.push_back(where + "expected key = value");
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    const auto& keys = known_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      errors.push_back(where + "unknown key '" + key + "'");
      continue;
    }
    if (entries.contains(key)) {
      errors.push_back(where + "duplicate key '" + key + "'");
      continue;
    }
    entries.emplace(key, std::make_pair(value, line_no));
  }

  ScenarioConfig config;
  const auto scen = entries.find("scenario");
  if (scen == entries.end()) {
    errors.push_back("scenario: missing (expected fig2, fig3a, fig3b, fig4, verify, bae-scan or custom)");
    throw ConfigError(std::move(errors));
  }
  try {
    config = default_config(parse_scenario_kind(unquote(scen->second.first)));
  } catch (const ValidationError& e) {
    errors.push_back("line " + std::to_string(scen->second.second) + ": " + e.what());
    throw ConfigError(std::move(errors));
  }
  for (const auto& [key, entry] : entries) {
    if (key == "scenario") continue;
    try {
      apply_key(config, key, entry.first);
    } catch (const ValidationError& e) {
      errors.push_back("line " + std::to_string(entry.second) + ": " + key + ": " + e.what());
    }
  }
  for (auto& e : validate(config)) errors.push_back(std::move(e));
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return config;
}

ScenarioConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError({"cannot open config file " + path.string()});
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string serialize(const ScenarioConfig& c) {
  std::ostringstream out;
  out << "scenario = " << to_string(c.scenario) << '\n';
  out << "L = " << join(c.L, [](int v) { return std::to_string(v); }) << '\n';
  out << "M_rule = \"" << c.M_rule.text() << "\"\n";
  out << "phi = " << join(c.phi, format_g17) << '\n';
  out << "deltaL_rule = " << join(c.deltaL, [](const DeltaRule& r) { return r.text(); }) << '\n';
  out << "deltaR_rule = " << join(c.deltaR, [](const DeltaRule& r) { return r.text(); }) << '\n';
  out << "bc = " << to_string(c.bc) << '\n';
  out << "J = " << format_g17(c.J) << '\n';
  out << "steady_tolerance = " << format_g17(c.steady_tolerance) << '\n';
  out << "steady_max_iterations = " << c.steady_max_iterations << '\n';
  out << "steady_dense_limit = " << c.steady_dense_limit << '\n';
  out << "dense_cap = " << c.dense_cap << '\n';
  out << "root_tolerance = " << format_g17(c.root_tolerance) << '\n';
  out << "match_tolerance = " << format_g17(c.match_tolerance) << '\n';
  out << "spectrum = " << (c.spectrum ? "true" : "false") << '\n';
  out << "output_dir = \"" << c.output_dir << "\"\n";
  return out.str();
}

}  // namespace lse::scenario
