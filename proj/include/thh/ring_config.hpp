#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "thh/cdvr.hpp"
#include "thh/error.hpp"
#include "thh/integer.hpp"

namespace thh {

/// A ring specification: the CDVR A and the exponent k of A' = A/pi^k.
struct RingConfig {
  CdvrSpec cdvr;
  int k = 1;
};

namespace detail {

struct ConfigValue {
  std::string text;
  int line = 0;
  int column = 0;
};

[[noreturn]] inline void config_error(int line, int column, const std::string& what) {
  throw Error(ErrorCode::ConfigParse, std::to_string(line) + ":" + std::to_string(column) + ": " + what);
}

inline std::int64_t config_int(const ConfigValue& v) {
  std::size_t used = 0;
  std::int64_t out = 0;
  try {
    out = std::stoll(v.text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.text.size()) config_error(v.line, v.column, "expected an integer, got '" + v.text + "'");
  return out;
}

inline nlohmann::json config_list(const ConfigValue& v) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(v.text);
  } catch (const nlohmann::json::parse_error& e) {
    config_error(v.line, v.column + static_cast<int>(e.byte) - 1, "malformed list '" + v.text + "'");
  }
  if (!j.is_array()) config_error(v.line, v.column, "expected a list, got '" + v.text + "'");
  return j;
}

inline Int json_int(const nlohmann::json& j, const ConfigValue& v) {
  if (!j.is_number_integer()) config_error(v.line, v.column, "list entries must be integers in '" + v.text + "'");
  return Int(j.get<std::int64_t>());
}

}  // namespace detail

/// Parses "key = value" lines; '#' starts a comment.  Keys: p, f, u,
/// characteristic (mixed|equal), phi, k.  Lists are little-endian in
/// bracket syntax, e.g. "phi = [-3, 0, 1]" or "phi = [[-2, 0], [1, 0]]".
/// The resulting CDVR is validated, so invariant violations surface with
/// their own error codes.
inline RingConfig parse_ring_config(const std::string& text) {
  std::map<std::string, detail::ConfigValue> values;
  static const std::vector<std::string> known{"p", "f", "u", "characteristic", "phi", "k"};
  std::istringstream in(text);
  std::string line;
  int end_line = 1;
  for (int lineno = 1; std::getline(in, line); end_line = ++lineno) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto eq = line.find('=');
    const int first = static_cast<int>(line.find_first_not_of(" \t")) + 1;
    if (eq == std::string::npos) detail::config_error(lineno, first, "expected 'key = value'");
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t\r"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
      return s;
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string rest = line.substr(eq + 1);
    const auto vstart = rest.find_first_not_of(" \t");
    const int column = static_cast<int>(eq + 1 + (vstart == std::string::npos ? 0 : vstart)) + 1;
    if (std::find(known.begin(), known.end(), key) == known.end())
      detail::config_error(lineno, first, "unknown key '" + key + "'");
    if (values.count(key)) detail::config_error(lineno, first, "duplicate key '" + key + "'");
    const std::string value = trim(rest);
    if (value.empty()) detail::config_error(lineno, column, "missing value for '" + key + "'");
    values[key] = {value, lineno, column};
  }

  auto require = [&](const std::string& key) -> const detail::ConfigValue& {
    auto it = values.find(key);
    if (it == values.end()) detail::config_error(end_line, 1, "missing required key '" + key + "'");
    return it->second;
  };

  RingConfig cfg;
  CdvrSpec& s = cfg.cdvr;
  s.phi.clear();
  if (values.count("characteristic")) {
    const auto& v = values["characteristic"];
    if (v.text == "equal") {
      s.characteristic = Characteristic::Equal;
    } else if (v.text != "mixed") {
      detail::config_error(v.line, v.column, "characteristic must be 'mixed' or 'equal'");
    }
  }
  s.p = detail::config_int(require("p"));
  if (values.count("f")) {
    const auto f = detail::config_int(values["f"]);
    if (f < 1 || f > 64) detail::config_error(values["f"].line, values["f"].column, "f must be in 1..64");
    s.f = static_cast<int>(f);
  }
  if (values.count("u")) {
    const auto& v = values["u"];
    s.u.clear();
    for (const auto& c : detail::config_list(v)) s.u.push_back(detail::json_int(c, v));
  } else if (s.f != 1) {
    detail::config_error(end_line, 1, "u is required when f > 1");
  }
  const auto& kv = require("k");
  const auto k = detail::config_int(kv);
  if (k < 1 || k > 4096) detail::config_error(kv.line, kv.column, "k must be in 1..4096");
  cfg.k = static_cast<int>(k);

  if (s.mixed()) {
    const auto& v = require("phi");
    for (const auto& c : detail::config_list(v)) {
      std::vector<Int> entry;
      if (c.is_array()) {
        for (const auto& t : c) entry.push_back(detail::json_int(t, v));
      } else {
        entry.assign(s.f, Int(0));
        entry[0] = detail::json_int(c, v);
      }
      s.phi.push_back(std::move(entry));
    }
  } else if (values.count("phi")) {
    detail::config_error(values["phi"].line, values["phi"].column, "phi is only meaningful in mixed characteristic");
  }
  validate(s);
  return cfg;
}

inline RingConfig load_ring_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_ring_config(buf.str());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ConfigParse) throw;
    throw Error(ErrorCode::ConfigParse, path + ":" + std::string(e.what()).substr(std::string("ConfigParse: ").size()));
  }
}

/// Inverse of parse_ring_config up to comments and whitespace.
inline std::string to_config_text(const RingConfig& cfg) {
  const CdvrSpec& s = cfg.cdvr;
  auto list = [](const std::vector<Int>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].str();
    return out + "]";
  };
  std::string out = "characteristic = " + std::string(s.mixed() ? "mixed" : "equal") + "\n";
  out += "p = " + std::to_string(s.p) + "\n";
  out += "f = " + std::to_string(s.f) + "\n";
  out += "u = " + list(s.u) + "\n";
  if (s.mixed()) {
    out += "phi = [";
    for (std::size_t i = 0; i < s.phi.size(); ++i) out += (i ? ", " : "") + list(s.phi[i]);
    out += "]\n";
  }
  out += "k = " + std::to_string(cfg.k) + "\n";
  return out;
}

}  // namespace thh
