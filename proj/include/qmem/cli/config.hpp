// Copyright 2026 The qmem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QMEM_CLI_CONFIG_HPP
#define QMEM_CLI_CONFIG_HPP

// INI run configuration, e.g.
//
//   [run]
//   scenario = fig2_table
//   grid_points = 2000
//
//   [fig2_table]
//   epsilons = 1, 2, 4, 6
//
// Numeric lists are comma separated; "lo:hi:n" denotes n equally spaced
// values and "lo:hi:n:log" n logarithmically spaced ones.

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qmem/errors.hpp"

namespace qmem::cli {

class UnknownScenarioError : public ConfigError {
 public:
  explicit UnknownScenarioError(const std::string& name) : ConfigError("unknown scenario '" + name + "'") {}
};

class OutputPathError : public ConfigError {
 public:
  explicit OutputPathError(const std::string& path) : ConfigError("cannot write output path '" + path + "'") {}
};

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

inline double parse_double(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  if (t == "inf") return HUGE_VAL;
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || std::isnan(v)) {
    throw ConfigError("malformed config: '" + what + "' is not a number: '" + text + "'");
  }
  return v;
}

inline long long parse_int(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  char* end = nullptr;
  errno = 0;
  const long long v = std::strtoll(t.c_str(), &end, 10);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE) {
    throw ConfigError("malformed config: '" + what + "' is not an integer: '" + text + "'");
  }
  return v;
}

/// Parses "a, b, c", "lo:hi:n" or "lo:hi:n:log"; an empty string is an empty list.
inline std::vector<double> parse_values(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  std::vector<double> out;
  if (t.empty()) return out;
  if (t.find(':') != std::string::npos) {
    const auto parts = split(t, ':');
    if (parts.size() != 3 && !(parts.size() == 4 && parts[3] == "log")) {
      throw ConfigError("malformed config: '" + what + "' range must be lo:hi:n or lo:hi:n:log");
    }
    const double lo = parse_double(parts[0], what);
    const double hi = parse_double(parts[1], what);
    const long long n = parse_int(parts[2], what);
    const bool log = parts.size() == 4;
    if (n < 0 || hi < lo || (log && !(lo > 0.0))) {
      throw ConfigError("malformed config: '" + what + "' has an invalid range");
    }
    for (long long i = 0; i < n; ++i) {
      const double s = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
      out.push_back(log ? lo * std::pow(hi / lo, s) : lo + (hi - lo) * s);
    }
    return out;
  }
  for (const std::string& item : split(t, ',')) out.push_back(parse_double(item, what));
  return out;
}

class Config {
 public:
  static Config from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
      throw ConfigError("malformed config: cannot open '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return from_string(buf.str());
  }

  static Config from_string(const std::string& text) {
    Config c;
    c.text_ = text;
    std::istringstream in(text);
    try {
      boost::property_tree::ini_parser::read_ini(in, c.tree_);
    } catch (const boost::property_tree::ini_parser_error& e) {
      throw ConfigError(std::string("malformed config: ") + e.what());
    }
    return c;
  }

  const std::string& text() const { return text_; }

  bool has_section(const std::string& section) const { return tree_.get_child_optional(section).has_value(); }

  bool has(const std::string& section, const std::string& key) const {
    const auto s = tree_.get_child_optional(section);
    return s && s->get_child_optional(key).has_value();
  }

  std::string get(const std::string& section, const std::string& key, const std::string& fallback) const {
    if (!has(section, key)) return fallback;
    return trim(tree_.get_child(section).get_child(key).data());
  }

  std::string require(const std::string& section, const std::string& key) const {
    if (!has(section, key)) {
      throw ConfigError("malformed config: missing '" + key + "' in [" + section + "]");
    }
    return get(section, key, "");
  }

  double number(const std::string& section, const std::string& key, double fallback) const {
    return has(section, key) ? parse_double(get(section, key, ""), section + "." + key) : fallback;
  }

  long long integer(const std::string& section, const std::string& key, long long fallback) const {
    return has(section, key) ? parse_int(get(section, key, ""), section + "." + key) : fallback;
  }

  std::vector<double> values(const std::string& section, const std::string& key,
                             const std::vector<double>& fallback) const {
    return has(section, key) ? parse_values(get(section, key, ""), section + "." + key) : fallback;
  }

  std::vector<std::string> words(const std::string& section, const std::string& key,
                                 const std::vector<std::string>& fallback) const {
    if (!has(section, key)) return fallback;
    std::vector<std::string> out;
    for (const std::string& w : split(get(section, key, ""), ',')) {
      if (!w.empty()) out.push_back(w);
    }
    return out;
  }

  /// Rejects keys of `section` outside `known` (typos would otherwise be
  /// silently replaced by defaults).
  void check_keys(const std::string& section, std::initializer_list<const char*> known) const {
    check_keys(section, std::set<std::string>(known.begin(), known.end()));
  }

  void check_keys(const std::string& section, const std::set<std::string>& allowed) const {
    const auto s = tree_.get_child_optional(section);
    if (!s) return;
    for (const auto& [key, value] : *s) {
      if (!allowed.count(key)) {
        throw ConfigError("malformed config: unknown key '" + key + "' in [" + section + "]");
      }
    }
  }

 private:
  boost::property_tree::ptree tree_;
  std::string text_;
};

}  // namespace qmem::cli

#endif  // QMEM_CLI_CONFIG_HPP
