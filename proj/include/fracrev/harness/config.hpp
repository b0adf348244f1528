// Flat key/value configuration with [section] headers.
//
//   # comment            (also after a value)
//   [chain]
//   sites = 500
//
// Keys are unique within a section; sections and keys outside the schema are
// rejected with the offending line number.
#pragma once

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracrev::harness {

class config_error : public std::runtime_error {
 public:
  config_error(const std::string& source, int line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

inline std::string trim(std::string s) {
  auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
  return s;
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct ConfigEntry {
  std::string value;
  int line;
};

class ConfigFile {
 public:
  using Schema = std::map<std::string, std::set<std::string>>;

  static ConfigFile parse(std::istream& in, const Schema& schema, const std::string& source = "config") {
    ConfigFile cfg;
    cfg.source_ = source;
    std::string raw, section;
    int line = 0;
    while (std::getline(in, raw)) {
      ++line;
      if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      const std::string text = trim(raw);
      if (text.empty()) continue;
      if (text.front() == '[') {
        if (text.back() != ']') throw config_error(source, line, "malformed section header");
        section = trim(text.substr(1, text.size() - 2));
        if (!schema.contains(section)) throw config_error(source, line, "unknown section [" + section + "]");
        cfg.section_lines_.try_emplace(section, line);
        continue;
      }
      const auto eq = text.find('=');
      if (eq == std::string::npos) throw config_error(source, line, "expected key = value");
      if (section.empty()) throw config_error(source, line, "key outside of any section");
      const std::string key = trim(text.substr(0, eq));
      const std::string value = trim(text.substr(eq + 1));
      if (key.empty()) throw config_error(source, line, "empty key");
      if (!schema.at(section).contains(key))
        throw config_error(source, line, "unknown key '" + key + "' in section [" + section + "]");
      auto& sec = cfg.values_[section];
      if (sec.contains(key)) throw config_error(source, line, "duplicate key '" + key + "'");
      sec.emplace(key, ConfigEntry{value, line});
    }
    return cfg;
  }

  static ConfigFile parse_string(const std::string& text, const Schema& schema, const std::string& source = "config") {
    std::istringstream in(text);
    return parse(in, schema, source);
  }

  const std::string& source() const noexcept { return source_; }
  bool has_section(const std::string& s) const { return section_lines_.contains(s); }

  std::optional<ConfigEntry> get(const std::string& section, const std::string& key) const {
    auto s = values_.find(section);
    if (s == values_.end()) return std::nullopt;
    auto k = s->second.find(key);
    if (k == s->second.end()) return std::nullopt;
    return k->second;
  }

  /// Line of the key if present, else of its section header, else 0.
  int line_of(const std::string& section, const std::string& key = {}) const {
    if (auto e = get(section, key)) return e->line;
    auto s = section_lines_.find(section);
    return s == section_lines_.end() ? 0 : s->second;
  }

  [[noreturn]] void fail(const std::string& section, const std::string& key, const std::string& what) const {
    throw config_error(source_, line_of(section, key), what);
  }

 private:
  std::string source_;
  std::map<std::string, std::map<std::string, ConfigEntry>> values_;
  std::map<std::string, int> section_lines_;
};

}  // namespace fracrev::harness
