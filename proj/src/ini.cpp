#include "poro/ini.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace poro {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string strip_comment(const std::string& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if ((s[i] == '#' || s[i] == ';') && (i == 0 || std::isspace(static_cast<unsigned char>(s[i - 1])))) {
      return s.substr(0, i);
    }
  }
  return s;
}

std::string message(int line, const std::string& what) {
  if (line <= 0) return what;
  return "line " + std::to_string(line) + ": " + what;
}

}  // namespace

ConfigError::ConfigError(const std::string& what, int line)
    : std::runtime_error(message(line, what)), line_(line) {}

const IniEntry* IniSection::find(std::string_view key) const {
  for (const auto& e : entries) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

const IniSection* IniDocument::find(std::string_view name) const {
  for (const auto& s : sections) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

std::vector<const IniSection*> IniDocument::with_prefix(std::string_view prefix) const {
  std::vector<const IniSection*> out;
  for (const auto& s : sections) {
    if (s.name.size() > prefix.size() + 1 && s.name.compare(0, prefix.size(), prefix) == 0 &&
        s.name[prefix.size()] == '.') {
      out.push_back(&s);
    }
  }
  return out;
}

IniDocument parse_ini(std::istream& in) {
  IniDocument doc;
  std::set<std::string> seen_sections;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(strip_comment(raw));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError("unterminated section header", line);
      std::string name = trim(std::string_view(s).substr(1, s.size() - 2));
      if (name.empty()) throw ConfigError("empty section name", line);
      if (!seen_sections.insert(name).second) {
        throw ConfigError("duplicate section [" + name + "]", line);
      }
      doc.sections.push_back(IniSection{name, line, {}});
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line);
    if (doc.sections.empty()) throw ConfigError("key outside of any section", line);
    IniEntry e{trim(std::string_view(s).substr(0, eq)), trim(std::string_view(s).substr(eq + 1)), line};
    if (e.key.empty()) throw ConfigError("empty key", line);
    IniSection& sec = doc.sections.back();
    if (sec.find(e.key)) throw ConfigError("duplicate key '" + e.key + "'", line);
    sec.entries.push_back(std::move(e));
  }
  return doc;
}

IniDocument parse_ini_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_ini(in);
}

double to_double(const IniEntry& e) {
  const char* b = e.value.data();
  const char* end = b + e.value.size();
  double v = 0.0;
  auto [p, ec] = std::from_chars(b, end, v);
  if (ec != std::errc() || p != end) {
    throw ConfigError("'" + e.key + "' expects a number, got '" + e.value + "'", e.line);
  }
  return v;
}

int to_int(const IniEntry& e) {
  const char* b = e.value.data();
  const char* end = b + e.value.size();
  int v = 0;
  auto [p, ec] = std::from_chars(b, end, v);
  if (ec != std::errc() || p != end) {
    throw ConfigError("'" + e.key + "' expects an integer, got '" + e.value + "'", e.line);
  }
  return v;
}

bool to_bool(const IniEntry& e) {
  std::string v = e.value;
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
  if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
  if (v == "false" || v == "no" || v == "0" || v == "off") return false;
  throw ConfigError("'" + e.key + "' expects true or false, got '" + e.value + "'", e.line);
}

namespace {

template <class T, class Conv>
std::vector<T> to_list(const IniEntry& e, Conv conv) {
  std::vector<T> out;
  std::stringstream ss(e.value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    IniEntry sub{e.key, trim(item), e.line};
    if (sub.value.empty()) throw ConfigError("'" + e.key + "' has an empty list item", e.line);
    out.push_back(conv(sub));
  }
  return out;
}

}  // namespace

std::vector<double> to_double_list(const IniEntry& e) { return to_list<double>(e, to_double); }
std::vector<int> to_int_list(const IniEntry& e) { return to_list<int>(e, to_int); }

}  // namespace poro
