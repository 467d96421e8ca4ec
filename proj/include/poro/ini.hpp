#pragma once

#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace poro {

/// Configuration problem; carries the offending line when one is known.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line = 0);
  int line() const { return line_; }

 private:
  int line_;
};

struct IniEntry {
  std::string key;
  std::string value;
  int line = 0;
};

struct IniSection {
  std::string name;
  int line = 0;
  std::vector<IniEntry> entries;

  const IniEntry* find(std::string_view key) const;
};

struct IniDocument {
  std::vector<IniSection> sections;

  const IniSection* find(std::string_view name) const;
  /// Sections named "<prefix>.<suffix>", in file order.
  std::vector<const IniSection*> with_prefix(std::string_view prefix) const;
};

/// `[section]` headers, `key = value` pairs, `#` or `;` comments.
IniDocument parse_ini(std::istream& in);
IniDocument parse_ini_file(const std::string& path);

double to_double(const IniEntry& e);
int to_int(const IniEntry& e);
bool to_bool(const IniEntry& e);
std::vector<double> to_double_list(const IniEntry& e);
std::vector<int> to_int_list(const IniEntry& e);

}  // namespace poro
