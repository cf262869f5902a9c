#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace slicerl {

// Sectioned key/value config file:
//
//   # comment
//   [section]
//   key = value
//   list = 1,2,3
//   vectors = 1,2,3; 4,5,6
//
// Unknown keys are kept; getters convert on demand and report the file line
// on any parse failure.
class IniFile {
 public:
  static IniFile parse_file(const std::string& path);
  static IniFile parse_string(const std::string& text, const std::string& name = "<string>");

  bool has_section(const std::string& section) const;
  bool has(const std::string& section, const std::string& key) const;

  std::string get_string(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key) const;
  double get_double(const std::string& section, const std::string& key, double fallback) const;
  long long get_int(const std::string& section, const std::string& key) const;
  long long get_int(const std::string& section, const std::string& key, long long fallback) const;
  bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
  std::vector<double> get_double_list(const std::string& section, const std::string& key) const;
  std::vector<long long> get_int_list(const std::string& section, const std::string& key) const;
  // Semicolon-separated list of comma-separated integer vectors.
  std::vector<std::vector<int>> get_int_vectors(const std::string& section,
                                                const std::string& key) const;

  std::vector<std::string> section_names() const;
  std::vector<std::string> keys(const std::string& section) const;

  // Canonical text form: sections and keys sorted, one "key = value" per line.
  // Stable input for config hashing.
  std::string canonical() const;

 private:
  struct Entry {
    std::string value;
    int line = 0;
  };
  std::string name_;
  std::map<std::string, std::map<std::string, Entry>> sections_;

  const Entry& entry(const std::string& section, const std::string& key) const;
  [[noreturn]] void fail(const std::string& section, const std::string& key,
                         const std::string& what) const;
};

}  // namespace slicerl
