#include "slicerl/common/ini.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace slicerl {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

}  // namespace

IniFile IniFile::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str(), path);
}

IniFile IniFile::parse_string(const std::string& text, const std::string& name) {
  IniFile f;
  f.name_ = name;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']' || t.size() < 3)
        throw std::runtime_error(name + ":" + std::to_string(lineno) + ": malformed section header '" + t + "'");
      section = trim(t.substr(1, t.size() - 2));
      f.sections_[section];
      continue;
    }
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(name + ":" + std::to_string(lineno) + ": expected 'key = value', got '" + t + "'");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    // strip trailing comment
    auto hash = value.find(" #");
    if (hash != std::string::npos) value = trim(value.substr(0, hash));
    if (key.empty())
      throw std::runtime_error(name + ":" + std::to_string(lineno) + ": empty key");
    f.sections_[section][key] = Entry{value, lineno};
  }
  return f;
}

bool IniFile::has_section(const std::string& section) const {
  return sections_.count(section) > 0;
}

bool IniFile::has(const std::string& section, const std::string& key) const {
  auto it = sections_.find(section);
  return it != sections_.end() && it->second.count(key) > 0;
}

const IniFile::Entry& IniFile::entry(const std::string& section, const std::string& key) const {
  auto it = sections_.find(section);
  if (it == sections_.end())
    throw std::runtime_error(name_ + ": missing section [" + section + "]");
  auto kt = it->second.find(key);
  if (kt == it->second.end())
    throw std::runtime_error(name_ + ": missing key '" + key + "' in section [" + section + "]");
  return kt->second;
}

void IniFile::fail(const std::string& section, const std::string& key, const std::string& what) const {
  const Entry& e = entry(section, key);
  throw std::runtime_error(name_ + ":" + std::to_string(e.line) + ": key '" + key + "' in [" +
                           section + "]: " + what + " (value '" + e.value + "')");
}

std::string IniFile::get_string(const std::string& section, const std::string& key) const {
  return entry(section, key).value;
}

std::string IniFile::get_string(const std::string& section, const std::string& key,
                                const std::string& fallback) const {
  return has(section, key) ? entry(section, key).value : fallback;
}

double IniFile::get_double(const std::string& section, const std::string& key) const {
  const std::string& v = entry(section, key).value;
  try {
    size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) fail(section, key, "not a number");
    return d;
  } catch (const std::invalid_argument&) {
    fail(section, key, "not a number");
  } catch (const std::out_of_range&) {
    fail(section, key, "number out of range");
  }
}

double IniFile::get_double(const std::string& section, const std::string& key, double fallback) const {
  return has(section, key) ? get_double(section, key) : fallback;
}

long long IniFile::get_int(const std::string& section, const std::string& key) const {
  const std::string& v = entry(section, key).value;
  try {
    size_t pos = 0;
    long long i = std::stoll(v, &pos);
    if (pos != v.size()) {
      // allow scientific/float-looking integers like 1e5
      double d = get_double(section, key);
      long long li = static_cast<long long>(d);
      if (static_cast<double>(li) != d) fail(section, key, "not an integer");
      return li;
    }
    return i;
  } catch (const std::invalid_argument&) {
    fail(section, key, "not an integer");
  } catch (const std::out_of_range&) {
    fail(section, key, "integer out of range");
  }
}

long long IniFile::get_int(const std::string& section, const std::string& key, long long fallback) const {
  return has(section, key) ? get_int(section, key) : fallback;
}

bool IniFile::get_bool(const std::string& section, const std::string& key, bool fallback) const {
  if (!has(section, key)) return fallback;
  std::string v = entry(section, key).value;
  for (auto& c : v) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  fail(section, key, "not a boolean");
}

std::vector<double> IniFile::get_double_list(const std::string& section, const std::string& key) const {
  std::vector<double> out;
  for (const auto& part : split(entry(section, key).value, ',')) {
    if (part.empty()) fail(section, key, "empty list element");
    try {
      size_t pos = 0;
      out.push_back(std::stod(part, &pos));
      if (pos != part.size()) fail(section, key, "bad list element '" + part + "'");
    } catch (const std::logic_error&) {
      fail(section, key, "bad list element '" + part + "'");
    }
  }
  return out;
}

std::vector<long long> IniFile::get_int_list(const std::string& section, const std::string& key) const {
  std::vector<long long> out;
  for (double d : get_double_list(section, key)) {
    long long i = static_cast<long long>(d);
    if (static_cast<double>(i) != d) fail(section, key, "list element not an integer");
    out.push_back(i);
  }
  return out;
}

std::vector<std::vector<int>> IniFile::get_int_vectors(const std::string& section,
                                                       const std::string& key) const {
  std::vector<std::vector<int>> out;
  for (const auto& group : split(entry(section, key).value, ';')) {
    if (group.empty()) continue;
    std::vector<int> vec;
    for (const auto& part : split(group, ',')) {
      try {
        size_t pos = 0;
        vec.push_back(std::stoi(part, &pos));
        if (pos != part.size()) fail(section, key, "bad vector element '" + part + "'");
      } catch (const std::logic_error&) {
        fail(section, key, "bad vector element '" + part + "'");
      }
    }
    out.push_back(std::move(vec));
  }
  return out;
}

std::vector<std::string> IniFile::section_names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : sections_) out.push_back(name);
  return out;
}

std::vector<std::string> IniFile::keys(const std::string& section) const {
  std::vector<std::string> out;
  auto it = sections_.find(section);
  if (it == sections_.end()) return out;
  for (const auto& [k, _] : it->second) out.push_back(k);
  return out;
}

std::string IniFile::canonical() const {
  std::ostringstream out;
  for (const auto& [sec, entries] : sections_) {
    out << "[" << sec << "]\n";
    for (const auto& [k, e] : entries) out << k << " = " << e.value << "\n";
  }
  return out.str();
}

}  // namespace slicerl
