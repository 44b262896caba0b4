#include "mfsm/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "mfsm/errors.hpp"

namespace mfsm {

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) {
    ++begin;
  }
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) {
    --end;
  }
  return s.substr(begin, end - begin);
}

} // namespace

ConfigFile ConfigFile::parse_file(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) {
    throw config_error("cannot open config file '" + filename + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_string(buffer.str(), filename);
}

ConfigFile ConfigFile::parse_string(const std::string& text,
                                    const std::string& origin) {
  ConfigFile cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  std::string section;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t comment = line.find('#');
    if (comment != std::string::npos) {
      line = line.substr(0, comment);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw config_error(origin + ":" + std::to_string(lineno) +
                           ": malformed section header '" + line + "'");
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw config_error(origin + ":" + std::to_string(lineno) +
                         ": expected 'key = value', got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw config_error(origin + ":" + std::to_string(lineno) +
                         ": empty key");
    }
    cfg.sections_[section][key] = Entry{value, lineno};
  }
  return cfg;
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
  auto sit = sections_.find(section);
  if (sit == sections_.end()) return false;
  return sit->second.count(key) > 0;
}

const ConfigFile::Entry& ConfigFile::require(const std::string& section,
                                             const std::string& key) const {
  auto sit = sections_.find(section);
  if (sit == sections_.end() || sit->second.count(key) == 0) {
    throw config_error(origin_ + ": missing required key '" + key +
                       "' in section [" + section + "]");
  }
  return sit->second.at(key);
}

void ConfigFile::fail(const std::string& what, const Entry& entry) const {
  throw config_error(origin_ + ":" + std::to_string(entry.line) + ": " + what +
                     " (value '" + entry.value + "')");
}

std::string ConfigFile::get_string(const std::string& section,
                                   const std::string& key) const {
  return require(section, key).value;
}

std::string ConfigFile::get_string_or(const std::string& section,
                                      const std::string& key,
                                      const std::string& fallback) const {
  return has(section, key) ? get_string(section, key) : fallback;
}

double ConfigFile::get_double(const std::string& section,
                              const std::string& key) const {
  const Entry& entry = require(section, key);
  try {
    std::size_t pos = 0;
    const double v = std::stod(entry.value, &pos);
    if (pos != entry.value.size()) fail("trailing characters after number", entry);
    return v;
  } catch (const config_error&) {
    throw;
  } catch (const std::exception&) {
    fail("expected a real number for '" + key + "'", entry);
  }
}

double ConfigFile::get_double_or(const std::string& section,
                                 const std::string& key,
                                 double fallback) const {
  return has(section, key) ? get_double(section, key) : fallback;
}

long ConfigFile::get_long(const std::string& section,
                          const std::string& key) const {
  const Entry& entry = require(section, key);
  try {
    std::size_t pos = 0;
    const long v = std::stol(entry.value, &pos);
    if (pos != entry.value.size()) fail("trailing characters after integer", entry);
    return v;
  } catch (const config_error&) {
    throw;
  } catch (const std::exception&) {
    fail("expected an integer for '" + key + "'", entry);
  }
}

long ConfigFile::get_long_or(const std::string& section, const std::string& key,
                             long fallback) const {
  return has(section, key) ? get_long(section, key) : fallback;
}

std::uint64_t ConfigFile::get_u64_or(const std::string& section,
                                     const std::string& key,
                                     std::uint64_t fallback) const {
  if (!has(section, key)) return fallback;
  const Entry& entry = require(section, key);
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(entry.value, &pos);
    if (pos != entry.value.size()) fail("trailing characters after integer", entry);
    return static_cast<std::uint64_t>(v);
  } catch (const config_error&) {
    throw;
  } catch (const std::exception&) {
    fail("expected an unsigned integer for '" + key + "'", entry);
  }
}

std::vector<int> ConfigFile::get_int_list(const std::string& section,
                                          const std::string& key) const {
  const Entry& entry = require(section, key);
  std::vector<int> out;
  std::istringstream in(entry.value);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      fail("expected a comma-separated integer list for '" + key + "'", entry);
    }
  }
  if (out.empty()) {
    fail("empty list for '" + key + "'", entry);
  }
  return out;
}

std::vector<double> ConfigFile::get_double_list(const std::string& section,
                                                const std::string& key) const {
  const Entry& entry = require(section, key);
  std::vector<double> out;
  std::istringstream in(entry.value);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      fail("expected a comma-separated number list for '" + key + "'", entry);
    }
  }
  if (out.empty()) {
    fail("empty list for '" + key + "'", entry);
  }
  return out;
}

void ConfigFile::set(const std::string& section, const std::string& key,
                     const std::string& value) {
  sections_[section][key] = Entry{value, 0};
}

} // namespace mfsm
