#ifndef MFSM_CONFIG_HPP
#define MFSM_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace mfsm {

/// Flat typed key-value file with [section] headers, '#' comments and
/// 'key = value' lines. Lookup errors carry file and line diagnostics.
class ConfigFile {
public:
  static ConfigFile parse_file(const std::string& filename);
  static ConfigFile parse_string(const std::string& text,
                                 const std::string& origin);

  bool has(const std::string& section, const std::string& key) const;

  std::string get_string(const std::string& section,
                         const std::string& key) const;
  std::string get_string_or(const std::string& section, const std::string& key,
                            const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key) const;
  double get_double_or(const std::string& section, const std::string& key,
                       double fallback) const;
  long get_long(const std::string& section, const std::string& key) const;
  long get_long_or(const std::string& section, const std::string& key,
                   long fallback) const;
  std::uint64_t get_u64_or(const std::string& section, const std::string& key,
                           std::uint64_t fallback) const;
  std::vector<int> get_int_list(const std::string& section,
                                const std::string& key) const;
  std::vector<double> get_double_list(const std::string& section,
                                      const std::string& key) const;

  /// Overlay a "section.key=value" style override (CLI flags).
  void set(const std::string& section, const std::string& key,
           const std::string& value);

  const std::string& origin() const { return origin_; }

private:
  struct Entry {
    std::string value;
    long line = 0;
  };
  std::string origin_;
  std::map<std::string, std::map<std::string, Entry>> sections_;

  const Entry& require(const std::string& section,
                       const std::string& key) const;
  [[noreturn]] void fail(const std::string& what, const Entry& entry) const;
};

} // namespace mfsm

#endif
