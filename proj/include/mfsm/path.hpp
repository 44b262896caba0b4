#ifndef MFSM_PATH_HPP
#define MFSM_PATH_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace mfsm {

/// A process sampled on the uniform grid t = i/n. `values[j]` holds
/// X((first_index + j)/n), so a path may cover any contiguous index window.
struct SamplePath {
  int n = 0;
  long first_index = 0;
  std::vector<double> values;
  double alpha = 2.0;      // provenance
  std::uint64_t seed = 0;  // provenance

  double t_start() const { return static_cast<double>(first_index) / n; }
  long last_index() const {
    return first_index + static_cast<long>(values.size()) - 1;
  }
  bool contains(long index) const {
    return index >= first_index && index <= last_index();
  }
  /// X(index/n); throws config_error naming the index when out of range.
  double at_index(long index) const;

  /// The same record read at every second point: resolution n/2, spacing 2/n.
  /// Requires even n.
  SamplePath subsample_half() const;
};

/// Columnar text format: one header line "n t_start alpha seed", then one
/// value per line at full precision.
void write_path_file(const SamplePath& path, const std::string& filename);
SamplePath read_path_file(const std::string& filename);

/// FNV-1a over the canonical serialized text; stable across runs.
std::uint64_t path_checksum(const SamplePath& path);

} // namespace mfsm

#endif
