#include "mfsm/path.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mfsm/errors.hpp"

namespace mfsm {

double SamplePath::at_index(long index) const {
  if (!contains(index)) {
    throw config_error("sample index " + std::to_string(index) +
                       " outside stored window [" +
                       std::to_string(first_index) + ", " +
                       std::to_string(last_index()) + "]");
  }
  return values[static_cast<std::size_t>(index - first_index)];
}

SamplePath SamplePath::subsample_half() const {
  if (n % 2 != 0) {
    throw config_error("subsample_half: resolution n=" + std::to_string(n) +
                       " is odd");
  }
  SamplePath half;
  half.n = n / 2;
  half.alpha = alpha;
  half.seed = seed;
  long q_first = first_index / 2;
  if (2 * q_first < first_index) ++q_first;  // ceil for negative/odd starts
  const long q_last = last_index() >= 0 ? last_index() / 2
                                        : -((-last_index() + 1) / 2);
  half.first_index = q_first;
  half.values.reserve(static_cast<std::size_t>(q_last - q_first + 1));
  for (long q = q_first; q <= q_last; ++q) {
    half.values.push_back(at_index(2 * q));
  }
  return half;
}

namespace {

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

} // namespace

void write_path_file(const SamplePath& path, const std::string& filename) {
  std::ofstream out(filename);
  if (!out) {
    throw config_error("cannot open '" + filename + "' for writing");
  }
  out << path.n << ' ' << format_value(path.t_start()) << ' '
      << format_value(path.alpha) << ' ' << path.seed << '\n';
  for (double v : path.values) {
    out << format_value(v) << '\n';
  }
  if (!out) {
    throw config_error("write failed for '" + filename + "'");
  }
}

SamplePath read_path_file(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) {
    throw config_error("cannot open path file '" + filename + "'");
  }
  SamplePath path;
  std::string header;
  if (!std::getline(in, header)) {
    throw config_error("path file '" + filename + "': missing header");
  }
  std::istringstream hs(header);
  double t_start = 0.0;
  if (!(hs >> path.n >> t_start >> path.alpha >> path.seed) || path.n < 1) {
    throw config_error("path file '" + filename +
                       "': bad header line (want: n t_start alpha seed)");
  }
  path.first_index = std::lround(t_start * path.n);
  std::string line;
  long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      std::size_t pos = 0;
      const double v = std::stod(line, &pos);
      path.values.push_back(v);
    } catch (const std::exception&) {
      throw config_error("path file '" + filename + "': bad value at line " +
                         std::to_string(lineno));
    }
  }
  if (path.values.empty()) {
    throw config_error("path file '" + filename + "': no samples");
  }
  return path;
}

std::uint64_t path_checksum(const SamplePath& path) {
  std::uint64_t hash = 1469598103934665603ull;
  auto mix = [&hash](const std::string& s) {
    for (unsigned char c : s) {
      hash ^= c;
      hash *= 1099511628211ull;
    }
  };
  mix(std::to_string(path.n));
  mix(format_value(path.t_start()));
  mix(format_value(path.alpha));
  mix(std::to_string(path.seed));
  for (double v : path.values) {
    mix(format_value(v));
  }
  return hash;
}

} // namespace mfsm
