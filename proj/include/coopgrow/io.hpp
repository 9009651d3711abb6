#ifndef COOPGROW_IO_HPP
#define COOPGROW_IO_HPP

#include <charconv>
#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace coopgrow {

/// Ordered key/value pairs emitted as "# key=value" header lines.
using Metadata = std::vector<std::pair<std::string, std::string>>;

/// Six significant digits, printf %g style. All CSV reals go through here.
inline std::string fmt6(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

/// Shortest round-trippable form, for parameters that must be replayed exactly.
inline std::string fmt_exact(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline void write_metadata(std::ostream& out, const Metadata& meta) {
  for (const auto& [k, v] : meta) out << "# " << k << '=' << v << '\n';
}

}  // namespace coopgrow

#endif  // COOPGROW_IO_HPP
