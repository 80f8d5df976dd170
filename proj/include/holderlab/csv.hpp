#pragma once

#include <charconv>
#include <string>
#include <vector>

#include "holderlab/common.hpp"

namespace holderlab {

// Shortest round-trip decimal form; identical bytes for identical doubles.
inline std::string fmt_num(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

// Coordinates joined with ';' so a point occupies a single CSV field.
inline std::string fmt_point(const Vec& x) {
  std::string out;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (i > 0) out += ';';
    out += fmt_num(x(i));
  }
  return out;
}

inline std::string csv_line(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += ',';
    out += fields[i];
  }
  out += '\n';
  return out;
}

}  // namespace holderlab
