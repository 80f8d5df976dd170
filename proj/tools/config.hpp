#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "holderlab/problem.hpp"

namespace holderlab::cli {

inline constexpr const char* kToolVersion = "holderlab 0.1.0";

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  int n = 1;
  double r = 1.0;
  Symmetry symmetry = Symmetry::Disc;
  std::string phi = "zero";
  std::string f = "const:1";
  double alpha = 0.5;
  double t = 0.25;
  int resolution = 129;
  std::uint64_t seed = 0;
  std::string out = "out";
  std::vector<double> eps{0.1, 0.05, 0.025};

  // Canonical text of every field that affects results (out is excluded).
  std::string canonical() const;
  // FNV-1a 64 of canonical(), as 16 hex digits.
  std::string hash() const;
};

const std::vector<std::string>& commands();

// Parses the sectioned key = value format described in CONFIG.md and validates
// the result. Errors carry the offending line number where one exists.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Range and consistency checks; also run by parse_config.
void validate(const RunConfig& c);

}  // namespace holderlab::cli
