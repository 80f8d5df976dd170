#pragma once

#include <string>
#include <vector>

#include "config.hpp"
#include "holderlab/experiments.hpp"

namespace holderlab::cli {

struct RunOutcome {
  Verdict verdict = Verdict::Inconclusive;
  std::string message;             // one-line verdict with the governing tolerance
  std::vector<std::string> files;  // written artifacts, relative to the output directory
};

// Executes c.command, writing CSVs and summary.json into out_dir. Throws
// ConfigError for instances the command cannot handle.
RunOutcome run(const RunConfig& c, const std::string& out_dir);

// Comment lines that open every CSV: tool version, config hash, seed, resolution.
std::string csv_preamble(const RunConfig& c, const std::string& table);

}  // namespace holderlab::cli
