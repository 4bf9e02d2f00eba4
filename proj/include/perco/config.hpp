#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "perco/arms.hpp"

namespace perco {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

// Experiment description, parsed from key=value lines under an [experiment]
// section header. Defaults: n = max(4, min_inner_radius(j)), samples = 1e5,
// seed = 1, workers = 1, out = "out".
struct ExperimentConfig {
  SigmaClass query = SigmaClass::Mono;
  int j = 1;
  int n = -1;  // -1 = apply default
  std::vector<int> schedule;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  int workers = 1;
  std::string out_dir = "out";
  std::optional<double> p_override;

  friend bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
    return a.query == b.query && a.j == b.j && a.n == b.n && a.schedule == b.schedule &&
           a.samples == b.samples && a.seed == b.seed && a.workers == b.workers &&
           a.out_dir == b.out_dir && a.p_override == b.p_override;
  }
};

// Parses and fully validates; unknown keys, malformed values and invariant
// violations raise ParseError with the offending line number.
ExperimentConfig parse_config(const std::string& text);
std::string serialize_config(const ExperimentConfig& cfg);

}  // namespace perco
