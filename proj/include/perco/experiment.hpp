#pragma once

#include <string>
#include <vector>

#include "perco/config.hpp"
#include "perco/estimate.hpp"

namespace perco {

struct ExperimentOutput {
  std::vector<EstimateRecord> records;
  ExponentFit fit;
  std::string results_csv, fit_json, plot_dat;  // paths written
};

// Runs the configured schedule and writes results.csv (frozen header
// `query,j,n,N,samples,hits,p_hat,stderr,seed,stream`), fit.json and
// plot.dat (columns log_N log_p stderr_log_p) under cfg.out_dir. All three
// files are byte-deterministic given the config. Throws std::ios_base::failure
// on unwritable output.
ExperimentOutput run_experiment(const ExperimentConfig& cfg);

// In-memory variant used by tests; no files written.
std::vector<EstimateRecord> run_schedule(const ExperimentConfig& cfg);

std::string format_results_csv(const std::vector<EstimateRecord>& records);
std::string format_fit_json(const ExponentFit& fit);
std::string format_plot_dat(const std::vector<EstimateRecord>& records);

}  // namespace perco
