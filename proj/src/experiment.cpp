#include "perco/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"

namespace perco {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::ios_base::failure("cannot open " + path + " for writing");
  os << content;
  if (!os) throw std::ios_base::failure("write failed for " + path);
}

}  // namespace

std::vector<EstimateRecord> run_schedule(const ExperimentConfig& cfg) {
  EstimateOptions opts;
  opts.workers = cfg.workers;
  if (cfg.p_override) opts.p = *cfg.p_override;
  std::vector<EstimateRecord> records;
  std::uint64_t stream = 0;
  for (int N : cfg.schedule) {
    ArmQuery q{cfg.j, cfg.query, cfg.n, N};
    records.push_back(estimate_prob(q, cfg.samples, SeedSpec{cfg.seed, stream}, opts));
    stream += cfg.samples;
  }
  return records;
}

std::string format_results_csv(const std::vector<EstimateRecord>& records) {
  std::string out = "query,j,n,N,samples,hits,p_hat,stderr,seed,stream\n";
  for (const EstimateRecord& r : records) {
    out += sigma_class_name(r.query.sigma);
    out += ',' + std::to_string(r.query.j) + ',' + std::to_string(r.query.n) + ',' +
           std::to_string(r.query.N) + ',' + std::to_string(r.samples) + ',' +
           std::to_string(r.hits) + ',' + fmt_double(r.p_hat) + ',' + fmt_double(r.std_err) + ',' +
           std::to_string(r.seed.master) + ',' + std::to_string(r.seed.stream) + '\n';
  }
  return out;
}

std::string format_fit_json(const ExponentFit& fit) {
  nlohmann::json j;
  j["alpha_hat"] = fit.alpha_hat;
  j["ci_low"] = fit.ci95.first;
  j["ci_high"] = fit.ci95.second;
  nlohmann::json points = nlohmann::json::array();
  for (const FitPoint& p : fit.schedule) {
    nlohmann::json pt;
    pt["N"] = p.N;
    pt["p_hat"] = p.p_hat;
    pt["stderr"] = p.std_err;
    pt["samples"] = p.samples;
    pt["hits"] = p.hits;
    points.push_back(pt);
  }
  j["points"] = points;
  if (!fit.warnings.empty()) j["warnings"] = fit.warnings;
  return j.dump(2) + "\n";
}

std::string format_plot_dat(const std::vector<EstimateRecord>& records) {
  std::string out;
  for (const EstimateRecord& r : records) {
    double logN = std::log(static_cast<double>(r.query.N));
    double logp = r.hits > 0 ? std::log(r.p_hat) : std::nan("");
    double se = r.hits > 0 ? r.std_err / r.p_hat : std::nan("");
    out += fmt_double(logN) + " " + fmt_double(logp) + " " + fmt_double(se) + "\n";
  }
  return out;
}

ExperimentOutput run_experiment(const ExperimentConfig& cfg) {
  ExperimentOutput out;
  out.records = run_schedule(cfg);
  out.fit = fit_exponent(out.records);

  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) throw std::ios_base::failure("cannot create output directory " + cfg.out_dir);

  out.results_csv = cfg.out_dir + "/results.csv";
  out.fit_json = cfg.out_dir + "/fit.json";
  out.plot_dat = cfg.out_dir + "/plot.dat";
  write_file(out.results_csv, format_results_csv(out.records));
  write_file(out.fit_json, format_fit_json(out.fit));
  write_file(out.plot_dat, format_plot_dat(out.records));
  return out;
}

}  // namespace perco
