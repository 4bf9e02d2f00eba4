#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "perco/arms.hpp"
#include "perco/lattice.hpp"
#include "perco/rng.hpp"
#include "perco/sample.hpp"

namespace perco {

struct EstimateOptions {
  double p = 0.5;   // diagnostic override of the critical density
  int workers = 1;  // sampling threads; results are partition-invariant
};

struct EstimateRecord {
  ArmQuery query;
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  double p_hat = 0.0;
  double std_err = 0.0;  // binomial, sqrt(p(1-p)/samples)
  SeedSpec seed;
  double wall_seconds = 0.0;
};

// Monte Carlo estimate of P(query) from `samples` independent
// configurations; sample i uses stream seed.stream + i, so the result is
// bit-identical however the samples are partitioned across workers.
EstimateRecord estimate_prob(const ArmQuery& q, std::uint64_t samples, SeedSpec seed,
                             const EstimateOptions& opts = {});
EstimateRecord estimate_prob(const Annulus& a, const ArmQuery& q, std::uint64_t samples,
                             SeedSpec seed, const EstimateOptions& opts = {});

struct FitPoint {
  int N = 0;
  double p_hat = 0.0;
  double std_err = 0.0;
  std::uint64_t samples = 0, hits = 0;
};

struct ExponentFit {
  double alpha_hat = 0.0;
  std::pair<double, double> ci95{0.0, 0.0};
  double intercept = 0.0;
  std::vector<FitPoint> schedule;
  std::vector<double> residuals;
  std::vector<std::string> warnings;  // e.g. excluded zero-hit records
};

// Weighted least squares of log p_hat on log N (weights from the binomial
// standard errors); alpha_hat = -slope, 95% CI from the linear-model
// covariance. Records must share (sigma, j, n) and form a geometric N
// schedule; zero-hit records are excluded with a warning, at least three
// usable records are required.
ExponentFit fit_exponent(const std::vector<EstimateRecord>& records);

struct QuasiMultRecord {
  double rho = 0.0;      // p13 / (p12 * p23)
  double std_err = 0.0;  // delta-method propagation
  bool holds_within_3sigma = false;
  double c1_estimate = 0.0;
  EstimateRecord r12, r23, r13;
};

// rho for the annuli (n1,n2), (n2,n3), (n1,n3); the upper quasi-
// multiplicativity bound has constant 1, so rho should not exceed 1 beyond
// noise. rho itself is the empirical lower-constant estimate.
QuasiMultRecord quasi_mult_check(int j, SigmaClass sigma, int n1, int n2, int n3,
                                 std::uint64_t samples, SeedSpec seed,
                                 const EstimateOptions& opts = {});

// The pure ratio computation behind quasi_mult_check.
QuasiMultRecord quasi_rho(const EstimateRecord& r12, const EstimateRecord& r23,
                          const EstimateRecord& r13);

struct FkgMcRecord {
  std::uint64_t samples = 0;
  std::uint64_t hits_both = 0, hits_mono = 0, hits_white = 0;
  double p_both = 0.0, p_mono = 0.0, p_white = 0.0, product = 0.0;
  double margin = 0.0;  // 3 propagated standard errors
  bool holds_within_3sigma = false;
};

// On common samples: P(Mono_j and OneWhite) against P(Mono_j)*P(OneWhite).
FkgMcRecord fkg_check(int j, int n, int N, std::uint64_t samples, SeedSpec seed,
                      const EstimateOptions& opts = {});

struct FkgExactRecord {
  int sites = 0;
  std::uint64_t count_both = 0, count_mono = 0, count_white = 0;
  bool holds = false;  // 2^sites * count_both <= count_mono * count_white
};

// Exhaustive enumeration of every configuration of a tiny annulus
// (<= 20 sites); the inequality is compared in exact integer arithmetic.
FkgExactRecord fkg_exact_check(int j, int n, int N);

struct StrictOrderingReport {
  int j = 0;
  ExponentFit mono_fit;     // alpha'_j estimate
  ExponentFit poly_j_fit;   // alpha_j estimate
  ExponentFit poly_j1_fit;  // alpha_{j+1} estimate
  double lower_exact = 0.0, upper_exact = 0.0;  // (j^2-1)/12 and ((j+1)^2-1)/12
  bool mono_ci_inside = false;
};

// Theorem-3 style report: the monochromatic j-arm CI against the exact
// polychromatic endpoints. The monochromatic point estimate is measured
// output; no closed form exists for it.
StrictOrderingReport strict_inequality_report(int j, int n, const std::vector<int>& N_schedule,
                                              std::uint64_t samples, SeedSpec seed,
                                              const EstimateOptions& opts = {});

struct AprioriReport {
  std::vector<EstimateRecord> one_arm;
  std::vector<EstimateRecord> mono;
  bool decreasing_beyond_3sigma = false;
  bool mono_positive = false;
  bool ok = false;
  // fitted envelope constants
  double upper_C = 0.0, upper_eps = 0.0;
  double lower_c = 0.0, lower_beta = 0.0;
};

// A-priori bound diagnostics: the one-arm probability must strictly decrease
// along the schedule beyond 3 sigma and the j-arm probability must stay
// positive at every point.
AprioriReport apriori_evaluate(const std::vector<EstimateRecord>& one_arm,
                               const std::vector<EstimateRecord>& mono);
AprioriReport apriori_check(int j, int n, const std::vector<int>& N_schedule,
                            std::uint64_t samples, SeedSpec seed,
                            const EstimateOptions& opts = {});

// Shared sampling pass counting several queries on the same configurations.
// Query radii must agree; returns one hit count per query.
std::vector<std::uint64_t> count_joint(const Annulus& a, const std::vector<ArmQuery>& queries,
                                       std::uint64_t samples, SeedSpec seed,
                                       const EstimateOptions& opts = {});

}  // namespace perco
