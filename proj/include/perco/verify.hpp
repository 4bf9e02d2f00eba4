#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace perco {

enum class VerifyLevel { Fast, Full };

struct SuiteResult {
  std::string name;
  std::uint64_t instances = 0;
  std::uint64_t violations = 0;
  double seconds = 0.0;
};

// Negative-control hooks: biases injected into a check so tests can confirm
// the suites actually catch broken invariants.
struct FaultInjection {
  int menger_flow_bias = 0;
};

// Cross-module property suites (Menger duality, Reimer, witness validity,
// winding containment, surgery reroute, kernel equivalence, exact FKG,
// color symmetry). Fast finishes in well under two minutes; Full runs the
// acceptance-scale instance counts.
std::vector<SuiteResult> run_verification_suite(VerifyLevel level, std::uint64_t seed = 20240801,
                                                const FaultInjection* fault = nullptr);

// Individual suites, exposed for the acceptance tests.
SuiteResult suite_menger_duality(std::uint64_t configs, int max_outer, std::uint64_t seed,
                                 const FaultInjection* fault = nullptr);
SuiteResult suite_reimer_exhaustive(int n);
SuiteResult suite_reimer_random(const std::vector<int>& dims, std::uint64_t pairs_per_dim,
                                std::uint64_t seed);
SuiteResult suite_witness_validity(std::uint64_t configs, std::uint64_t seed);
SuiteResult suite_winding_containment(std::uint64_t configs, std::uint64_t seed);
SuiteResult suite_surgery_reroute(int instances_per_j, std::uint64_t seed);
SuiteResult suite_kernel_equivalence(std::uint64_t seed);
SuiteResult suite_fkg_exact();
SuiteResult suite_color_symmetry(std::uint64_t configs, std::uint64_t seed);

}  // namespace perco
