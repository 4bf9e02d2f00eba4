#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "perco/experiment.hpp"
#include "perco/verify.hpp"

// Exit codes: 0 success, 1 usage, 2 verification failure, 3 I/O.

int main(int argc, char** argv) {
  CLI::App app{"perco - arm-event laboratory for critical site percolation"};
  std::string config_path, out_dir, verify_level;
  std::uint64_t seed = 0;
  int workers = 0;
  app.add_option("--config", config_path, "experiment config file");
  app.add_option("--out", out_dir, "output directory override");
  auto* seed_opt =
      app.add_option("--seed", seed, "master seed override")->envname("PERCO_SEED");
  app.add_option("--workers", workers, "sampling worker count override");
  app.add_option("--verify", verify_level, "run the property suites (fast|full)")
      ->check(CLI::IsMember({"fast", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (!verify_level.empty()) {
      auto level = verify_level == "full" ? perco::VerifyLevel::Full : perco::VerifyLevel::Fast;
      auto results = perco::run_verification_suite(level);
      std::uint64_t violations = 0;
      for (const auto& r : results) {
        std::printf("suite=%s instances=%llu violations=%llu seconds=%.2f\n", r.name.c_str(),
                    static_cast<unsigned long long>(r.instances),
                    static_cast<unsigned long long>(r.violations), r.seconds);
        violations += r.violations;
      }
      return violations == 0 ? 0 : 2;
    }

    if (config_path.empty()) {
      std::cerr << "error: either --config or --verify is required\n";
      return 1;
    }
    std::ifstream is(config_path);
    if (!is) {
      std::cerr << "error: cannot read " << config_path << "\n";
      return 3;
    }
    std::stringstream buf;
    buf << is.rdbuf();

    perco::ExperimentConfig cfg;
    try {
      cfg = perco::parse_config(buf.str());
    } catch (const perco::ParseError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return 1;
    }
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (seed_opt->count() > 0 || std::getenv("PERCO_SEED")) cfg.seed = seed;
    if (workers > 0) cfg.workers = workers;

    auto out = perco::run_experiment(cfg);
    std::printf("alpha_hat=%.6f ci=[%.6f, %.6f] points=%zu\n", out.fit.alpha_hat,
                out.fit.ci95.first, out.fit.ci95.second, out.fit.schedule.size());
    std::printf("wrote %s, %s, %s\n", out.results_csv.c_str(), out.fit_json.c_str(),
                out.plot_dat.c_str());
    return 0;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
