#include "perco/estimate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace perco {

namespace {

double binomial_stderr(std::uint64_t hits, std::uint64_t samples) {
  double p = static_cast<double>(hits) / static_cast<double>(samples);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
}

// Relative standard error sigma/p, the log-scale weight basis.
double rel_err(const EstimateRecord& r) { return r.std_err / r.p_hat; }

}  // namespace

std::vector<std::uint64_t> count_joint(const Annulus& a, const std::vector<ArmQuery>& queries,
                                       std::uint64_t samples, SeedSpec seed,
                                       const EstimateOptions& opts) {
  if (samples == 0) throw std::invalid_argument("count_joint: samples must be >= 1");
  for (const ArmQuery& q : queries) {
    q.validate();
    if (q.n != a.inner_radius() || q.N != a.outer_radius())
      throw std::invalid_argument("count_joint: query radii do not match the annulus");
  }
  int workers = std::max(1, opts.workers);
  if (static_cast<std::uint64_t>(workers) > samples) workers = static_cast<int>(samples);

  std::vector<std::vector<std::uint64_t>> partial(
      static_cast<std::size_t>(workers), std::vector<std::uint64_t>(queries.size(), 0));

  auto run = [&](int w) {
    std::uint64_t lo = samples * static_cast<std::uint64_t>(w) / static_cast<std::uint64_t>(workers);
    std::uint64_t hi =
        samples * static_cast<std::uint64_t>(w + 1) / static_cast<std::uint64_t>(workers);
    ArmDetector det(a);
    SiteConfig cfg;
    auto& mine = partial[static_cast<std::size_t>(w)];
    for (std::uint64_t i = lo; i < hi; ++i) {
      sample_config_into(a, opts.p, SeedSpec{seed.master, seed.stream + i}, cfg);
      for (std::size_t qi = 0; qi < queries.size(); ++qi)
        if (det.detect_unchecked(cfg, queries[qi])) ++mine[qi];
    }
  };

  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) threads.emplace_back(run, w);
    for (auto& t : threads) t.join();
  }

  std::vector<std::uint64_t> totals(queries.size(), 0);
  for (const auto& part : partial)
    for (std::size_t qi = 0; qi < queries.size(); ++qi) totals[qi] += part[qi];
  return totals;
}

EstimateRecord estimate_prob(const Annulus& a, const ArmQuery& q, std::uint64_t samples,
                             SeedSpec seed, const EstimateOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  auto hits = count_joint(a, {q}, samples, seed, opts);
  EstimateRecord rec;
  rec.query = q;
  rec.samples = samples;
  rec.hits = hits[0];
  rec.p_hat = static_cast<double>(rec.hits) / static_cast<double>(samples);
  rec.std_err = binomial_stderr(rec.hits, samples);
  rec.seed = seed;
  rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

EstimateRecord estimate_prob(const ArmQuery& q, std::uint64_t samples, SeedSpec seed,
                             const EstimateOptions& opts) {
  q.validate();
  Annulus a = Annulus::build(q.n, q.N);
  return estimate_prob(a, q, samples, seed, opts);
}

ExponentFit fit_exponent(const std::vector<EstimateRecord>& records) {
  if (records.size() < 3) throw std::invalid_argument("fit_exponent: need >= 3 records");
  for (std::size_t i = 1; i < records.size(); ++i) {
    const ArmQuery &q0 = records[0].query, &qi = records[i].query;
    if (qi.sigma != q0.sigma || qi.j != q0.j || qi.n != q0.n)
      throw std::invalid_argument("fit_exponent: records differ in query beyond N");
    if (qi.N <= records[i - 1].query.N)
      throw std::invalid_argument("fit_exponent: N schedule not increasing");
  }
  double ratio0 = static_cast<double>(records[1].query.N) / records[0].query.N;
  for (std::size_t i = 2; i < records.size(); ++i) {
    double ratio = static_cast<double>(records[i].query.N) / records[i - 1].query.N;
    if (std::abs(std::log(ratio) - std::log(ratio0)) > 1e-9)
      throw std::invalid_argument("fit_exponent: N schedule not geometric");
  }

  ExponentFit fit;
  std::vector<double> xs, ys, ws;
  for (const EstimateRecord& r : records) {
    FitPoint pt{r.query.N, r.p_hat, r.std_err, r.samples, r.hits};
    fit.schedule.push_back(pt);
    if (r.hits == 0) {
      fit.warnings.push_back("excluded zero-hit record at N=" + std::to_string(r.query.N));
      continue;
    }
    xs.push_back(std::log(static_cast<double>(r.query.N)));
    ys.push_back(std::log(r.p_hat));
    double re = rel_err(r);
    ws.push_back(re > 0 ? 1.0 / (re * re) : 1e18);
  }
  if (xs.size() < 3) throw std::invalid_argument("fit_exponent: fewer than 3 usable records");

  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sw += ws[i];
    sx += ws[i] * xs[i];
    sy += ws[i] * ys[i];
    sxx += ws[i] * xs[i] * xs[i];
    sxy += ws[i] * xs[i] * ys[i];
  }
  double det = sw * sxx - sx * sx;
  if (det <= 0) throw std::invalid_argument("fit_exponent: degenerate design");
  double slope = (sw * sxy - sx * sy) / det;
  double intercept = (sxx * sy - sx * sxy) / det;
  double slope_var = sw / det;
  double half = 1.959963984540054 * std::sqrt(slope_var);

  fit.alpha_hat = -slope;
  fit.ci95 = {-slope - half, -slope + half};
  fit.intercept = intercept;
  for (std::size_t i = 0; i < xs.size(); ++i)
    fit.residuals.push_back(ys[i] - (intercept + slope * xs[i]));
  return fit;
}

QuasiMultRecord quasi_rho(const EstimateRecord& r12, const EstimateRecord& r23,
                          const EstimateRecord& r13) {
  if (r12.hits == 0 || r23.hits == 0)
    throw std::runtime_error("quasi_rho: zero-hit denominator estimate");
  QuasiMultRecord rec;
  rec.r12 = r12;
  rec.r23 = r23;
  rec.r13 = r13;
  rec.rho = r13.p_hat / (r12.p_hat * r23.p_hat);
  double v = 0;
  for (const EstimateRecord* r : {&r12, &r23, &r13}) {
    double re = rel_err(*r);
    v += re * re;
  }
  rec.std_err = rec.rho * std::sqrt(v);
  rec.holds_within_3sigma = rec.rho <= 1.0 + 3.0 * rec.std_err;
  rec.c1_estimate = rec.rho;
  return rec;
}

QuasiMultRecord quasi_mult_check(int j, SigmaClass sigma, int n1, int n2, int n3,
                                 std::uint64_t samples, SeedSpec seed,
                                 const EstimateOptions& opts) {
  if (!(n1 < n2 && n2 < n3)) throw std::invalid_argument("quasi_mult_check: need n1 < n2 < n3");
  ArmQuery q12{j, sigma, n1, n2};
  ArmQuery q23{j, sigma, n2, n3};
  ArmQuery q13{j, sigma, n1, n3};
  EstimateRecord r12 = estimate_prob(q12, samples, SeedSpec{seed.master, seed.stream}, opts);
  EstimateRecord r23 =
      estimate_prob(q23, samples, SeedSpec{seed.master, seed.stream + samples}, opts);
  EstimateRecord r13 =
      estimate_prob(q13, samples, SeedSpec{seed.master, seed.stream + 2 * samples}, opts);
  return quasi_rho(r12, r23, r13);
}

FkgMcRecord fkg_check(int j, int n, int N, std::uint64_t samples, SeedSpec seed,
                      const EstimateOptions& opts) {
  Annulus a = Annulus::build(n, N);
  ArmQuery mono{j, SigmaClass::Mono, n, N};
  ArmQuery white{1, SigmaClass::OneWhite, n, N};
  ArmQuery both{j + 1, SigmaClass::PolyOneWhite, n, N};
  auto hits = count_joint(a, {both, mono, white}, samples, seed, opts);

  FkgMcRecord rec;
  rec.samples = samples;
  rec.hits_both = hits[0];
  rec.hits_mono = hits[1];
  rec.hits_white = hits[2];
  double s = static_cast<double>(samples);
  rec.p_both = rec.hits_both / s;
  rec.p_mono = rec.hits_mono / s;
  rec.p_white = rec.hits_white / s;
  rec.product = rec.p_mono * rec.p_white;
  double se_both = binomial_stderr(rec.hits_both, samples);
  double se_mono = binomial_stderr(rec.hits_mono, samples);
  double se_white = binomial_stderr(rec.hits_white, samples);
  rec.margin = 3.0 * std::sqrt(se_both * se_both + rec.p_white * rec.p_white * se_mono * se_mono +
                               rec.p_mono * rec.p_mono * se_white * se_white);
  rec.holds_within_3sigma = rec.p_both <= rec.product + rec.margin;
  return rec;
}

FkgExactRecord fkg_exact_check(int j, int n, int N) {
  Annulus a = Annulus::build(n, N);
  if (a.size() > 20) throw std::length_error("fkg_exact_check: annulus exceeds 20 sites");
  ArmQuery mono{j, SigmaClass::Mono, n, N};
  mono.validate();
  ArmDetector det(a);
  SiteConfig cfg;
  cfg.annulus = &a;
  cfg.colors.assign(static_cast<std::size_t>(a.size()), 0);

  FkgExactRecord rec;
  rec.sites = a.size();
  std::uint64_t total = 1ull << a.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (int i = 0; i < a.size(); ++i)
      cfg.colors[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((mask >> i) & 1u);
    bool m = det.detect_unchecked(cfg, mono);
    bool w = det.has_one_arm(cfg, kWhite);
    rec.count_mono += m;
    rec.count_white += w;
    rec.count_both += m && w;
  }
  rec.holds = (rec.count_both << a.size()) <= rec.count_mono * rec.count_white;
  return rec;
}

StrictOrderingReport strict_inequality_report(int j, int n, const std::vector<int>& N_schedule,
                                              std::uint64_t samples, SeedSpec seed,
                                              const EstimateOptions& opts) {
  if (j < 2) throw std::invalid_argument("strict_inequality_report: j must be >= 2");
  StrictOrderingReport rep;
  rep.j = j;
  rep.lower_exact = (static_cast<double>(j) * j - 1.0) / 12.0;
  rep.upper_exact = (static_cast<double>(j + 1) * (j + 1) - 1.0) / 12.0;

  std::vector<EstimateRecord> mono, poly_j, poly_j1;
  std::uint64_t stream = seed.stream;
  for (int N : N_schedule) {
    Annulus a = Annulus::build(n, N);
    ArmQuery qm{j, SigmaClass::Mono, n, N};
    ArmQuery qp{j, SigmaClass::PolyOneWhite, n, N};
    ArmQuery qp1{j + 1, SigmaClass::PolyOneWhite, n, N};
    auto hits = count_joint(a, {qm, qp, qp1}, samples, SeedSpec{seed.master, stream}, opts);
    auto mk = [&](const ArmQuery& q, std::uint64_t h) {
      EstimateRecord r;
      r.query = q;
      r.samples = samples;
      r.hits = h;
      r.p_hat = static_cast<double>(h) / static_cast<double>(samples);
      r.std_err = binomial_stderr(h, samples);
      r.seed = SeedSpec{seed.master, stream};
      return r;
    };
    mono.push_back(mk(qm, hits[0]));
    poly_j.push_back(mk(qp, hits[1]));
    poly_j1.push_back(mk(qp1, hits[2]));
    stream += samples;
  }
  rep.mono_fit = fit_exponent(mono);
  rep.poly_j_fit = fit_exponent(poly_j);
  rep.poly_j1_fit = fit_exponent(poly_j1);
  rep.mono_ci_inside =
      rep.mono_fit.ci95.first > rep.lower_exact && rep.mono_fit.ci95.second < rep.upper_exact;
  return rep;
}

AprioriReport apriori_evaluate(const std::vector<EstimateRecord>& one_arm,
                               const std::vector<EstimateRecord>& mono) {
  if (one_arm.size() < 3) throw std::invalid_argument("apriori_evaluate: need >= 3 points");
  AprioriReport rep;
  rep.one_arm = one_arm;
  rep.mono = mono;
  rep.decreasing_beyond_3sigma = true;
  for (std::size_t i = 1; i < one_arm.size(); ++i) {
    double gap = one_arm[i - 1].p_hat - one_arm[i].p_hat;
    double se = std::sqrt(one_arm[i - 1].std_err * one_arm[i - 1].std_err +
                          one_arm[i].std_err * one_arm[i].std_err);
    if (gap <= 3.0 * se) rep.decreasing_beyond_3sigma = false;
  }
  rep.mono_positive = !mono.empty();
  for (const EstimateRecord& r : mono)
    if (r.hits == 0) rep.mono_positive = false;

  auto one_fit = fit_exponent(one_arm);
  rep.upper_eps = one_fit.alpha_hat;
  rep.upper_C = std::exp(one_fit.intercept);
  if (rep.mono_positive && mono.size() >= 3) {
    auto mono_fit = fit_exponent(mono);
    rep.lower_beta = mono_fit.alpha_hat;
    rep.lower_c = std::exp(mono_fit.intercept);
  }
  rep.ok = rep.decreasing_beyond_3sigma && rep.mono_positive;
  return rep;
}

AprioriReport apriori_check(int j, int n, const std::vector<int>& N_schedule,
                            std::uint64_t samples, SeedSpec seed, const EstimateOptions& opts) {
  std::vector<EstimateRecord> one_arm, mono;
  std::uint64_t stream = seed.stream;
  for (int N : N_schedule) {
    Annulus a = Annulus::build(n, N);
    ArmQuery q1{1, SigmaClass::OneBlack, n, N};
    ArmQuery qj{j, SigmaClass::Mono, n, N};
    auto hits = count_joint(a, {q1, qj}, samples, SeedSpec{seed.master, stream}, opts);
    auto mk = [&](const ArmQuery& q, std::uint64_t h) {
      EstimateRecord r;
      r.query = q;
      r.samples = samples;
      r.hits = h;
      r.p_hat = static_cast<double>(h) / static_cast<double>(samples);
      r.std_err = binomial_stderr(h, samples);
      r.seed = SeedSpec{seed.master, stream};
      return r;
    };
    one_arm.push_back(mk(q1, hits[0]));
    mono.push_back(mk(qj, hits[1]));
    stream += samples;
  }
  return apriori_evaluate(one_arm, mono);
}

}  // namespace perco
