#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ppreal/measure.hpp"
#include "ppreal/rng.hpp"
#include "ppreal/spec.hpp"

namespace ppr {

/// i.i.d. configuration draws from a finite measure by cumulative inversion.
class MeasureSampler {
public:
  explicit MeasureSampler(const FiniteMeasure& mu) : sites_(mu.sites()) {
    mu.require_unsigned();
    double total = mu.total();
    if (total <= 0) throw std::domain_error("cannot sample a null measure");
    cdf_.resize(mu.table_size());
    double acc = 0;
    for (Config eta = 0; eta < mu.table_size(); ++eta) {
      acc += std::max(0.0, mu.weight(eta)) / total;
      cdf_[eta] = acc;
    }
    cdf_.back() = 1.0;
  }

  int sites() const { return sites_; }

  Config draw(SplitMix64& rng) const {
    double u = rng.uniform();
    std::size_t lo = 0, hi = cdf_.size() - 1;
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (cdf_[mid] <= u)
        lo = mid + 1;
      else
        hi = mid;
    }
    return static_cast<Config>(lo);
  }

private:
  int sites_;
  std::vector<double> cdf_;
};

inline std::vector<Config> sample_measure(const FiniteMeasure& mu, std::size_t count,
                                          std::uint64_t seed) {
  MeasureSampler sampler(mu);
  SplitMix64 rng(seed);
  std::vector<Config> out(count);
  for (auto& c : out) c = sampler.draw(rng);
  return out;
}

// ---------------------------------------------------------------------------
// Estimation

struct LagEstimate {
  int lag;
  double estimate;   // ghat(lag)
  double stderr_;    // from the empirical variance of per-sample averages
  double target = 0;
  double z = 0;
};

struct EstimateReport {
  double rho_hat = 0;
  double rho_stderr = 0;
  double rho_target = 0;
  double rho_z = 0;
  std::vector<LagEstimate> lags;
  std::size_t sample_count = 0;
  std::uint64_t seed = 0;
};

namespace detail {

struct RunningMoments {
  double sum = 0, sum_sq = 0;
  std::size_t n = 0;
  void add(double x) {
    sum += x;
    sum_sq += x * x;
    ++n;
  }
  double mean() const { return n ? sum / n : 0; }
  double stderr_of_mean() const {
    if (n < 2) return 0;
    double m = mean();
    double var = (sum_sq - n * m * m) / (n - 1);
    return std::sqrt(std::max(0.0, var) / n);
  }
};

}  // namespace detail

/// Translation-averaged estimators of rho and g(r) from ring configurations.
/// Each sample contributes its spatial average; error bars come from the
/// spread across samples.
inline EstimateReport estimate_correlations(const std::vector<Config>& samples, int ring_size,
                                            int max_lag) {
  if (samples.empty()) throw std::invalid_argument("no samples");
  if (max_lag < 1 || max_lag > ring_size / 2)
    throw std::domain_error("max_lag must lie in 1..ring_size/2");
  detail::RunningMoments occ;
  std::vector<detail::RunningMoments> pair_mom(max_lag);
  for (Config eta : samples) {
    std::vector<int> bit(ring_size);
    for (int x = 0; x < ring_size; ++x) bit[x] = (eta >> x) & 1;
    double o = 0;
    for (int x = 0; x < ring_size; ++x) o += bit[x];
    occ.add(o / ring_size);
    for (int r = 1; r <= max_lag; ++r) {
      double s = 0;
      for (int x = 0; x < ring_size; ++x) s += bit[x] * bit[(x + r) % ring_size];
      pair_mom[r - 1].add(s / ring_size);
    }
  }
  EstimateReport rep;
  rep.sample_count = samples.size();
  rep.rho_hat = occ.mean();
  rep.rho_stderr = occ.stderr_of_mean();
  double rho2 = rep.rho_hat * rep.rho_hat;
  for (int r = 1; r <= max_lag; ++r) {
    LagEstimate le;
    le.lag = r;
    // <eta_0 eta_r> / rho^2, with the error bar of the pair moment
    le.estimate = rho2 > 0 ? pair_mom[r - 1].mean() / rho2 : 0;
    le.stderr_ = rho2 > 0 ? pair_mom[r - 1].stderr_of_mean() / rho2 : 0;
    rep.lags.push_back(le);
  }
  return rep;
}

/// Same estimators on long open chains (one or many), trimming max_lag sites
/// from each end so every site enters every lag estimate unbiasedly.
inline EstimateReport estimate_correlations_chain(
    const std::vector<std::vector<std::uint8_t>>& chains, int max_lag) {
  if (chains.empty()) throw std::invalid_argument("no samples");
  detail::RunningMoments occ;
  std::vector<detail::RunningMoments> pair_mom(max_lag);
  for (const auto& eta : chains) {
    int n = static_cast<int>(eta.size());
    if (n <= 4 * max_lag) throw std::domain_error("chain too short for requested lag");
    int lo = max_lag, hi = n - max_lag;  // trimmed bulk
    double o = 0;
    for (int x = lo; x < hi; ++x) o += eta[x];
    occ.add(o / (hi - lo));
    for (int r = 1; r <= max_lag; ++r) {
      double s = 0;
      for (int x = lo; x < hi - r; ++x) s += eta[x] * eta[x + r];
      pair_mom[r - 1].add(s / (hi - lo - r));
    }
  }
  EstimateReport rep;
  rep.sample_count = chains.size();
  rep.rho_hat = occ.mean();
  rep.rho_stderr = occ.stderr_of_mean();
  double rho2 = rep.rho_hat * rep.rho_hat;
  for (int r = 1; r <= max_lag; ++r) {
    LagEstimate le;
    le.lag = r;
    le.estimate = rho2 > 0 ? pair_mom[r - 1].mean() / rho2 : 0;
    le.stderr_ = rho2 > 0 ? pair_mom[r - 1].stderr_of_mean() / rho2 : 0;
    rep.lags.push_back(le);
  }
  return rep;
}

/// Fill in targets and z-scores from a translation-invariant spec; pass iff
/// every |z| <= 4 (the stochastic acceptance band).
inline bool compare(EstimateReport& rep, double rho_target,
                    const std::vector<double>& g_targets) {
  auto zscore = [](double est, double target, double se) {
    if (se > 0) return (est - target) / se;
    // degenerate error bar: agree exactly or fail loudly
    return std::abs(est - target) <= 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
  };
  rep.rho_target = rho_target;
  rep.rho_z = zscore(rep.rho_hat, rho_target, rep.rho_stderr);
  bool pass = std::abs(rep.rho_z) <= 4.0;
  for (auto& le : rep.lags) {
    if (le.lag <= static_cast<int>(g_targets.size())) le.target = g_targets[le.lag - 1];
    le.z = zscore(le.estimate, le.target, le.stderr_);
    pass = pass && std::abs(le.z) <= 4.0;
  }
  return pass;
}

inline bool compare(EstimateReport& rep, const CorrelationSpec& spec) {
  if (!spec.translation_invariant())
    throw std::invalid_argument("comparison targets need a translation-invariant spec");
  std::vector<double> g;
  for (const auto& le : rep.lags) g.push_back(spec.pair.g(Offset{le.lag}));
  return compare(rep, spec.rho1_at(0), g);
}

}  // namespace ppr
