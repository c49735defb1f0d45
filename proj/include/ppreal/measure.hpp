#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "ppreal/lattice.hpp"
#include "ppreal/spec.hpp"

namespace ppr {

/// Weight per occupation configuration on a finite domain, indexed by bitmask.
/// Unsigned measures are probability measures; signed measures arise from the
/// inclusion-exclusion construction outside its radius of validity.
class FiniteMeasure {
public:
  FiniteMeasure(int sites, std::vector<double> weights)
      : sites_(sites), w_(std::move(weights)) {
    if (sites < 0 || sites > 24) throw std::invalid_argument("site count out of range");
    if (w_.size() != (std::size_t{1} << sites))
      throw std::invalid_argument("weight table must have 2^sites entries");
  }

  static FiniteMeasure point_mass(int sites, Config eta) {
    std::vector<double> w(std::size_t{1} << sites, 0.0);
    w[eta] = 1.0;
    return FiniteMeasure(sites, std::move(w));
  }

  static FiniteMeasure bernoulli(int sites, double rho) {
    std::vector<double> w(std::size_t{1} << sites);
    for (Config eta = 0; eta < w.size(); ++eta) {
      int n = particle_count(eta);
      w[eta] = std::pow(rho, n) * std::pow(1.0 - rho, sites - n);
    }
    return FiniteMeasure(sites, std::move(w));
  }

  int sites() const { return sites_; }
  std::size_t table_size() const { return w_.size(); }
  double weight(Config eta) const { return w_[eta]; }
  double& weight(Config eta) { return w_[eta]; }
  const std::vector<double>& weights() const { return w_; }

  double total() const {
    double s = 0;
    for (double x : w_) s += x;
    return s;
  }

  double min_weight() const {
    double m = w_[0];
    for (double x : w_) m = std::min(m, x);
    return m;
  }

  bool is_unsigned(double tol = 1e-12) const { return min_weight() >= -tol; }

  void require_unsigned(double tol = 1e-12) const {
    if (!is_unsigned(tol)) throw std::domain_error("operation requires an unsigned measure");
  }

  bool normalized(double tol = 1e-12) const { return std::abs(total() - 1.0) <= tol; }

private:
  int sites_;
  std::vector<double> w_;
};

/// rho_{|S|}(S) = sum of weights of configurations containing the subset S.
inline double correlation(const FiniteMeasure& mu, Config subset) {
  double s = 0;
  for (Config eta = 0; eta < mu.table_size(); ++eta)
    if ((eta & subset) == subset) s += mu.weight(eta);
  return s;
}

/// All subset correlations at once: out[S] = sum_{eta >= S} mu(eta).
/// Superset zeta transform, O(n 2^n); works for signed measures too.
inline std::vector<double> subset_correlations(const FiniteMeasure& mu) {
  std::vector<double> a(mu.weights());
  for (int b = 0; b < mu.sites(); ++b) {
    Config bit = Config{1} << b;
    for (Config s = 0; s < a.size(); ++s)
      if (!(s & bit)) a[s] += a[s | bit];
  }
  return a;
}

/// Table of rho_n over distinct n-tuples, keyed by site subset.  Values
/// vanish when arguments coincide, so the subset representation is complete.
inline std::map<Config, double> correlations_of_measure(const FiniteMeasure& mu, int n) {
  mu.require_unsigned();
  if (n < 1 || n > mu.sites()) throw std::domain_error("correlation order out of range");
  auto all = subset_correlations(mu);
  std::map<Config, double> out;
  for (Config s = 0; s < all.size(); ++s)
    if (particle_count(s) == n) out[s] = all[s];
  return out;
}

/// Exact push-forward under independent site-wise retention with per-site
/// probability p[x].
inline FiniteMeasure thin(const FiniteMeasure& mu, const std::vector<double>& p) {
  mu.require_unsigned();
  if (static_cast<int>(p.size()) != mu.sites())
    throw std::invalid_argument("retention arity does not match measure");
  for (double px : p)
    if (px < 0.0 || px > 1.0) throw std::domain_error("retention probabilities must lie in [0,1]");
  std::vector<double> w(mu.weights());
  for (int b = 0; b < mu.sites(); ++b) {
    Config bit = Config{1} << b;
    for (Config eta = 0; eta < w.size(); ++eta) {
      if (eta & bit) {
        w[eta & ~bit] += (1.0 - p[b]) * w[eta];
        w[eta] *= p[b];
      }
    }
  }
  return FiniteMeasure(mu.sites(), std::move(w));
}

inline FiniteMeasure thin(const FiniteMeasure& mu, double p) {
  return thin(mu, std::vector<double>(mu.sites(), p));
}

/// Gibbs-Shannon entropy in nats; 0 log 0 := 0.
inline double entropy(const FiniteMeasure& mu) {
  mu.require_unsigned();
  double s = 0;
  for (Config eta = 0; eta < mu.table_size(); ++eta) {
    double w = mu.weight(eta);
    if (w > 0) s -= w * std::log(w);
  }
  return s;
}

/// Kullback-Leibler divergence of mu from nu (both unsigned), in nats.
inline double kl_divergence(const FiniteMeasure& mu, const FiniteMeasure& nu) {
  mu.require_unsigned();
  nu.require_unsigned();
  double s = 0;
  for (Config eta = 0; eta < mu.table_size(); ++eta) {
    double p = mu.weight(eta);
    if (p > 0) {
      double q = nu.weight(eta);
      if (q <= 0) return std::numeric_limits<double>::infinity();
      s += p * std::log(p / q);
    }
  }
  return s;
}

}  // namespace ppr
