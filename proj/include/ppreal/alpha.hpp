#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ppreal/bounds.hpp"
#include "ppreal/measure.hpp"
#include "ppreal/rng.hpp"
#include "ppreal/spec.hpp"

namespace ppr {

// One-dimensional family g(0)=0, g(+-1)=alpha, g=1 beyond: closed-form
// bound curves and the two explicit constructions of the appendix.

namespace detail {

inline void require_alpha(double alpha) {
  if (alpha < 0) throw std::domain_error("alpha must be nonnegative");
}

}  // namespace detail

/// Structure-function upper bound R_F.
inline double r_f(double alpha) {
  detail::require_alpha(alpha);
  return alpha <= 1.0 ? 1.0 / (3.0 - 2.0 * alpha) : 1.0 / (2.0 * alpha - 1.0);
}

/// Cluster-expansion (alpha <= 1) / Lee-Yang (alpha >= 1) lower bound r_A.
inline double r_a(double alpha) {
  detail::require_alpha(alpha);
  return alpha <= 1.0 ? 1.0 / (std::numbers::e * (3.0 - 2.0 * alpha))
                      : 1.0 / (alpha * alpha);
}

/// Density of the period-two superposition construction (alpha >= 1/2).
inline double r_s(double alpha) {
  if (alpha < 0.5)
    throw std::domain_error("superposition construction needs alpha >= 1/2");
  return alpha <= 1.0 ? 1.0 / (1.0 + std::sqrt(2.0 - 2.0 * alpha))
                      : 1.0 / (2.0 * alpha - 1.0);
}

/// Density of the Bernoulli-deletion construction (alpha <= 1).
inline double r_b(double alpha) {
  detail::require_alpha(alpha);
  if (alpha > 1.0) throw std::domain_error("deletion construction needs alpha <= 1");
  double s = 1.0 + std::sqrt(1.0 - alpha);
  return 1.0 / (s * s);
}

// ---------------------------------------------------------------------------
// Yamada upper bound R_Y: numerical scan over interval windows

struct YamadaRadius {
  double value;
  int binding_window;  // interval length whose constraint fails first
};

namespace detail {

/// Window variance of the alpha family: V_m = m rho (1-rho) + 2(m-1) rho^2 (alpha-1).
inline double alpha_window_variance(double alpha, double rho, int m) {
  return m * rho * (1.0 - rho) + 2.0 * (m - 1) * rho * rho * (alpha - 1.0);
}

inline int alpha_yamada_violation(double alpha, double rho, int max_window) {
  for (int m = 1; m <= max_window; ++m) {
    double mean = m * rho;
    double theta = mean - std::floor(mean);
    if (alpha_window_variance(alpha, rho, m) < theta * (1.0 - theta) - 1e-12) return m;
  }
  return 0;
}

}  // namespace detail

/// Smallest density at which some interval window violates the Yamada
/// condition: grid scan for the first failure, then bisection.
inline YamadaRadius r_y(double alpha, int max_window = 64, double tol = 1e-6) {
  detail::require_alpha(alpha);
  const int grid = 4096;
  double prev = 0.0;
  double fail_at = -1.0;
  for (int k = 1; k <= grid; ++k) {
    double rho = static_cast<double>(k) / grid;
    if (detail::alpha_yamada_violation(alpha, rho, max_window)) {
      fail_at = rho;
      break;
    }
    prev = rho;
  }
  if (fail_at < 0) return {1.0, 0};
  double lo = prev, hi = fail_at;
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    (detail::alpha_yamada_violation(alpha, mid, max_window) ? hi : lo) = mid;
  }
  return {lo, detail::alpha_yamada_violation(alpha, hi, max_window)};
}

// ---------------------------------------------------------------------------
// Superposition construction (alpha >= 1/2)

struct SuperpositionParams {
  double p, q;  // per-pair outcome probabilities; (1,1) gets 1 - 2p - q
};

inline SuperpositionParams superposition_params(double alpha) {
  if (alpha < 0.5)
    throw std::domain_error("superposition construction needs alpha >= 1/2");
  SuperpositionParams sp;
  if (alpha <= 1.0) {
    double s = std::sqrt(2.0 - 2.0 * alpha);
    sp.p = s / (1.0 + s);
    sp.q = 0.0;
  } else {
    sp.p = 0.0;
    sp.q = (2.0 * alpha - 2.0) / (2.0 * alpha - 1.0);
  }
  if (1.0 - 2.0 * sp.p - sp.q < -1e-15)
    throw std::domain_error("pair-outcome probabilities do not normalize");
  return sp;
}

/// Exact mixture over the two period-two pairings of the ring; each pair of
/// the chosen pairing is filled independently with
/// {(1,0): p, (0,1): p, (0,0): q, (1,1): 1-2p-q}.
inline FiniteMeasure superposition_measure(double alpha, int ring_size) {
  if (ring_size % 2 != 0 || ring_size < 4)
    throw std::invalid_argument("ring size must be even and at least 4");
  if (ring_size > 20) throw std::domain_error("exact measure capped at 20 sites");
  auto sp = superposition_params(alpha);
  double w11 = std::max(0.0, 1.0 - 2.0 * sp.p - sp.q);
  const double outcome_p[4] = {sp.q, sp.p, sp.p, w11};
  std::vector<double> w(std::size_t{1} << ring_size, 0.0);
  int half = ring_size / 2;
  for (int phase = 0; phase < 2; ++phase) {
    // depth-first over per-pair outcomes: bit0 = first site, bit1 = second
    auto rec = [&](auto&& self, int pair, Config cfg, double prob) -> void {
      if (pair == half) {
        w[cfg] += 0.5 * prob;
        return;
      }
      int a = (2 * pair + phase) % ring_size;
      int b = (2 * pair + 1 + phase) % ring_size;
      for (int o = 0; o < 4; ++o) {
        if (outcome_p[o] == 0.0) continue;
        Config c = cfg;
        if (o & 1) c |= Config{1} << a;
        if (o & 2) c |= Config{1} << b;
        self(self, pair + 1, c, prob * outcome_p[o]);
      }
    };
    rec(rec, 0, 0, 1.0);
  }
  return FiniteMeasure(ring_size, std::move(w));
}

/// One ring configuration drawn from the superposition measure.
inline std::vector<std::uint8_t> superposition_sample(double alpha, int ring_size,
                                                      SplitMix64& rng) {
  if (ring_size % 2 != 0 || ring_size < 4)
    throw std::invalid_argument("ring size must be even and at least 4");
  auto sp = superposition_params(alpha);
  double w11 = std::max(0.0, 1.0 - 2.0 * sp.p - sp.q);
  int phase = rng.bernoulli(0.5) ? 1 : 0;
  std::vector<std::uint8_t> eta(ring_size, 0);
  for (int pair = 0; pair < ring_size / 2; ++pair) {
    int a = (2 * pair + phase) % ring_size;
    int b = (2 * pair + 1 + phase) % ring_size;
    double u = rng.uniform();
    if (u < sp.p) {
      eta[a] = 1;
    } else if (u < 2 * sp.p) {
      eta[b] = 1;
    } else if (u < 2 * sp.p + w11) {
      eta[a] = eta[b] = 1;
    }  // else (0,0)
  }
  return eta;
}

// ---------------------------------------------------------------------------
// Bernoulli-deletion construction (alpha <= 1)

struct BernoulliDeletion {
  double lambda;  // initial occupation probability
  double kappa;   // deletion probability
  double rho;     // resulting density = lambda (1 - lambda kappa) = r_B
  double g1;      // = alpha
  double g2 = 1.0;
};

inline BernoulliDeletion bernoulli_deletion(double alpha) {
  detail::require_alpha(alpha);
  if (alpha > 1.0) throw std::domain_error("deletion construction needs alpha <= 1");
  BernoulliDeletion bd;
  bd.kappa = std::sqrt(1.0 - alpha);
  bd.lambda = 1.0 / (1.0 + bd.kappa);
  bd.rho = bd.lambda * (1.0 - bd.lambda * bd.kappa);
  bd.g1 = alpha;
  return bd;
}

/// Two-stage sampler on a length-n segment: Bernoulli(lambda) field, then
/// each occupied site deletes the particle on its left neighbor with
/// probability kappa.  Deletion coins are checked against the initial field.
inline std::vector<std::uint8_t> bernoulli_deletion_sample(double alpha, int n,
                                                           SplitMix64& rng) {
  auto bd = bernoulli_deletion(alpha);
  std::vector<std::uint8_t> initial(n);
  for (int i = 0; i < n; ++i) initial[i] = rng.bernoulli(bd.lambda) ? 1 : 0;
  std::vector<std::uint8_t> eta(initial);
  for (int i = 0; i + 1 < n; ++i)
    if (initial[i] && initial[i + 1] && rng.bernoulli(bd.kappa)) eta[i] = 0;
  return eta;
}

// ---------------------------------------------------------------------------
// Continuum hard-core constants and coarse-graining

struct ContinuumBounds {
  double lower;  // e^{-1} (2^d v_d)^{-1}
  double upper;  // (2^d v_d)^{-1}
  std::optional<double> refined_lower;   // hidden-Markov construction, d=1
  std::optional<double> cluster_lower;   // improved cluster expansion
  bool upper_strict = false;             // d=1: rho_bar(1) < 1/2 is known
};

inline ContinuumBounds continuum_hardcore_bounds(int d) {
  if (d < 1) throw std::invalid_argument("dimension must be positive");
  double cap = 1.0 / (std::pow(2.0, d) * sphere_volume(d));
  ContinuumBounds cb;
  cb.lower = cap / std::numbers::e;
  cb.upper = cap;
  if (d == 1) {
    cb.refined_lower = 0.395;
    cb.cluster_lower = 0.4;
    cb.upper_strict = true;
  } else if (d == 2) {
    cb.cluster_lower = 0.5107;
  }
  return cb;
}

/// Refined two-sided bounds for the alpha = 0 lattice problem.
inline double alpha0_refined_lower() { return 0.265; }
inline double alpha0_refined_upper() { return (326.0 - std::sqrt(3115.0)) / 822.0; }

struct CoarseGrain {
  double density;  // rho / n
  PairFunction g;  // g(j) = 0 (|j|<n), 1/2 (|j|=n), 1 beyond
};

/// Lattice spec obtained by binning the continuum hard-core process at
/// spacing 1/n; n = 1 recovers the alpha = 1/2 problem at density rho.
inline CoarseGrain coarse_grain(int n, double rho) {
  if (n < 1) throw std::invalid_argument("spacing must be at least 1");
  if (rho < 0) throw std::invalid_argument("density must be nonnegative");
  std::map<Offset, double> t;
  for (int j = 0; j < n; ++j) t[{j}] = 0.0;
  t[{n}] = 0.5;
  return {rho / n, PairFunction::translation_invariant(std::move(t))};
}

// ---------------------------------------------------------------------------
// Bound table (the Figure 1 data)

struct BoundsRow {
  double alpha;
  double rf, ry, ra;
  std::optional<double> rs;  // alpha >= 1/2
  std::optional<double> rb;  // alpha <= 1
};

inline std::vector<BoundsRow> bounds_table(const std::vector<double>& alphas,
                                           int max_window = 64, double tol = 1e-6) {
  std::vector<BoundsRow> rows;
  for (double a : alphas) {
    BoundsRow r;
    r.alpha = a;
    r.rf = r_f(a);
    r.ry = r_y(a, max_window, tol).value;
    r.ra = r_a(a);
    if (a >= 0.5) r.rs = r_s(a);
    if (a <= 1.0) r.rb = r_b(a);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace ppr
