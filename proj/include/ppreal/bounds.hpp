#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ppreal/exact.hpp"
#include "ppreal/spec.hpp"

namespace ppr {

/// Stability constant b: the largest product prod_i g(x_i - x_0) over
/// admissible point sets {x_i} in the interaction window of x_0 (finite by
/// the hard core).  Equals 1 whenever g <= 1.
inline double stability_b(const PairFunction& g) {
  if (g.everywhere_leq_one()) return 1.0;
  std::vector<Offset> window;
  for (const auto& [r, v] : g.deviation())
    if (!is_origin(r) && v != 1.0) window.push_back(r);
  int w = static_cast<int>(window.size());
  if (w > 24) throw std::domain_error("interaction window exceeds 24 sites");
  double best = 1.0;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << w); ++mask) {
    double prod = 1.0;
    bool admissible = true;
    for (int i = 0; i < w && admissible; ++i) {
      if (!(mask & (std::uint32_t{1} << i))) continue;
      double gi = g.g(window[i]);
      if (gi == 0.0) {
        admissible = false;
        break;
      }
      prod *= gi;
      for (int j = i + 1; j < w; ++j) {
        if (!(mask & (std::uint32_t{1} << j))) continue;
        Offset diff(window[i].size());
        for (size_t k = 0; k < diff.size(); ++k) diff[k] = window[j][k] - window[i][k];
        if (g.g(diff) == 0.0) {
          admissible = false;
          break;
        }
      }
    }
    if (admissible) best = std::max(best, prod);
  }
  return best;
}

/// Cluster-expansion realizability radius R = (e b C(g))^{-1}.
inline double as_radius(double b, double c_of_g) {
  if (!(b >= 1.0) || !(c_of_g > 0.0))
    throw std::invalid_argument("need b >= 1 and C(g) > 0");
  return 1.0 / (std::numbers::e * b * c_of_g);
}

inline double as_radius(const PairFunction& g) { return as_radius(stability_b(g), g.c_of_g()); }

// ---------------------------------------------------------------------------
// Lee-Yang threshold (needs G2 >= 1 off the diagonal)

/// b = sup_x prod_{y != x} G2(x,y); the translation-invariant overload takes
/// the product over the deviation window (the tail contributes factors 1).
inline double leeyang_b(const PairFunction& g) {
  double b = 1.0;
  for (const auto& [r, v] : g.deviation()) {
    if (is_origin(r)) continue;
    if (v < 1.0) throw std::domain_error("Lee-Yang threshold needs G2 >= 1 off the diagonal");
    b *= v;
  }
  return b;
}

inline double leeyang_b(const PairFunction& g, const LatticeDomain& dom) {
  double b = 1.0;
  for (int x = 0; x < dom.size(); ++x) {
    double p = 1.0;
    for (int y = 0; y < dom.size(); ++y) {
      if (y == x) continue;
      double v = g.g2(dom, x, y);
      if (v < 1.0) throw std::domain_error("Lee-Yang threshold needs G2 >= 1 off the diagonal");
      p *= v;
    }
    b = std::max(b, p);
  }
  return b;
}

inline double leeyang_threshold(double b) { return 1.0 / b; }

/// Exact partition sum Xi^Lambda(xi) = sum_{gamma in Lambda \ xi}
/// (-rho)^{|gamma|} prod_{pairs in gamma} G2 prod_{r in xi, y in gamma} G2.
/// The realization identity is p(xi) = rho_{|xi|}(xi) Xi(xi).
inline double leeyang_xi(const CorrelationSpec& spec, Config xi) {
  spec.domain.require_enumerable(20);
  if (!spec.uniform_density())
    throw std::invalid_argument("partition sum defined for uniform density");
  double rho = spec.rho1.empty() ? 0.0 : spec.rho1[0];
  int n = spec.domain.size();
  Config avail = ((Config{1} << n) - 1) & ~xi;
  std::vector<int> free_sites;
  for (int x = 0; x < n; ++x)
    if (avail & (Config{1} << x)) free_sites.push_back(x);
  int f = static_cast<int>(free_sites.size());
  std::vector<int> xi_sites;
  for (int x = 0; x < n; ++x)
    if (xi & (Config{1} << x)) xi_sites.push_back(x);
  double total = 0;
  for (Config sub = 0; sub < (Config{1} << f); ++sub) {
    double term = 1.0;
    int k = 0;
    for (int i = 0; i < f; ++i) {
      if (!(sub & (Config{1} << i))) continue;
      ++k;
      int y = free_sites[i];
      for (int j = i + 1; j < f; ++j)
        if (sub & (Config{1} << j)) term *= spec.pair.g2(spec.domain, y, free_sites[j]);
      for (int r : xi_sites) term *= spec.pair.g2(spec.domain, r, y);
    }
    total += term * std::pow(-rho, k);
  }
  return total;
}

struct LeeYangScan {
  double min_xi;
  Config argmin;
  bool all_positive;
  double z_lower_bound;  // (rho b)^{-1}, the zero-freeness margin
};

/// Evaluate Xi over every xi and report the minimum and the zero-freeness
/// bound of Theorem 5.1.
inline LeeYangScan leeyang_scan(const CorrelationSpec& spec) {
  spec.domain.require_enumerable(16);
  int n = spec.domain.size();
  LeeYangScan s;
  s.min_xi = std::numeric_limits<double>::infinity();
  s.argmin = 0;
  for (Config xi = 0; xi < (Config{1} << n); ++xi) {
    double v = leeyang_xi(spec, xi);
    if (v < s.min_xi) {
      s.min_xi = v;
      s.argmin = xi;
    }
  }
  s.all_positive = s.min_xi > 0;
  double rho = spec.rho1.empty() ? 0.0 : spec.rho1[0];
  double b = leeyang_b(spec.pair, spec.domain);
  s.z_lower_bound =
      rho > 0 ? 1.0 / (rho * b) : std::numeric_limits<double>::infinity();
  return s;
}

// ---------------------------------------------------------------------------
// Triplet radius

struct StabilityConstants {
  double b = 1;                // pair stability
  double c = 0;                // C(g)
  double c3 = 0;               // C3(gtilde3)
  double hard_core_range = 1;  // D
  double triplet_range = 1;    // D3
  std::optional<double> b3;    // triplet stability; defaulted when absent
};

/// Volume of the d-sphere of diameter 1: pi^{d/2} / (2^d Gamma(d/2+1)).
inline double sphere_volume(int d) {
  if (d < 1) throw std::invalid_argument("dimension must be positive");
  return std::pow(std::numbers::pi, 0.5 * d) /
         (std::pow(2.0, d) * std::tgamma(0.5 * d + 1.0));
}

/// R3 = [e b b3 (1 + b C3)^{(3 D3/D)^{2d}} (C + v_d (D3/2)^d C3)]^{-1},
/// with b3 defaulting to (1 + C3)^{(3 D3/D)^{2d}}.  D3 < D is clamped to D
/// (the triplet factor is then identically 1).
inline double triplet_radius(StabilityConstants k, int d) {
  if (k.hard_core_range <= 0) throw std::invalid_argument("hard-core range must be positive");
  double d3 = std::max(k.triplet_range, k.hard_core_range);
  double exponent = std::pow(3.0 * d3 / k.hard_core_range, 2 * d);
  double b3 = k.b3 ? *k.b3 : std::pow(1.0 + k.c3, exponent);
  double denom = std::numbers::e * k.b * b3 * std::pow(1.0 + k.b * k.c3, exponent) *
                 (k.c + sphere_volume(d) * std::pow(0.5 * d3, d) * k.c3);
  return 1.0 / denom;
}

}  // namespace ppr
