#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "ppreal/measure.hpp"
#include "ppreal/spec.hpp"

namespace ppr {

// ---------------------------------------------------------------------------
// Pointwise nonnegativity

struct PointwiseIssue {
  std::string what;  // e.g. "rho1" or "rho2"
  int x = -1, y = -1;
  double value = 0;
};

/// Flags any negative rho_1 or rho_2 entry.
inline std::vector<PointwiseIssue> check_pointwise(const CorrelationSpec& spec) {
  std::vector<PointwiseIssue> issues;
  int n = spec.domain.size();
  for (int x = 0; x < n; ++x)
    if (spec.rho1_at(x) < 0) issues.push_back({"rho1", x, -1, spec.rho1_at(x)});
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      double r2 = spec.rho2(x, y);
      if (r2 < 0) issues.push_back({"rho2", x, y, r2});
    }
  return issues;
}

// ---------------------------------------------------------------------------
// Covariance matrix and PSD test

/// S(x,y) = rho2(x,y) + rho1(x) delta_{xy} - rho1(x) rho1(y).
inline std::vector<std::vector<double>> covariance_matrix(const CorrelationSpec& spec) {
  int n = spec.domain.size();
  std::vector<std::vector<double>> s(n, std::vector<double>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      double v = spec.rho2(x, y) - spec.rho1_at(x) * spec.rho1_at(y);
      if (x == y) v += spec.rho1_at(x);
      s[x][y] = v;
    }
  return s;
}

/// Smallest eigenvalue of a symmetric matrix by cyclic Jacobi sweeps.
inline double min_eigenvalue_symmetric(std::vector<std::vector<double>> a) {
  int n = static_cast<int>(a.size());
  if (n == 0) return 0;
  if (n == 1) return a[0][0];
  const int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-26) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = a[p][q];
        if (std::abs(apq) < 1e-18) continue;
        double theta = (a[q][q] - a[p][p]) / (2 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  double m = a[0][0];
  for (int k = 1; k < n; ++k) m = std::min(m, a[k][k]);
  return m;
}

struct PsdReport {
  double min_eigenvalue;
  bool pass;
};

/// PSD test of the covariance matrix; pass iff min eigenvalue >= -1e-9.
inline PsdReport covariance_psd(const CorrelationSpec& spec) {
  if (spec.domain.size() > 512) throw std::domain_error("PSD test capped at 512 sites");
  double m = min_eigenvalue_symmetric(covariance_matrix(spec));
  return {m, m >= -1e-9};
}

// ---------------------------------------------------------------------------
// Structure function on a periodic translation-invariant domain

struct StructureFunctionEntry {
  std::vector<int> mode;  // integer dual-lattice mode m; k = 2 pi m / L
  double value;
};

struct StructureFunctionReport {
  std::vector<StructureFunctionEntry> table;
  double min_value;
  std::vector<int> argmin;
  bool pass;  // min >= -1e-9
};

/// S_hat(k) = rho + rho^2 sum_r e^{ik.r} (g(r)-1), direct DFT over all sites
/// of the periodic domain.  Imaginary parts cancel by symmetry and are
/// checked against 1e-10 before being dropped.
inline StructureFunctionReport structure_function(const CorrelationSpec& spec) {
  if (!spec.translation_invariant() || !spec.domain.periodic())
    throw std::domain_error(
        "structure function needs a translation-invariant spec on a periodic domain; "
        "use covariance_psd instead");
  if (spec.domain.size() > 4096) throw std::domain_error("structure function capped at 4096 sites");
  const auto& dom = spec.domain;
  double rho = spec.rho1_at(0);
  int n = dom.size();
  int d = dom.dimension();
  // deviations g(r)-1 collected once per site offset from the origin
  std::vector<double> dev(n);
  for (int r = 0; r < n; ++r) dev[r] = spec.pair.g2(dom, 0, r) - 1.0;
  dev[0] = -1.0;  // g(0)=0
  StructureFunctionReport rep;
  rep.min_value = std::numeric_limits<double>::infinity();
  for (int mode = 0; mode < n; ++mode) {
    auto mc = dom.coordinates(mode);
    std::complex<double> acc = 0;
    for (int r = 0; r < n; ++r) {
      auto rc = dom.coordinates(r);
      double phase = 0;
      for (int k = 0; k < d; ++k)
        phase += 2.0 * std::numbers::pi * mc[k] * rc[k] / dom.extents()[k];
      acc += std::polar(dev[r], phase);
    }
    if (std::abs(acc.imag()) > 1e-10 * (1.0 + std::abs(acc.real())))
      throw std::runtime_error("structure function imaginary part exceeds tolerance");
    double val = rho + rho * rho * acc.real();
    rep.table.push_back({mc, val});
    if (val < rep.min_value) {
      rep.min_value = val;
      rep.argmin = mc;
    }
  }
  rep.pass = rep.min_value >= -1e-9;
  return rep;
}

// ---------------------------------------------------------------------------
// Yamada condition

struct YamadaWindow {
  std::vector<int> sites;
  double mean;
  double theta;     // fractional part of the mean
  double variance;  // from the prescribed correlations
  double bound;     // theta (1 - theta)
  bool pass;
};

struct YamadaReport {
  std::vector<YamadaWindow> windows;
  bool pass;
  int binding_window = -1;  // index of the tightest window
};

/// Variance of the particle number in a window, from the spec:
/// V = sum rho1 (1 - rho1) + sum_{x != y} (rho2 - rho1 rho1).
inline double window_variance(const CorrelationSpec& spec, const std::vector<int>& window) {
  double v = 0;
  for (int x : window) v += spec.rho1_at(x) * (1.0 - spec.rho1_at(x));
  for (int x : window)
    for (int y : window)
      if (x != y) v += spec.rho2(x, y) - spec.rho1_at(x) * spec.rho1_at(y);
  return v;
}

inline YamadaWindow yamada_window(const CorrelationSpec& spec, std::vector<int> window) {
  YamadaWindow w;
  w.mean = 0;
  for (int x : window) w.mean += spec.rho1_at(x);
  w.theta = w.mean - std::floor(w.mean);
  w.variance = window_variance(spec, window);
  w.bound = w.theta * (1.0 - w.theta);
  w.pass = w.variance >= w.bound - 1e-12;
  w.sites = std::move(window);
  return w;
}

/// Default windows: contiguous intervals (d=1) or boxes (d>1) up to a site cap.
inline std::vector<std::vector<int>> default_yamada_windows(const LatticeDomain& dom,
                                                            int max_sites = 64) {
  std::vector<std::vector<int>> windows;
  if (dom.dimension() == 1) {
    int L = dom.extents()[0];
    int longest = std::min(L, max_sites);
    for (int m = 1; m <= longest; ++m) {
      std::vector<int> w(m);
      for (int i = 0; i < m; ++i) w[i] = dom.periodic() ? i % L : i;
      windows.push_back(std::move(w));
    }
    return windows;
  }
  // boxes anchored at the origin, growing along each axis
  std::vector<int> shape(dom.dimension(), 1);
  auto box_sites = [&dom](const std::vector<int>& shp) {
    std::vector<std::vector<int>> coords{{}};
    for (size_t k = 0; k < shp.size(); ++k) {
      std::vector<std::vector<int>> next;
      for (auto& c : coords)
        for (int v = 0; v < shp[k]; ++v) {
          auto cc = c;
          cc.push_back(v);
          next.push_back(std::move(cc));
        }
      coords = std::move(next);
    }
    std::vector<int> sites;
    for (auto& c : coords) sites.push_back(dom.site(c));
    return sites;
  };
  for (;;) {
    auto w = box_sites(shape);
    if (static_cast<int>(w.size()) > max_sites) break;
    windows.push_back(std::move(w));
    // grow the smallest axis that still fits
    int axis = 0;
    for (int k = 1; k < dom.dimension(); ++k)
      if (shape[k] < shape[axis]) axis = k;
    if (shape[axis] >= dom.extents()[axis]) break;
    ++shape[axis];
  }
  return windows;
}

inline YamadaReport yamada_check(const CorrelationSpec& spec,
                                 const std::vector<std::vector<int>>& windows) {
  YamadaReport rep;
  rep.pass = true;
  double tightest = std::numeric_limits<double>::infinity();
  for (const auto& w : windows) {
    auto yw = yamada_window(spec, w);
    double slack = yw.variance - yw.bound;
    if (slack < tightest) {
      tightest = slack;
      rep.binding_window = static_cast<int>(rep.windows.size());
    }
    rep.pass = rep.pass && yw.pass;
    rep.windows.push_back(std::move(yw));
  }
  return rep;
}

inline YamadaReport yamada_check(const CorrelationSpec& spec) {
  return yamada_check(spec, default_yamada_windows(spec.domain));
}

// ---------------------------------------------------------------------------
// Pairing certificates (the general linear necessary condition)

/// Witness functions (f0, f1, f2).  Admissible when
/// sum_{i != j} f2(x_i,x_j) + sum_i f1(x_i) + f0 >= 0 for every configuration
/// of distinct sites; realizability then requires the pairing with
/// (rho_1, rho_2) to be nonnegative.
struct PairingCertificate {
  double f0 = 0;
  std::vector<double> f1;                // per site
  std::vector<std::vector<double>> f2;   // symmetric per pair, zero diagonal

  double value_on_config(Config eta) const {
    int n = static_cast<int>(f1.size());
    double v = f0;
    for (int x = 0; x < n; ++x) {
      if (!(eta & (Config{1} << x))) continue;
      v += f1[x];
      for (int y = x + 1; y < n; ++y)
        if (eta & (Config{1} << y)) v += 2.0 * f2[x][y];
    }
    return v;
  }
};

/// sum_{x != y} rho2 f2 + sum_x rho1 f1 + f0.
inline double pairing_value(const PairingCertificate& cert, const CorrelationSpec& spec) {
  int n = spec.domain.size();
  double v = cert.f0;
  for (int x = 0; x < n; ++x) {
    v += spec.rho1_at(x) * cert.f1[x];
    for (int y = x + 1; y < n; ++y) v += 2.0 * spec.rho2(x, y) * cert.f2[x][y];
  }
  return v;
}

/// Exhaustive admissibility check over all configurations.
inline bool verify_certificate(const PairingCertificate& cert, const LatticeDomain& dom,
                               double tol = 1e-9) {
  dom.require_enumerable(20);
  int n = dom.size();
  for (Config eta = 0; eta < (Config{1} << n); ++eta)
    if (cert.value_on_config(eta) < -tol) return false;
  return true;
}

}  // namespace ppr
