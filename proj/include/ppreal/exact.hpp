#pragma once

#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ppreal/conditions.hpp"
#include "ppreal/measure.hpp"
#include "ppreal/simplex.hpp"
#include "ppreal/spec.hpp"

namespace ppr {

/// Callable giving rho_{|S|}(S) for a site subset S; rho_0(empty) = 1.
using CorrelationOracle = std::function<double(Config)>;

/// Ansatz correlations rho_n = prod rho_1 . prod_{i<j} G_2.
inline CorrelationOracle pair_ansatz_oracle(const CorrelationSpec& spec) {
  return [spec](Config s) {
    double v = 1.0;
    int n = spec.domain.size();
    for (int x = 0; x < n; ++x) {
      if (!(s & (Config{1} << x))) continue;
      v *= spec.rho1_at(x);
      for (int y = x + 1; y < n; ++y)
        if (s & (Config{1} << y)) v *= spec.pair.g2(spec.domain, x, y);
    }
    return v;
  };
}

/// Triplet ansatz: the pair ansatz times prod_{i<j<k} gtilde3.
inline CorrelationOracle triplet_ansatz_oracle(const CorrelationSpec& spec) {
  if (!spec.triplet) throw std::invalid_argument("spec carries no triplet function");
  auto pair_part = pair_ansatz_oracle(spec);
  return [spec, pair_part](Config s) {
    double v = pair_part(s);
    if (v == 0.0) return v;
    std::vector<int> sites;
    for (int x = 0; x < spec.domain.size(); ++x)
      if (s & (Config{1} << x)) sites.push_back(x);
    for (size_t i = 0; i < sites.size(); ++i)
      for (size_t j = i + 1; j < sites.size(); ++j)
        for (size_t k = j + 1; k < sites.size(); ++k)
          v *= spec.triplet->value(spec.domain, sites[i], sites[j], sites[k]);
    return v;
  };
}

/// Correlations measured from an explicit finite measure.
inline CorrelationOracle measure_oracle(const FiniteMeasure& mu) {
  auto table = subset_correlations(mu);
  return [table](Config s) { return table[s]; };
}

/// Inclusion-exclusion measure: p(xi) = sum_{gamma in complement}
/// (-1)^{|gamma|} rho(xi + gamma), evaluated for all xi by an alternating
/// superset transform.  The result always sums to 1; it is a probability
/// measure only when every weight is nonnegative.
inline FiniteMeasure inclusion_exclusion_measure(const CorrelationOracle& oracle,
                                                 const LatticeDomain& dom) {
  dom.require_enumerable(20);
  int n = dom.size();
  std::vector<double> p(std::size_t{1} << n);
  for (Config s = 0; s < p.size(); ++s) p[s] = oracle(s);
  for (int b = 0; b < n; ++b) {
    Config bit = Config{1} << b;
    for (Config s = p.size() - 1; s + 1 > 0; --s)
      if (!(s & bit)) p[s] -= p[s | bit];
  }
  return FiniteMeasure(n, std::move(p));
}

// ---------------------------------------------------------------------------
// Linear feasibility

/// Configurations compatible with the hard-core pattern of G2 (Theorem 6.1's
/// support set): eta(x) eta(y) = 0 whenever G2(x,y) = 0.
inline std::vector<Config> support_configs(const CorrelationSpec& spec) {
  int n = spec.domain.size();
  std::vector<Config> forbid(n, 0);
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (spec.pair.g2(spec.domain, x, y) == 0.0) {
        forbid[x] |= Config{1} << y;
        forbid[y] |= Config{1} << x;
      }
  std::vector<Config> out;
  for (Config eta = 0; eta < (Config{1} << n); ++eta) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      if ((eta & (Config{1} << x)) && (eta & forbid[x])) ok = false;
    if (ok) out.push_back(eta);
  }
  return out;
}

struct FeasibilityOutcome {
  bool feasible;
  bool at_tolerance = false;  // feasible only within the solver tolerance band
  std::optional<FiniteMeasure> measure;
  std::optional<PairingCertificate> certificate;
};

namespace detail {

struct ConstraintSystem {
  std::vector<std::vector<double>> a;  // rows: normalization, sites, allowed pairs
  std::vector<double> b;
  std::vector<Config> columns;                // config per LP column
  std::vector<std::pair<int, int>> pair_rows; // site pair per pair row
};

inline ConstraintSystem realization_constraints(const CorrelationSpec& spec) {
  int n = spec.domain.size();
  ConstraintSystem sys;
  sys.columns = support_configs(spec);
  int cols = static_cast<int>(sys.columns.size());
  sys.a.emplace_back(cols, 1.0);
  sys.b.push_back(1.0);
  for (int x = 0; x < n; ++x) {
    std::vector<double> row(cols, 0.0);
    for (int c = 0; c < cols; ++c)
      if (sys.columns[c] & (Config{1} << x)) row[c] = 1.0;
    sys.a.push_back(std::move(row));
    sys.b.push_back(spec.rho1_at(x));
  }
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      if (spec.pair.g2(spec.domain, x, y) == 0.0) continue;  // row trivially 0=0
      Config mask = (Config{1} << x) | (Config{1} << y);
      std::vector<double> row(cols, 0.0);
      for (int c = 0; c < cols; ++c)
        if ((sys.columns[c] & mask) == mask) row[c] = 1.0;
      sys.a.push_back(std::move(row));
      sys.b.push_back(spec.rho2(x, y));
      sys.pair_rows.emplace_back(x, y);
    }
  return sys;
}

inline PairingCertificate certificate_from_farkas(const CorrelationSpec& spec,
                                                  const ConstraintSystem& sys,
                                                  const std::vector<double>& y) {
  int n = spec.domain.size();
  PairingCertificate cert;
  cert.f0 = y[0];
  cert.f1.assign(n, 0.0);
  for (int x = 0; x < n; ++x) cert.f1[x] = y[1 + x];
  cert.f2.assign(n, std::vector<double>(n, 0.0));
  for (size_t k = 0; k < sys.pair_rows.size(); ++k) {
    auto [x, yy] = sys.pair_rows[k];
    cert.f2[x][yy] = cert.f2[yy][x] = 0.5 * y[1 + n + k];
  }
  // Forbidden pairs carry no LP row and rho2 = 0 there, so a positive boost
  // keeps the certificate admissible on configurations outside the support
  // without changing the pairing value.
  double budget = std::abs(cert.f0);
  for (int x = 0; x < n; ++x) budget += std::abs(cert.f1[x]);
  for (int x = 0; x < n; ++x)
    for (int yy = x + 1; yy < n; ++yy) budget += 2.0 * std::abs(cert.f2[x][yy]);
  double boost = 0.5 * budget + 1.0;
  for (int x = 0; x < n; ++x)
    for (int yy = x + 1; yy < n; ++yy)
      if (spec.pair.g2(spec.domain, x, yy) == 0.0) {
        cert.f2[x][yy] += boost;
        cert.f2[yy][x] += boost;
      }
  return cert;
}

inline FiniteMeasure measure_from_columns(const CorrelationSpec& spec,
                                          const ConstraintSystem& sys,
                                          const std::vector<double>& x) {
  std::vector<double> w(std::size_t{1} << spec.domain.size(), 0.0);
  for (size_t c = 0; c < sys.columns.size(); ++c) w[sys.columns[c]] = x[c];
  return FiniteMeasure(spec.domain.size(), std::move(w));
}

}  // namespace detail

/// Decide realizability of (rho1, G2) on the finite domain by linear
/// programming over configuration weights; on failure the Farkas dual is
/// returned as an admissible pairing certificate with negative value.
inline FeasibilityOutcome lp_feasible(const CorrelationSpec& spec) {
  spec.domain.require_enumerable(16);
  auto sys = detail::realization_constraints(spec);
  SimplexSolver solver(sys.a, sys.b);
  auto res = solver.feasible();
  FeasibilityOutcome out;
  out.feasible = res.feasible;
  if (res.feasible) {
    auto mu = detail::measure_from_columns(spec, sys, res.x);
    // residual against the constraints decides the at-tolerance flag
    double resid = 0;
    for (size_t i = 0; i < sys.a.size(); ++i) {
      double s = -sys.b[i];
      for (size_t c = 0; c < sys.columns.size(); ++c) s += sys.a[i][c] * res.x[c];
      resid = std::max(resid, std::abs(s));
    }
    out.at_tolerance = resid > 1e-12;
    out.measure = std::move(mu);
  } else {
    out.certificate = detail::certificate_from_farkas(spec, sys, res.farkas);
  }
  return out;
}

/// Bisect the uniform density at which lp_feasible flips; returns the
/// bracketing interval [feasible, infeasible] of width <= tol.
inline std::pair<double, double> rho_threshold_exact(const PairFunction& g,
                                                     const LatticeDomain& dom, double tol) {
  auto feasible_at = [&](double rho) {
    return lp_feasible(CorrelationSpec::uniform(dom, rho, g)).feasible;
  };
  double lo = 0.0, hi = 1.0;
  if (feasible_at(1.0)) return {1.0, 1.0};
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    (feasible_at(mid) ? lo : hi) = mid;
  }
  return {lo, hi};
}

// ---------------------------------------------------------------------------
// Interior perturbation (Theorem 6.1 construction)

/// Raise all weights above 2 particles by epsilon and re-solve the small
/// configurations from the constraint system, which is upper triangular with
/// unit diagonal; epsilon is halved until every support weight is positive.
inline FiniteMeasure interior_measure(const FiniteMeasure& mu, const CorrelationSpec& spec,
                                      double epsilon) {
  mu.require_unsigned();
  if (epsilon == 0.0) return mu;
  int n = spec.domain.size();
  auto support = support_configs(spec);
  for (Config eta : support)
    if (particle_count(eta) <= 2 && mu.weight(eta) <= 0.0)
      throw std::domain_error(
          "interior construction needs positive mass on all small support configurations");
  for (int halving = 0; halving < 60; ++halving, epsilon *= 0.5) {
    std::vector<double> w(std::size_t{1} << n, 0.0);
    for (Config eta : support)
      if (particle_count(eta) > 2) w[eta] = mu.weight(eta) + epsilon;
    bool ok = true;
    // pairs, then singles, then the empty configuration
    for (Config eta : support) {
      if (particle_count(eta) != 2) continue;
      double s = 0;
      for (Config tau : support)
        if (particle_count(tau) > 2 && (tau & eta) == eta) s += w[tau];
      int x = std::countr_zero(eta);
      int y = std::countr_zero(eta & (eta - 1));
      w[eta] = spec.rho2(x, y) - s;
      if (w[eta] <= 0.0) ok = false;
    }
    for (int x = 0; x < n && ok; ++x) {
      Config bit = Config{1} << x;
      double s = 0;
      for (Config tau : support)
        if (particle_count(tau) >= 2 && (tau & bit)) s += w[tau];
      w[bit] = spec.rho1_at(x) - s;
      if (w[bit] <= 0.0) ok = false;
    }
    if (ok) {
      double s = 0;
      for (Config tau : support)
        if (tau != 0) s += w[tau];
      w[0] = 1.0 - s;
      if (w[0] <= 0.0) ok = false;
    }
    if (ok) return FiniteMeasure(n, std::move(w));
  }
  throw std::domain_error(
      "no admissible epsilon after 60 halvings; the spec sits on the feasibility boundary");
}

// ---------------------------------------------------------------------------
// Maximum-entropy 2-Gibbsian solver

/// One- and two-body potentials of the entropy-maximizing measure.
/// std::nullopt marks a +infinity entry (rho1 = 0 site or G2 = 0 pair).
struct PairPotentials {
  std::vector<std::optional<double>> phi1;
  std::vector<std::vector<std::optional<double>>> phi2;
  double log_z = 0;
};

struct infeasible_error : std::runtime_error {
  explicit infeasible_error(PairingCertificate c)
      : std::runtime_error("spec is not realizable; Farkas certificate attached"),
        certificate(std::move(c)) {}
  PairingCertificate certificate;
};

struct boundary_error : std::runtime_error {
  explicit boundary_error(std::string constraint)
      : std::runtime_error("spec has no interior realization; binding constraint: " + constraint),
        binding_constraint(constraint) {}
  std::string binding_constraint;
};

namespace detail {

inline void solve_linear(std::vector<std::vector<double>> a, std::vector<double>& rhs) {
  int n = static_cast<int>(a.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    std::swap(a[col], a[piv]);
    std::swap(rhs[col], rhs[piv]);
    double d = a[col][col];
    if (std::abs(d) < 1e-300) throw std::runtime_error("singular Newton system");
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      double f = a[r][col] / d;
      if (f == 0.0) continue;
      for (int c2 = col; c2 < n; ++c2) a[r][c2] -= f * a[col][c2];
      rhs[r] -= f * rhs[col];
    }
  }
  for (int i = 0; i < n; ++i) rhs[i] /= a[i][i];
}

/// A realizing measure with strictly positive weight on every support
/// configuration with at most two particles: the average of per-configuration
/// weight-maximizing LP solutions.  Throws boundary_error when some small
/// configuration is forced to zero weight by the constraints.
inline FiniteMeasure positive_small_realization(const CorrelationSpec& spec,
                                                const ConstraintSystem& sys) {
  int n = spec.domain.size();
  std::vector<double> acc(std::size_t{1} << n, 0.0);
  int count = 0;
  for (size_t target = 0; target < sys.columns.size(); ++target) {
    Config eta = sys.columns[target];
    if (particle_count(eta) > 2) continue;
    // skip configurations that cannot carry weight for trivial reasons
    bool dead = false;
    for (int x = 0; x < n; ++x)
      if ((eta & (Config{1} << x)) && spec.rho1_at(x) == 0.0) dead = true;
    std::vector<double> c(sys.columns.size(), 0.0);
    c[target] = 1.0;
    SimplexSolver solver(sys.a, sys.b);
    auto opt = solver.maximize(c);
    if (!opt.feasible) throw std::runtime_error("feasibility lost during interior probe");
    if (!dead && opt.value <= 1e-12) {
      std::string what = eta == 0 ? "empty configuration" : "configuration {";
      if (eta != 0) {
        for (int x = 0; x < n; ++x)
          if (eta & (Config{1} << x)) what += std::to_string(x) + ",";
        what.back() = '}';
      }
      throw boundary_error(what + " carries zero weight in every realizing measure");
    }
    for (size_t k = 0; k < sys.columns.size(); ++k) acc[sys.columns[k]] += opt.x[k];
    ++count;
  }
  for (double& w : acc) w /= count;
  return FiniteMeasure(n, std::move(acc));
}

}  // namespace detail

/// Entropy-maximizing 2-Gibbsian realization on the support set of G2.
/// Damped Newton ascent of the strictly concave dual, initialized at the
/// independent fit; stops at gradient sup-norm 1e-10 or 500 iterations.
inline std::pair<FiniteMeasure, PairPotentials> maxent_gibbs(const CorrelationSpec& spec) {
  spec.domain.require_enumerable(16);
  int n = spec.domain.size();

  auto feas = lp_feasible(spec);
  if (!feas.feasible) throw infeasible_error(*feas.certificate);
  {
    auto sys = detail::realization_constraints(spec);
    auto positive = detail::positive_small_realization(spec, sys);
    interior_measure(positive, spec, 1e-4);  // throws when no interior exists
  }

  std::vector<int> active;
  for (int x = 0; x < n; ++x)
    if (spec.rho1_at(x) > 0) active.push_back(x);
  int na = static_cast<int>(active.size());
  std::vector<std::pair<int, int>> pairs;  // indices into `active`
  for (int i = 0; i < na; ++i)
    for (int j = i + 1; j < na; ++j)
      if (spec.pair.g2(spec.domain, active[i], active[j]) > 0.0) pairs.emplace_back(i, j);
  int m = na + static_cast<int>(pairs.size());

  // valid configurations over active sites
  std::vector<Config> forbid(na, 0);
  for (int i = 0; i < na; ++i)
    for (int j = i + 1; j < na; ++j)
      if (spec.pair.g2(spec.domain, active[i], active[j]) == 0.0) {
        forbid[i] |= Config{1} << j;
        forbid[j] |= Config{1} << i;
      }
  std::vector<Config> configs;
  for (Config eta = 0; eta < (Config{1} << na); ++eta) {
    bool ok = true;
    for (int i = 0; i < na && ok; ++i)
      if ((eta & (Config{1} << i)) && (eta & forbid[i])) ok = false;
    if (ok) configs.push_back(eta);
  }

  std::vector<double> target(m);
  for (int i = 0; i < na; ++i) target[i] = spec.rho1_at(active[i]);
  for (size_t k = 0; k < pairs.size(); ++k)
    target[na + k] = spec.rho2(active[pairs[k].first], active[pairs[k].second]);

  // phi packs phi1 over active sites then phi2 over allowed pairs
  std::vector<double> phi(m, 0.0);
  for (int i = 0; i < na; ++i)
    phi[i] = std::log((1.0 - target[i]) / target[i]);

  auto features_of = [&](Config eta, std::vector<int>& feat) {
    feat.clear();
    for (int i = 0; i < na; ++i)
      if (eta & (Config{1} << i)) feat.push_back(i);
    int occ = static_cast<int>(feat.size());
    for (size_t k = 0; k < pairs.size(); ++k) {
      Config mask = (Config{1} << pairs[k].first) | (Config{1} << pairs[k].second);
      if ((eta & mask) == mask) feat.push_back(na + static_cast<int>(k));
    }
    return occ;
  };

  auto dual_parts = [&](const std::vector<double>& p, std::vector<double>* mean,
                        std::vector<std::vector<double>>* cov) {
    double zmax = -std::numeric_limits<double>::infinity();
    std::vector<double> energy(configs.size());
    std::vector<int> feat;
    for (size_t c = 0; c < configs.size(); ++c) {
      features_of(configs[c], feat);
      double e = 0;
      for (int f : feat) e += p[f];
      energy[c] = -e;
      zmax = std::max(zmax, -e);
    }
    double z = 0;
    std::vector<double> mu(m, 0.0);
    std::vector<std::vector<double>> second;
    if (cov) second.assign(m, std::vector<double>(m, 0.0));
    for (size_t c = 0; c < configs.size(); ++c) {
      double w = std::exp(energy[c] - zmax);
      z += w;
      features_of(configs[c], feat);
      for (int f : feat) mu[f] += w;
      if (cov)
        for (size_t a = 0; a < feat.size(); ++a)
          for (size_t b = a; b < feat.size(); ++b) second[feat[a]][feat[b]] += w;
    }
    for (double& v : mu) v /= z;
    if (mean) *mean = mu;
    if (cov) {
      cov->assign(m, std::vector<double>(m, 0.0));
      for (int a = 0; a < m; ++a)
        for (int b = a; b < m; ++b) {
          double v = second[a][b] / z - mu[a] * mu[b];
          (*cov)[a][b] = v;
          (*cov)[b][a] = v;
        }
    }
    return std::log(z) + zmax;  // log partition function
  };

  auto dual_value = [&](const std::vector<double>& p) {
    double logz = dual_parts(p, nullptr, nullptr);
    double v = -logz;
    for (int f = 0; f < m; ++f) v -= p[f] * target[f];
    return v;
  };

  double log_z = 0;
  bool converged = false;
  for (int iter = 0; iter < 500; ++iter) {
    std::vector<double> mean;
    std::vector<std::vector<double>> cov;
    log_z = dual_parts(phi, &mean, &cov);
    std::vector<double> grad(m);
    double gnorm = 0;
    for (int f = 0; f < m; ++f) {
      grad[f] = mean[f] - target[f];
      gnorm = std::max(gnorm, std::abs(grad[f]));
    }
    if (gnorm <= 1e-10) {
      converged = true;
      break;
    }
    for (int f = 0; f < m; ++f) cov[f][f] += 1e-12;
    std::vector<double> step = grad;
    detail::solve_linear(cov, step);
    double base = dual_value(phi);
    double s = 1.0;
    std::vector<double> trial(m);
    bool moved = false;
    for (int halve = 0; halve < 50; ++halve, s *= 0.5) {
      for (int f = 0; f < m; ++f) trial[f] = phi[f] + s * step[f];
      if (dual_value(trial) > base) {
        phi = trial;
        moved = true;
        break;
      }
    }
    if (!moved) break;  // stalled at numerical precision
  }
  {
    std::vector<double> mean;
    log_z = dual_parts(phi, &mean, nullptr);
    double gnorm = 0;
    for (int f = 0; f < m; ++f) gnorm = std::max(gnorm, std::abs(mean[f] - target[f]));
    if (!converged && gnorm > 1e-8)
      throw std::runtime_error("maxent solver did not converge within 500 iterations");
  }

  // assemble the measure on the full domain
  std::vector<double> w(std::size_t{1} << n, 0.0);
  {
    std::vector<int> feat;
    for (Config eta : configs) {
      features_of(eta, feat);
      double e = 0;
      for (int f : feat) e += phi[f];
      Config full = 0;
      for (int i = 0; i < na; ++i)
        if (eta & (Config{1} << i)) full |= Config{1} << active[i];
      w[full] = std::exp(-e - log_z);
    }
  }

  PairPotentials pot;
  pot.phi1.assign(n, std::nullopt);
  pot.phi2.assign(n, std::vector<std::optional<double>>(n, std::nullopt));
  for (int i = 0; i < na; ++i) pot.phi1[active[i]] = phi[i];
  for (size_t k = 0; k < pairs.size(); ++k) {
    int x = active[pairs[k].first], y = active[pairs[k].second];
    pot.phi2[x][y] = pot.phi2[y][x] = phi[na + k];
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (x != y && spec.rho1_at(x) > 0 && spec.rho1_at(y) > 0 &&
          spec.pair.g2(spec.domain, x, y) == 0.0)
        pot.phi2[x][y] = std::nullopt;  // explicit forbidden mark
  pot.log_z = log_z;
  return {FiniteMeasure(n, std::move(w)), pot};
}

}  // namespace ppr
