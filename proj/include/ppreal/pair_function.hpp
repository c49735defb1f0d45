#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ppreal/lattice.hpp"

namespace ppr {

using Offset = std::vector<int>;

inline Offset negate(const Offset& r) {
  Offset m(r.size());
  for (size_t k = 0; k < r.size(); ++k) m[k] = -r[k];
  return m;
}

inline bool is_origin(const Offset& r) {
  return std::all_of(r.begin(), r.end(), [](int c) { return c == 0; });
}

inline double sup_norm(const Offset& r) {
  int m = 0;
  for (int c : r) m = std::max(m, std::abs(c));
  return m;
}

/// Prescribed pair correlation factor.  Translation-invariant g is stored as
/// a finite-support deviation table from the tail value 1; g(0)=0 is
/// mandatory on lattices.  The general kind holds a full symmetric matrix
/// G2(x,y) with zero diagonal.
class PairFunction {
public:
  enum class Kind { translation_invariant, general };

  /// Translation-invariant g from a deviation table {offset -> g(offset)}.
  /// The table is symmetrized; the origin entry is forced to 0.
  static PairFunction translation_invariant(std::map<Offset, double> table) {
    if (table.empty())
      throw std::invalid_argument("deviation table must at least contain the origin");
    PairFunction f;
    f.kind_ = Kind::translation_invariant;
    for (auto& [r, v] : table) {
      if (v < 0) throw std::invalid_argument("g must be nonnegative");
      if (is_origin(r) && v != 0.0)
        throw std::invalid_argument("g(0) must be 0 on a lattice");
      auto m = negate(r);
      auto it = table.find(m);
      if (it != table.end() && std::abs(it->second - v) > 1e-15)
        throw std::invalid_argument("g(r) != g(-r)");
      f.dev_[r] = v;
      f.dev_[m] = v;
    }
    f.dev_[Offset(table.begin()->first.size(), 0)] = 0.0;
    return f;
  }

  /// g with hard core at the origin and no other deviation (Bernoulli-like).
  static PairFunction hard_core_only(int dimension) {
    std::map<Offset, double> t;
    t[Offset(dimension, 0)] = 0.0;
    return translation_invariant(std::move(t));
  }

  static PairFunction general(std::vector<std::vector<double>> g2) {
    PairFunction f;
    f.kind_ = Kind::general;
    size_t n = g2.size();
    for (size_t i = 0; i < n; ++i) {
      if (g2[i].size() != n) throw std::invalid_argument("G2 must be square");
      if (g2[i][i] != 0.0) throw std::invalid_argument("G2(x,x) must be 0");
      for (size_t j = 0; j < n; ++j) {
        if (g2[i][j] < 0) throw std::invalid_argument("G2 must be nonnegative");
        if (std::abs(g2[i][j] - g2[j][i]) > 1e-15)
          throw std::invalid_argument("G2 must be symmetric");
      }
    }
    f.table_ = std::move(g2);
    return f;
  }

  Kind kind() const { return kind_; }
  bool translation_invariant_kind() const { return kind_ == Kind::translation_invariant; }

  /// g at a lattice offset (tail value 1 outside the deviation window).
  double g(const Offset& r) const {
    require_ti();
    auto it = dev_.find(r);
    return it == dev_.end() ? 1.0 : it->second;
  }

  /// G2 between two sites of a domain.
  double g2(const LatticeDomain& dom, int x, int y) const {
    if (x == y) return 0.0;
    if (kind_ == Kind::general) {
      if (static_cast<size_t>(dom.size()) != table_.size())
        throw std::invalid_argument("G2 table does not match domain");
      return table_[x][y];
    }
    return g(dom.displacement(x, y));
  }

  /// C(g) = sum_r |g(r)-1|, an exact finite sum over the deviation window.
  double c_of_g() const {
    require_ti();
    double c = 0;
    for (const auto& [r, v] : dev_) c += std::abs(v - 1.0);
    return c;
  }

  bool everywhere_leq_one() const {
    require_ti();
    return std::all_of(dev_.begin(), dev_.end(),
                       [](const auto& kv) { return kv.second <= 1.0; });
  }

  const std::map<Offset, double>& deviation() const {
    require_ti();
    return dev_;
  }

  const std::vector<std::vector<double>>& general_table() const {
    if (kind_ != Kind::general) throw std::logic_error("not a general pair table");
    return table_;
  }

private:
  void require_ti() const {
    if (kind_ != Kind::translation_invariant)
      throw std::logic_error("operation requires a translation-invariant g");
  }

  Kind kind_ = Kind::translation_invariant;
  std::map<Offset, double> dev_;
  std::vector<std::vector<double>> table_;
};

/// Triplet factor gtilde3 as a function of three lattice points, stored on a
/// canonicalized displacement pair (u,v) = (y-x, z-x) and equal to 1 outside
/// the range D3.  Invariant under permuting the three points.
class TripletFunction {
public:
  /// table: {(u,v) -> value}; D: hard-core range of the accompanying g;
  /// D3: triplet range (value 1 whenever some pairwise separation exceeds D3).
  TripletFunction(std::map<std::pair<Offset, Offset>, double> table, double hard_core_range,
                  double triplet_range)
      : D_(hard_core_range), D3_(triplet_range) {
    if (D_ <= 0 || D3_ <= 0) throw std::invalid_argument("ranges must be positive");
    for (auto& [uv, val] : table) {
      if (val < 0) throw std::invalid_argument("gtilde3 must be nonnegative");
      dev_[canonical_key(uv.first, uv.second)] = val;
    }
  }

  double hard_core_range() const { return D_; }
  double triplet_range() const { return D3_; }

  /// gtilde3 evaluated at displacements u = y-x, v = z-x.
  double value(const Offset& u, const Offset& v) const {
    auto it = dev_.find(canonical_key(u, v));
    return it == dev_.end() ? 1.0 : it->second;
  }

  double value(const LatticeDomain& dom, int x, int y, int z) const {
    return value(dom.displacement(x, y), dom.displacement(x, z));
  }

  /// C3 = sup max{|g3-1|, |g3-1|^(1/3)} over the deviation table.
  double c3() const {
    double c = 0;
    for (const auto& [k, v] : dev_) {
      double d = std::abs(v - 1.0);
      c = std::max(c, std::max(d, std::cbrt(d)));
    }
    return c;
  }

  /// Canonicalized deviation table {(u,v) -> value}.
  const std::map<std::pair<Offset, Offset>, double>& deviation() const { return dev_; }

private:
  // All six representations of the unordered triple {0, u, v}; the
  // lexicographically smallest is the key.
  static std::pair<Offset, Offset> canonical_key(const Offset& u, const Offset& v) {
    Offset du = u, dv = v;
    std::pair<Offset, Offset> best{du, dv};
    auto consider = [&best](const Offset& a, const Offset& b) {
      std::pair<Offset, Offset> cand{a, b};
      if (cand < best) best = cand;
    };
    Offset mu = negate(u), mv = negate(v);
    Offset vu(u.size()), uv(u.size());
    for (size_t k = 0; k < u.size(); ++k) {
      vu[k] = v[k] - u[k];
      uv[k] = u[k] - v[k];
    }
    consider(u, v);
    consider(v, u);
    consider(mu, vu);
    consider(vu, mu);
    consider(mv, uv);
    consider(uv, mv);
    return best;
  }

  std::map<std::pair<Offset, Offset>, double> dev_;
  double D_, D3_;
};

}  // namespace ppr
