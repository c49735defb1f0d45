#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "ppreal/lattice.hpp"
#include "ppreal/pair_function.hpp"

namespace ppr {

/// The problem statement: prescribed rho_1 and G_2 (optionally gtilde_3) on a
/// finite domain.
struct CorrelationSpec {
  LatticeDomain domain;
  std::vector<double> rho1;  // per site
  PairFunction pair;
  std::optional<TripletFunction> triplet;

  CorrelationSpec(LatticeDomain dom, std::vector<double> density, PairFunction g,
                  std::optional<TripletFunction> g3 = std::nullopt)
      : domain(std::move(dom)), rho1(std::move(density)), pair(std::move(g)),
        triplet(std::move(g3)) {
    if (static_cast<int>(rho1.size()) != domain.size())
      throw std::invalid_argument("rho1 arity does not match domain");
    for (double r : rho1)
      if (r < 0 || r > 1) throw std::invalid_argument("lattice rho1 must lie in [0,1]");
  }

  static CorrelationSpec uniform(LatticeDomain dom, double rho, PairFunction g,
                                 std::optional<TripletFunction> g3 = std::nullopt) {
    std::vector<double> r(dom.size(), rho);
    return CorrelationSpec(std::move(dom), std::move(r), std::move(g), std::move(g3));
  }

  double rho1_at(int x) const { return rho1[x]; }

  /// rho_2(x,y) = rho_1(x) rho_1(y) G_2(x,y); zero on the diagonal.
  double rho2(int x, int y) const {
    if (x == y) return 0.0;
    return rho1[x] * rho1[y] * pair.g2(domain, x, y);
  }

  bool uniform_density() const {
    for (double r : rho1)
      if (r != rho1[0]) return false;
    return true;
  }

  bool translation_invariant() const {
    return uniform_density() && pair.translation_invariant_kind();
  }
};

/// One-dimensional family g(0)=0, g(+-1)=alpha, g=1 beyond.
inline PairFunction alpha_pair(double alpha) {
  if (alpha < 0) throw std::invalid_argument("alpha must be nonnegative");
  std::map<Offset, double> t;
  t[{0}] = 0.0;
  t[{1}] = alpha;
  t[{-1}] = alpha;
  return PairFunction::translation_invariant(std::move(t));
}

inline CorrelationSpec alpha_spec(double alpha, double rho, int ring_size) {
  return CorrelationSpec::uniform(LatticeDomain::ring(ring_size), rho, alpha_pair(alpha));
}

// ---------------------------------------------------------------------------
// JSON serialization.  Field names fixed; unknown fields rejected.
// {domain:{d, extents[], boundary}, rho1: number|array,
//  g:{support:[[offset...,value]...]}, g3: {D, D3, support:[[u...,v...,value]...]}}

namespace detail {

inline void reject_unknown(const nlohmann::json& j, std::initializer_list<const char*> allowed,
                           const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed)
      if (it.key() == a) ok = true;
    if (!ok) throw std::invalid_argument("unknown field '" + it.key() + "' in " + where);
  }
}

}  // namespace detail

inline nlohmann::json spec_to_json(const CorrelationSpec& spec) {
  nlohmann::json j;
  j["domain"]["d"] = spec.domain.dimension();
  j["domain"]["extents"] = spec.domain.extents();
  j["domain"]["boundary"] = spec.domain.periodic() ? "periodic" : "free";
  if (spec.uniform_density())
    j["rho1"] = spec.rho1.empty() ? 0.0 : spec.rho1[0];
  else
    j["rho1"] = spec.rho1;
  nlohmann::json support = nlohmann::json::array();
  for (const auto& [r, v] : spec.pair.deviation()) {
    nlohmann::json row = nlohmann::json::array();
    for (int c : r) row.push_back(c);
    row.push_back(v);
    support.push_back(row);
  }
  j["g"]["support"] = support;
  if (spec.triplet) {
    nlohmann::json s3 = nlohmann::json::array();
    for (const auto& [uv, v] : spec.triplet->deviation()) {
      nlohmann::json row = nlohmann::json::array();
      for (int c : uv.first) row.push_back(c);
      for (int c : uv.second) row.push_back(c);
      row.push_back(v);
      s3.push_back(row);
    }
    j["g3"]["D"] = spec.triplet->hard_core_range();
    j["g3"]["D3"] = spec.triplet->triplet_range();
    j["g3"]["support"] = s3;
  }
  return j;
}

inline CorrelationSpec spec_from_json(const nlohmann::json& j) {
  detail::reject_unknown(j, {"domain", "rho1", "g", "g3"}, "spec");
  const auto& jd = j.at("domain");
  detail::reject_unknown(jd, {"d", "extents", "boundary"}, "domain");
  int d = jd.at("d").get<int>();
  auto extents = jd.at("extents").get<std::vector<int>>();
  if (static_cast<int>(extents.size()) != d)
    throw std::invalid_argument("extents arity does not match d");
  std::string bstr = jd.at("boundary").get<std::string>();
  Boundary b;
  if (bstr == "periodic")
    b = Boundary::periodic;
  else if (bstr == "free")
    b = Boundary::free;
  else
    throw std::invalid_argument("boundary must be 'periodic' or 'free'");
  LatticeDomain dom(extents, b);

  std::vector<double> rho1;
  const auto& jr = j.at("rho1");
  if (jr.is_number())
    rho1.assign(dom.size(), jr.get<double>());
  else
    rho1 = jr.get<std::vector<double>>();

  const auto& jg = j.at("g");
  detail::reject_unknown(jg, {"support"}, "g");
  std::map<Offset, double> table;
  for (const auto& row : jg.at("support")) {
    if (!row.is_array() || static_cast<int>(row.size()) != d + 1)
      throw std::invalid_argument("g support rows must hold d offsets and a value");
    Offset r(d);
    for (int k = 0; k < d; ++k) r[k] = row[k].get<int>();
    table[r] = row[d].get<double>();
  }
  auto g = PairFunction::translation_invariant(std::move(table));

  std::optional<TripletFunction> g3;
  if (j.contains("g3") && !j.at("g3").is_null()) {
    const auto& j3 = j.at("g3");
    detail::reject_unknown(j3, {"D", "D3", "support"}, "g3");
    std::map<std::pair<Offset, Offset>, double> t3;
    for (const auto& row : j3.at("support")) {
      if (!row.is_array() || static_cast<int>(row.size()) != 2 * d + 1)
        throw std::invalid_argument("g3 support rows must hold 2d offsets and a value");
      Offset u(d), v(d);
      for (int k = 0; k < d; ++k) u[k] = row[k].get<int>();
      for (int k = 0; k < d; ++k) v[k] = row[d + k].get<int>();
      t3[{u, v}] = row[2 * d].get<double>();
    }
    g3.emplace(std::move(t3), j3.at("D").get<double>(), j3.at("D3").get<double>());
  }

  return CorrelationSpec(std::move(dom), std::move(rho1), std::move(g), std::move(g3));
}

}  // namespace ppr
