#pragma once

#include <string>

#include <json.hpp>

#include "ppreal/exact.hpp"
#include "ppreal/measure.hpp"
#include "ppreal/spec.hpp"

namespace ppr {

// On-disk artifact formats: measures as {domain, weights:[{mask,p}...]} with
// masks ascending, potentials as {phi1:[...], phi2:[{i,j,value}...], logZ}
// where forbidden entries carry the string "inf".

inline nlohmann::json domain_to_json(const LatticeDomain& dom) {
  nlohmann::json j;
  j["d"] = dom.dimension();
  j["extents"] = dom.extents();
  j["boundary"] = dom.periodic() ? "periodic" : "free";
  return j;
}

inline LatticeDomain domain_from_json(const nlohmann::json& j) {
  detail::reject_unknown(j, {"d", "extents", "boundary"}, "domain");
  auto extents = j.at("extents").get<std::vector<int>>();
  if (static_cast<int>(extents.size()) != j.at("d").get<int>())
    throw std::invalid_argument("extents arity does not match d");
  std::string b = j.at("boundary").get<std::string>();
  if (b != "periodic" && b != "free")
    throw std::invalid_argument("boundary must be 'periodic' or 'free'");
  return LatticeDomain(extents, b == "periodic" ? Boundary::periodic : Boundary::free);
}

inline nlohmann::json measure_to_json(const FiniteMeasure& mu, const LatticeDomain& dom) {
  if (dom.size() != mu.sites()) throw std::invalid_argument("domain does not match measure");
  nlohmann::json j;
  j["domain"] = domain_to_json(dom);
  nlohmann::json weights = nlohmann::json::array();
  for (Config eta = 0; eta < mu.table_size(); ++eta) {
    if (mu.weight(eta) == 0.0) continue;
    weights.push_back({{"mask", eta}, {"p", mu.weight(eta)}});
  }
  j["weights"] = std::move(weights);
  return j;
}

inline std::pair<FiniteMeasure, LatticeDomain> measure_from_json(const nlohmann::json& j) {
  detail::reject_unknown(j, {"domain", "weights"}, "measure");
  auto dom = domain_from_json(j.at("domain"));
  dom.require_enumerable();
  std::vector<double> w(std::size_t{1} << dom.size(), 0.0);
  long long prev = -1;
  for (const auto& row : j.at("weights")) {
    detail::reject_unknown(row, {"mask", "p"}, "weights");
    long long mask = row.at("mask").get<long long>();
    if (mask <= prev) throw std::invalid_argument("weight masks must be strictly ascending");
    if (mask < 0 || mask >= static_cast<long long>(w.size()))
      throw std::invalid_argument("weight mask outside configuration range");
    prev = mask;
    w[static_cast<Config>(mask)] = row.at("p").get<double>();
  }
  return {FiniteMeasure(dom.size(), std::move(w)), dom};
}

inline nlohmann::json potentials_to_json(const PairPotentials& pot) {
  nlohmann::json j;
  nlohmann::json phi1 = nlohmann::json::array();
  for (const auto& v : pot.phi1) {
    if (v)
      phi1.push_back(*v);
    else
      phi1.push_back("inf");
  }
  j["phi1"] = std::move(phi1);
  nlohmann::json phi2 = nlohmann::json::array();
  int n = static_cast<int>(pot.phi1.size());
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k) {
      const auto& v = pot.phi2[i][k];
      if (v && *v == 0.0) continue;  // zero couplings are implicit
      nlohmann::json row{{"i", i}, {"j", k}};
      if (v)
        row["value"] = *v;
      else
        row["value"] = "inf";
      phi2.push_back(std::move(row));
    }
  j["phi2"] = std::move(phi2);
  j["logZ"] = pot.log_z;
  return j;
}

inline PairPotentials potentials_from_json(const nlohmann::json& j) {
  detail::reject_unknown(j, {"phi1", "phi2", "logZ"}, "potentials");
  PairPotentials pot;
  for (const auto& v : j.at("phi1")) {
    if (v.is_string()) {
      if (v.get<std::string>() != "inf") throw std::invalid_argument("phi1 entries are numbers or 'inf'");
      pot.phi1.push_back(std::nullopt);
    } else {
      pot.phi1.push_back(v.get<double>());
    }
  }
  int n = static_cast<int>(pot.phi1.size());
  pot.phi2.assign(n, std::vector<std::optional<double>>(n, 0.0));
  for (int i = 0; i < n; ++i) pot.phi2[i][i] = std::nullopt;
  for (const auto& row : j.at("phi2")) {
    detail::reject_unknown(row, {"i", "j", "value"}, "phi2");
    int i = row.at("i").get<int>(), k = row.at("j").get<int>();
    if (i < 0 || k < 0 || i >= n || k >= n || i == k)
      throw std::invalid_argument("phi2 indices out of range");
    const auto& v = row.at("value");
    std::optional<double> val;
    if (v.is_string()) {
      if (v.get<std::string>() != "inf") throw std::invalid_argument("phi2 values are numbers or 'inf'");
    } else {
      val = v.get<double>();
    }
    pot.phi2[i][k] = pot.phi2[k][i] = val;
  }
  pot.log_z = j.at("logZ").get<double>();
  return pot;
}

}  // namespace ppr
