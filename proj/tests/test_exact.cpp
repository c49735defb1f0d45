#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "ppreal/exact.hpp"
#include "ppreal/rng.hpp"

using namespace ppr;

TEST_CASE("inclusion-exclusion recovers the Bernoulli measure") {
  auto dom = LatticeDomain::ring(6);
  CorrelationOracle oracle = [](Config s) { return std::pow(0.3, particle_count(s)); };
  auto mu = inclusion_exclusion_measure(oracle, dom);
  auto ref = FiniteMeasure::bernoulli(6, 0.3);
  for (Config eta = 0; eta < mu.table_size(); ++eta)
    REQUIRE(mu.weight(eta) == Catch::Approx(ref.weight(eta)).margin(1e-12));
}

TEST_CASE("measure oracle inverts inclusion-exclusion") {
  SplitMix64 rng(5);
  std::vector<double> w(1u << 5);
  double tot = 0;
  for (auto& x : w) tot += (x = rng.uniform());
  for (auto& x : w) x /= tot;
  FiniteMeasure mu(5, std::move(w));
  auto back = inclusion_exclusion_measure(measure_oracle(mu), LatticeDomain::ring(5));
  for (Config eta = 0; eta < mu.table_size(); ++eta)
    REQUIRE(back.weight(eta) == Catch::Approx(mu.weight(eta)).margin(1e-11));
}

TEST_CASE("pair ansatz below the radius yields an exact realization") {
  for (double alpha : {0.0, 0.5}) {
    double rho = 0.9 / (std::numbers::e * (3.0 - 2.0 * alpha));
    auto spec = alpha_spec(alpha, rho, 10);
    auto mu = inclusion_exclusion_measure(pair_ansatz_oracle(spec), spec.domain);
    REQUIRE(mu.is_unsigned(1e-12));
    REQUIRE(mu.total() == Catch::Approx(1.0).margin(1e-10));
    auto corr = subset_correlations(mu);
    for (int x = 0; x < 10; ++x) {
      REQUIRE(corr[Config{1} << x] == Catch::Approx(rho).margin(1e-10));
      for (int y = x + 1; y < 10; ++y) {
        Config s = (Config{1} << x) | (Config{1} << y);
        REQUIRE(corr[s] == Catch::Approx(spec.rho2(x, y)).margin(1e-10));
      }
    }
  }
}

TEST_CASE("triplet oracles share pair correlations but differ at third order") {
  double rho = 0.1;
  auto g = alpha_pair(0.5);
  auto make_spec = [&](double dev) {
    std::map<std::pair<Offset, Offset>, double> t{{{{1}, {2}}, 1.0 + dev}};
    return CorrelationSpec::uniform(LatticeDomain::ring(10), rho, g,
                                    TripletFunction(std::move(t), 1.0, 2.0));
  };
  auto mu_a = inclusion_exclusion_measure(triplet_ansatz_oracle(make_spec(0.02)),
                                          LatticeDomain::ring(10));
  auto mu_b = inclusion_exclusion_measure(triplet_ansatz_oracle(make_spec(-0.02)),
                                          LatticeDomain::ring(10));
  REQUIRE(mu_a.is_unsigned(1e-12));
  REQUIRE(mu_b.is_unsigned(1e-12));
  auto ca = subset_correlations(mu_a);
  auto cb = subset_correlations(mu_b);
  double max2 = 0, max3 = 0;
  for (Config s = 1; s < ca.size(); ++s) {
    double d = std::abs(ca[s] - cb[s]);
    if (particle_count(s) <= 2) max2 = std::max(max2, d);
    if (particle_count(s) == 3) max3 = std::max(max3, d);
  }
  REQUIRE(max2 <= 1e-10);
  REQUIRE(max3 > 1e-8);
}

TEST_CASE("LP feasibility matches the ansatz region and beyond") {
  REQUIRE(lp_feasible(alpha_spec(0.5, 0.45, 6)).feasible);
  REQUIRE_FALSE(lp_feasible(alpha_spec(0.5, 0.55, 6)).feasible);
}

TEST_CASE("the three-site hard-core threshold is one third") {
  auto [lo, hi] = rho_threshold_exact(alpha_pair(0.0), LatticeDomain::ring(3), 1e-7);
  REQUIRE(lo <= 1.0 / 3.0 + 1e-6);
  REQUIRE(hi >= 1.0 / 3.0 - 1e-6);
  REQUIRE(hi - lo <= 1e-6);
}

TEST_CASE("infeasible specs produce verified Farkas certificates") {
  auto spec = alpha_spec(0.0, 0.4, 3);
  auto out = lp_feasible(spec);
  REQUIRE_FALSE(out.feasible);
  REQUIRE(out.certificate.has_value());
  REQUIRE(verify_certificate(*out.certificate, spec.domain));
  REQUIRE(pairing_value(*out.certificate, spec) <= -1e-6);
}

TEST_CASE("feasible outcome returns a realizing measure") {
  auto spec = alpha_spec(0.5, 0.3, 6);
  auto out = lp_feasible(spec);
  REQUIRE(out.feasible);
  auto corr = subset_correlations(*out.measure);
  for (int x = 0; x < 6; ++x) REQUIRE(corr[Config{1} << x] == Catch::Approx(0.3).margin(1e-8));
  for (int x = 0; x < 6; ++x)
    for (int y = x + 1; y < 6; ++y)
      REQUIRE(corr[(Config{1} << x) | (Config{1} << y)] ==
              Catch::Approx(spec.rho2(x, y)).margin(1e-8));
}

TEST_CASE("interior perturbation keeps correlations and positivity") {
  auto spec = alpha_spec(0.5, 0.2, 5);
  auto mu = inclusion_exclusion_measure(pair_ansatz_oracle(spec), spec.domain);
  auto nu = interior_measure(mu, spec, 1e-3);
  REQUIRE(nu.min_weight() > 0.0);
  auto corr = subset_correlations(nu);
  for (int x = 0; x < 5; ++x) REQUIRE(corr[Config{1} << x] == Catch::Approx(0.2).margin(1e-12));
  for (int x = 0; x < 5; ++x)
    for (int y = x + 1; y < 5; ++y)
      REQUIRE(corr[(Config{1} << x) | (Config{1} << y)] ==
              Catch::Approx(spec.rho2(x, y)).margin(1e-12));
}

TEST_CASE("maxent reproduces the two-site worked example") {
  auto spec = alpha_spec(0.5, 0.2, 2);
  auto [mu, pot] = maxent_gibbs(spec);
  REQUIRE(mu.weight(0b00) == Catch::Approx(0.62).margin(1e-6));
  REQUIRE(mu.weight(0b01) == Catch::Approx(0.18).margin(1e-6));
  REQUIRE(mu.weight(0b10) == Catch::Approx(0.18).margin(1e-6));
  REQUIRE(mu.weight(0b11) == Catch::Approx(0.02).margin(1e-6));
  REQUIRE(pot.phi1[0].value() == Catch::Approx(1.236762627148927).margin(1e-6));
  REQUIRE(pot.phi2[0][1].value() == Catch::Approx(0.9604619501872925).margin(1e-6));
  REQUIRE(pot.log_z == Catch::Approx(0.4780358009429999).margin(1e-6));
}

TEST_CASE("maxent on independent specs returns Bernoulli potentials") {
  auto spec = CorrelationSpec::uniform(LatticeDomain::ring(5), 0.3,
                                       PairFunction::hard_core_only(1));
  auto [mu, pot] = maxent_gibbs(spec);
  for (int x = 0; x < 5; ++x)
    REQUIRE(pot.phi1[x].value() == Catch::Approx(std::log(0.7 / 0.3)).margin(1e-7));
  for (int x = 0; x < 5; ++x)
    for (int y = x + 1; y < 5; ++y)
      REQUIRE(std::abs(pot.phi2[x][y].value()) <= 1e-7);
  auto ref = FiniteMeasure::bernoulli(5, 0.3);
  for (Config eta = 0; eta < mu.table_size(); ++eta)
    REQUIRE(mu.weight(eta) == Catch::Approx(ref.weight(eta)).margin(1e-8));
}

TEST_CASE("maxent satisfies the Gibbs form and constraints on a 6-ring") {
  auto spec = alpha_spec(0.5, 0.25, 6);
  auto [mu, pot] = maxent_gibbs(spec);
  auto corr = subset_correlations(mu);
  for (int x = 0; x < 6; ++x) REQUIRE(corr[Config{1} << x] == Catch::Approx(0.25).margin(1e-8));
  for (int x = 0; x < 6; ++x)
    for (int y = x + 1; y < 6; ++y)
      REQUIRE(corr[(Config{1} << x) | (Config{1} << y)] ==
              Catch::Approx(spec.rho2(x, y)).margin(1e-8));
  // Gibbs form: -log w(eta) - logZ reproduces the quadratic energy
  for (Config eta = 0; eta < mu.table_size(); ++eta) {
    double e = 0;
    for (int x = 0; x < 6; ++x) {
      if (!(eta & (Config{1} << x))) continue;
      e += pot.phi1[x].value();
      for (int y = x + 1; y < 6; ++y)
        if (eta & (Config{1} << y)) e += pot.phi2[x][y].value();
    }
    REQUIRE(mu.weight(eta) == Catch::Approx(std::exp(-e - pot.log_z)).margin(1e-8));
  }
}

TEST_CASE("maxent rejects infeasible and boundary specs") {
  REQUIRE_THROWS_AS(maxent_gibbs(alpha_spec(0.0, 0.4, 3)), infeasible_error);
  try {
    maxent_gibbs(alpha_spec(0.0, 0.4, 3));
  } catch (const infeasible_error& e) {
    REQUIRE(verify_certificate(e.certificate, LatticeDomain::ring(3)));
  }
  // alpha=1/2 at rho=1/2 sits exactly on the boundary
  REQUIRE_THROWS_AS(maxent_gibbs(alpha_spec(0.5, 0.5, 6)), boundary_error);
}

TEST_CASE("maxent handles forbidden pairs with explicit marks") {
  auto spec = alpha_spec(0.0, 0.2, 6);  // hard core between neighbors
  auto [mu, pot] = maxent_gibbs(spec);
  for (int x = 0; x < 6; ++x) {
    int y = (x + 1) % 6;
    REQUIRE_FALSE(pot.phi2[x][y].has_value());
    Config s = (Config{1} << x) | (Config{1} << y);
    REQUIRE(correlation(mu, s) == Catch::Approx(0.0).margin(1e-12));
  }
  auto corr = subset_correlations(mu);
  for (int x = 0; x < 6; ++x) REQUIRE(corr[Config{1} << x] == Catch::Approx(0.2).margin(1e-8));
}
