#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "ppreal/bounds.hpp"
#include "ppreal/rng.hpp"

using namespace ppr;

TEST_CASE("stability constant special cases") {
  REQUIRE(stability_b(alpha_pair(0.5)) == 1.0);
  REQUIRE(stability_b(alpha_pair(1.0)) == 1.0);
  REQUIRE(stability_b(alpha_pair(1.5)) == Catch::Approx(2.25).margin(1e-14));
  REQUIRE(stability_b(alpha_pair(2.0)) == Catch::Approx(4.0).margin(1e-14));
  REQUIRE(stability_b(PairFunction::hard_core_only(1)) == 1.0);
}

TEST_CASE("cluster-expansion radius closed forms") {
  REQUIRE(as_radius(1.0, 2.0) == Catch::Approx(1.0 / (2.0 * std::numbers::e)).margin(1e-15));
  REQUIRE(as_radius(alpha_pair(0.5)) ==
          Catch::Approx(1.0 / (std::numbers::e * 2.0)).margin(1e-15));
  REQUIRE(as_radius(alpha_pair(0.0)) ==
          Catch::Approx(1.0 / (std::numbers::e * 3.0)).margin(1e-15));
  REQUIRE(as_radius(PairFunction::hard_core_only(1)) ==
          Catch::Approx(1.0 / std::numbers::e).margin(1e-15));
}

TEST_CASE("Lee-Yang constant and threshold") {
  REQUIRE(leeyang_b(alpha_pair(2.0)) == Catch::Approx(4.0));
  REQUIRE(leeyang_threshold(leeyang_b(alpha_pair(2.0))) == Catch::Approx(0.25));
  REQUIRE(leeyang_b(alpha_pair(1.5)) == Catch::Approx(2.25));
  REQUIRE(leeyang_b(PairFunction::hard_core_only(1)) == 1.0);
  REQUIRE_THROWS_AS(leeyang_b(alpha_pair(0.5)), std::domain_error);
  // finite-domain variant picks up the same neighbors on a ring
  REQUIRE(leeyang_b(alpha_pair(1.5), LatticeDomain::ring(10)) == Catch::Approx(2.25));
}

TEST_CASE("partition sum basics") {
  // one free site: Xi = 1 - rho
  auto spec1 = alpha_spec(1.5, 0.2, 1);
  REQUIRE(leeyang_xi(spec1, 0) == Catch::Approx(0.8).margin(1e-15));
  // rho = 0: Xi identically 1
  auto spec0 = alpha_spec(1.5, 0.0, 6);
  for (Config xi = 0; xi < (1u << 6); ++xi)
    REQUIRE(leeyang_xi(spec0, xi) == Catch::Approx(1.0).margin(1e-15));
}

TEST_CASE("realization identity p = rho_n Xi") {
  SplitMix64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    double alpha = 1.0 + rng.uniform();
    double rho = 0.8 * rng.uniform() / (alpha * alpha);
    auto spec = alpha_spec(alpha, rho, 8);
    auto mu = inclusion_exclusion_measure(pair_ansatz_oracle(spec), spec.domain);
    auto oracle = pair_ansatz_oracle(spec);
    for (Config xi = 0; xi < mu.table_size(); ++xi)
      REQUIRE(mu.weight(xi) == Catch::Approx(oracle(xi) * leeyang_xi(spec, xi)).margin(1e-10));
  }
}

TEST_CASE("Xi stays positive below the threshold") {
  for (double alpha : {1.5, 2.0}) {
    double thr = 1.0 / (alpha * alpha);
    for (double f : {0.25, 0.5, 0.9}) {
      auto spec = alpha_spec(alpha, f * thr, 10);
      auto scan = leeyang_scan(spec);
      REQUIRE(scan.all_positive);
      REQUIRE(scan.z_lower_bound >= 1.0 / (f * thr * alpha * alpha) - 1e-9);
    }
  }
}

TEST_CASE("sphere volumes match the printed constants") {
  REQUIRE(sphere_volume(1) == Catch::Approx(1.0).margin(1e-15));
  REQUIRE(sphere_volume(2) == Catch::Approx(std::numbers::pi / 4.0).margin(1e-15));
  REQUIRE(sphere_volume(3) == Catch::Approx(std::numbers::pi / 6.0).margin(1e-15));
}

TEST_CASE("triplet radius worked value") {
  StabilityConstants k;
  k.b = 1.0;
  k.c = 2.0;
  k.c3 = 0.01;
  k.hard_core_range = 1.0;
  k.triplet_range = 1.0;
  k.b3 = 1.0;
  REQUIRE(triplet_radius(k, 1) == Catch::Approx(0.16776400178662046).margin(1e-12));
}

TEST_CASE("triplet radius limits and monotonicity") {
  StabilityConstants k;
  k.b = 1.0;
  k.c = 2.0;
  k.hard_core_range = 1.0;
  k.triplet_range = 1.0;
  double prev = -1;
  for (double c3 : {0.2, 0.1, 0.05, 0.01, 1e-4, 1e-8}) {
    k.c3 = c3;
    double r = triplet_radius(k, 1);
    REQUIRE(r > prev);  // decreasing in C3
    prev = r;
  }
  k.c3 = 0.0;
  REQUIRE(triplet_radius(k, 1) == Catch::Approx(as_radius(1.0, 2.0)).margin(1e-12));
  REQUIRE(std::abs(prev - as_radius(1.0, 2.0)) <= 1e-6);
  // decreasing in D3
  k.c3 = 0.05;
  k.triplet_range = 1.0;
  double r1 = triplet_radius(k, 1);
  k.triplet_range = 2.0;
  REQUIRE(triplet_radius(k, 1) < r1);
  // D3 below D clamps to the pair behavior shape
  k.triplet_range = 0.5;
  k.c3 = 0.0;
  REQUIRE(triplet_radius(k, 1) == Catch::Approx(as_radius(1.0, 2.0)).margin(1e-12));
}
