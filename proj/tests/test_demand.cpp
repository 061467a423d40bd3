#include <cmath>

#include <doctest.h>

#include "railtac/demand.hpp"
#include "test_helpers.hpp"

using namespace railtac;

namespace {

Path corridor_path() {
  Path path;
  path.id = "r1";
  path.length_km = 530.0;
  path.reference_speed_kmh = 53.0;
  path.reference_time_h = 10.0;
  return path;
}

}  // namespace

TEST_CASE("delay component from one hour of delay") {
  const auto breakdown = rail_cost(corridor_path(), 11.0, 0.0, test::corridor_cost());
  CHECK(breakdown.delay_component == doctest::Approx(2.23 * 1.0 / 530.0));
  CHECK(breakdown.delay_component == doctest::Approx(4.2075e-3).epsilon(1e-4));
  CHECK(breakdown.access_component == 0.0);
  CHECK(breakdown.fixed_component == doctest::Approx(0.045));
  CHECK(breakdown.total ==
        doctest::Approx(breakdown.delay_component + breakdown.access_component +
                        breakdown.fixed_component));
}

TEST_CASE("delay vanishes at the commercial reference and clamps below it") {
  CHECK(rail_cost(corridor_path(), 10.0, 0.0, test::corridor_cost()).delay_component == 0.0);
  CHECK(rail_cost(corridor_path(), 6.0, 0.0, test::corridor_cost()).delay_component == 0.0);
}

TEST_CASE("access component prices the occupied time") {
  const double lambda = 0.13 * 0.045 / 10.0;  // p * c_ell / tau_bar
  const auto breakdown = rail_cost(corridor_path(), 10.0, lambda, test::corridor_cost());
  CHECK(breakdown.access_component == doctest::Approx(0.13 * 0.045).epsilon(1e-12));
  CHECK(breakdown.access_component == doctest::Approx(5.85e-3).epsilon(1e-9));
}

TEST_CASE("rail_cost rejects degenerate inputs") {
  CHECK_THROWS_AS(rail_cost(corridor_path(), 0.0, 0.0, test::corridor_cost()),
                  std::invalid_argument);
  CHECK_THROWS_AS(rail_cost(corridor_path(), -2.0, 0.0, test::corridor_cost()),
                  std::invalid_argument);
  Path empty = corridor_path();
  empty.length_km = 0.0;
  CHECK_THROWS_AS(rail_cost(empty, 10.0, 0.0, test::corridor_cost()),
                  std::invalid_argument);
}

TEST_CASE("binary logit share") {
  CHECK(rail_share(-3.0, -3.0) == doctest::Approx(0.5));
  CHECK(rail_share(-25.0, -5.0) == doctest::Approx(1.0 / (1.0 + std::exp(20.0))));
  CHECK(rail_share(-25.0, -5.0) == doctest::Approx(2.0611536e-9).epsilon(1e-6));
}

TEST_CASE("share stays finite and open for extreme utilities") {
  for (double u : {-1e6, -1e3, 0.0, 1e3, 1e6}) {
    for (double v : {-1e6, 0.0, 1e6}) {
      const double s = rail_share(u, v);
      CHECK(std::isfinite(s));
      CHECK(s > 0.0);
      CHECK(s < 1.0);
      const double road = 1.0 - s;
      CHECK(s + road == 1.0);
    }
  }
}

TEST_CASE("share decreases strictly with the rail cost") {
  const LogitParams logit = test::corridor_logit();
  const ODPair od = test::make_constant_od("w1", 400.0, 100.0);
  double previous = 1.0;
  for (double c_rail = 0.045; c_rail <= 0.10; c_rail += 0.005) {
    RailCostBreakdown cost;
    cost.total = c_rail;
    const Utilities ut = utilities(od, cost, logit);
    const double share = rail_share(ut.u_rail, ut.v_road);
    CHECK(share < previous);
    previous = share;
  }
}

TEST_CASE("utilities with the calibrated parameters") {
  const LogitParams logit = test::corridor_logit();
  ODPair od = test::make_constant_od("w1", 400.0, 100.0, 0.385);
  od.origin_alpha_tag = "";
  od.dest_alpha_tag = "";
  RailCostBreakdown cost;
  cost.total = 0.05085;
  const Utilities ut = utilities(od, cost, logit);
  CHECK(ut.u_rail == doctest::Approx(-7.6192).epsilon(1e-4));
  CHECK(ut.v_road == doctest::Approx(-5.2150).epsilon(1e-4));
}

TEST_CASE("degenerate parameters give an even split") {
  LogitParams logit;
  const ODPair od = test::make_constant_od("w1", 400.0, 100.0);
  logit.alpha_by_tag = {{"ES", 0.0}, {"FR", 0.0}};
  RailCostBreakdown cost;
  cost.total = 0.05;
  const Utilities ut = utilities(od, cost, logit);
  CHECK(ut.u_rail == 0.0);
  CHECK(ut.v_road == 0.0);
  CHECK(rail_share(ut.u_rail, ut.v_road) == doctest::Approx(0.5));
}

TEST_CASE("unknown alpha tag is an error") {
  LogitParams logit = test::corridor_logit();
  ODPair od = test::make_constant_od("w1", 400.0, 100.0);
  od.origin_alpha_tag = "XX";
  RailCostBreakdown cost;
  cost.total = 0.05;
  CHECK_THROWS_AS(utilities(od, cost, logit), std::out_of_range);
}

TEST_CASE("share agrees with an independent scalar evaluation") {
  // Corridor figures: C_rail at p = 0.13, uplifted road cost, ES+FR constants.
  const LogitParams logit = test::corridor_logit();
  const ODPair od = test::make_constant_od("w1", 400.0, 100.0, 0.4543);
  RailCostBreakdown cost;
  cost.total = 0.05085;
  const Utilities ut = utilities(od, cost, logit);
  const double share = rail_share(ut.u_rail, ut.v_road);

  const double u = -149.8372 * 0.05085;
  const double v = -13.5454 * 0.4543 + 0.552 + 0.4589;
  const double expected = std::exp(u) / (std::exp(v) + std::exp(u));
  CHECK(share == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("multi-path shares use the common denominator") {
  const std::vector<double> u{-7.0, -7.5};
  const auto shares = path_shares(-5.0, u);
  REQUIRE(shares.size() == 2);
  const double denom = std::exp(-5.0) + std::exp(-7.0) + std::exp(-7.5);
  CHECK(shares[0] == doctest::Approx(std::exp(-7.0) / denom).epsilon(1e-12));
  CHECK(shares[1] == doctest::Approx(std::exp(-7.5) / denom).epsilon(1e-12));
  CHECK(shares[0] + shares[1] < 1.0);
}

TEST_CASE("entry time for constant demand") {
  const ODPair od = test::make_constant_od("w1", 400.0, 1000.0);
  const auto t = next_entry_time(od, 0.25, 0.0, 1.0, 1.0 / 1600.0);
  REQUIRE(t.has_value());
  CHECK(*t == doctest::Approx(16.0).epsilon(1e-12));
}

TEST_CASE("entry time walks a quiet stretch") {
  ODPair od = test::make_constant_od("w1", 0.0, 1000.0);
  od.demand_profile = StepFunction({0.0, 5.0}, {0.0, 800.0}, 1000.0);
  const auto t = next_entry_time(od, 0.5, 0.0, 1.0, 1.0 / 1600.0);
  REQUIRE(t.has_value());
  CHECK(*t == doctest::Approx(9.0).epsilon(1e-12));
}

TEST_CASE("insufficient demand runs beyond the horizon") {
  const ODPair od = test::make_constant_od("w1", 400.0, 10.0);
  // fills 1600 tons only after 16 h at share 0.25, but the horizon is 10 h
  CHECK_FALSE(next_entry_time(od, 0.25, 0.0, 1.0, 1.0 / 1600.0).has_value());
  ODPair quiet = test::make_constant_od("w1", 0.0, 10.0);
  CHECK_FALSE(next_entry_time(quiet, 0.5, 0.0, 1.0, 1.0 / 1600.0).has_value());
}

TEST_CASE("entry time is monotone in share and demand") {
  const ODPair od = test::make_constant_od("w1", 600.0, 10000.0);
  double previous = 1e30;
  for (double share = 0.05; share < 0.95; share += 0.05) {
    const auto t = next_entry_time(od, share, 0.0, 1.0, 1.0 / 1600.0);
    REQUIRE(t.has_value());
    CHECK(*t <= previous);
    previous = *t;
  }
  const ODPair heavier = test::make_constant_od("w1", 1200.0, 10000.0);
  const auto lighter_t = next_entry_time(od, 0.2, 0.0, 1.0, 1.0 / 1600.0);
  const auto heavier_t = next_entry_time(heavier, 0.2, 0.0, 1.0, 1.0 / 1600.0);
  CHECK(*heavier_t <= *lighter_t);
}

TEST_CASE("entry time validates its inputs") {
  const ODPair od = test::make_constant_od("w1", 400.0, 100.0);
  CHECK_THROWS_AS(next_entry_time(od, 0.0, 0.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(next_entry_time(od, 1.0, 0.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(next_entry_time(od, 0.5, 0.0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(next_entry_time(od, 0.5, 0.0, 1.0, -1.0), std::invalid_argument);
}
