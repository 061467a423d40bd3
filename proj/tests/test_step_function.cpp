#include <stdexcept>

#include <doctest.h>

#include "railtac/step_function.hpp"

using railtac::StepFunction;

TEST_CASE("construction rejects malformed breakpoints") {
  CHECK_THROWS_AS(StepFunction({}, {}, 10.0), std::invalid_argument);
  CHECK_THROWS_AS(StepFunction({0.0, 5.0}, {1.0}, 10.0), std::invalid_argument);
  CHECK_THROWS_AS(StepFunction({5.0, 0.0}, {1.0, 2.0}, 10.0), std::invalid_argument);
  CHECK_THROWS_AS(StepFunction({0.0, 5.0}, {1.0, 2.0}, 5.0), std::invalid_argument);
}

TEST_CASE("value and integral over pieces") {
  const StepFunction f({0.0, 5.0, 8.0}, {2.0, 0.0, 4.0}, 10.0);
  CHECK(f.value_at(0.0) == 2.0);
  CHECK(f.value_at(4.999) == 2.0);
  CHECK(f.value_at(5.0) == 0.0);
  CHECK(f.value_at(9.0) == 4.0);
  CHECK(f.integral(0.0, 10.0) == doctest::Approx(10.0 + 8.0));
  CHECK(f.integral(4.0, 9.0) == doctest::Approx(2.0 + 4.0));
  CHECK(f.integral(6.0, 7.0) == 0.0);
  CHECK(f.integral(9.0, 9.0) == 0.0);
}

TEST_CASE("accumulate_until solves the piecewise closed form") {
  const StepFunction constant({0.0}, {400.0}, 1000.0);
  auto t = constant.accumulate_until(0.0, 400.0 * 16.0);
  REQUIRE(t.has_value());
  CHECK(*t == doctest::Approx(16.0).epsilon(1e-12));

  const StepFunction two_piece({0.0, 5.0}, {0.0, 800.0}, 1000.0);
  t = two_piece.accumulate_until(0.0, 3200.0);
  REQUIRE(t.has_value());
  CHECK(*t == doctest::Approx(9.0).epsilon(1e-12));

  CHECK_FALSE(constant.accumulate_until(0.0, 400.0 * 1000.0 + 1.0).has_value());
  CHECK_FALSE(constant.accumulate_until(1000.0, 1.0).has_value());
  CHECK(constant.accumulate_until(3.0, 0.0) == 3.0);
}

TEST_CASE("accumulation is monotone in the target") {
  const StepFunction f({0.0, 10.0, 20.0}, {100.0, 0.0, 50.0}, 100.0);
  double previous = 0.0;
  for (double target = 50.0; target <= 3000.0; target += 50.0) {
    auto t = f.accumulate_until(0.0, target);
    REQUIRE(t.has_value());
    CHECK(*t >= previous);
    CHECK(f.integral(0.0, *t) == doctest::Approx(target).epsilon(1e-9));
    previous = *t;
  }
}
