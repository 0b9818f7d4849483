#include <algorithm>

#include "doctest.h"

#include "delayed_spt/bound_solver.hpp"

using namespace dspt;
using doctest::Approx;

TEST_CASE("delays for a given target") {
  const auto two = delays_for_target(2, 1.54610);
  CHECK(two[0] == Approx(0.23898).epsilon(1e-4));
  CHECK(two[1] == Approx(0.85321).epsilon(1e-4));

  const auto five = delays_for_target(5, 1.42907);
  const std::vector<double> want{0, 0.16459, 0.44983, 0.67546, 0.85549};
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(five[i] == Approx(want[i]).epsilon(2e-4));

  // one machine: the burst meets the job's machine at r + 1, so (r + 1)/r = R
  CHECK(delays_for_target(1, 2.0)[0] == Approx(1.0));
  CHECK_THROWS_AS(delays_for_target(0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(delays_for_target(2, 1.0), std::invalid_argument);
}

TEST_CASE("consistency ratio") {
  CHECK(consistency_ratio(std::vector<double>{0, 0, 0}) == 1.0);
  CHECK(consistency_ratio(std::vector<double>{0.23898, 0.85321}) == Approx(1.54610).epsilon(1e-5));
  CHECK(consistency_ratio(std::vector<double>{0.02991, 0.50413, 0.84479}) == Approx(1.45961).epsilon(1e-5));
}

TEST_CASE("solved target ratios") {
  const BoundSolution two = solve_target_ratio(2);
  CHECK(two.ratio == Approx(1.54610).epsilon(1e-5));
  CHECK(std::abs(two.consistency - two.ratio) < 1e-6);
  CHECK(two.iterations > 0);

  const BoundSolution ten = solve_target_ratio(10);
  CHECK(ten.ratio == Approx(1.39529).epsilon(1e-5));
  CHECK(ten.delays.back() == Approx(0.85895).epsilon(1e-4));

  const BoundSolution one = solve_target_ratio(1);
  CHECK(one.ratio == Approx(2.0).epsilon(1e-8));
  CHECK(one.delays[0] == Approx(1.0).epsilon(1e-7));

  CHECK_THROWS_AS(solve_target_ratio(2, 0.0), std::invalid_argument);
}

TEST_CASE("solution invariants") {
  double prev = 2.0;
  for (int m = 2; m <= 10; ++m) {
    const BoundSolution& s = solved(m);
    CHECK(s.ratio > 1.0);
    CHECK(s.ratio < 2.0);
    CHECK(s.ratio < prev);
    prev = s.ratio;
    CHECK(std::is_sorted(s.delays.begin(), s.delays.end()));
    CHECK(s.delays.front() >= 0.0);
    CHECK(s.delays.back() < 1.0);
    CHECK(std::abs(s.consistency - s.ratio) < 1e-6);

    const auto zeros = std::count_if(s.delays.begin(), s.delays.end(), [](double t) { return t < 1e-7; });
    CHECK(zero_delay_count(m, s.ratio) == zeros);
  }
}

TEST_CASE("doubling the machines lowers the ratio") {
  for (int m = 1; m <= 8; ++m) CHECK(solved(2 * m).ratio < solved(m).ratio);
}

TEST_CASE("bisection converges to the same ratio from either half") {
  for (int m : {2, 3, 5}) {
    const double tol = 1e-9;
    const double whole = solve_target_ratio(m, tol).ratio;
    const double lower = solve_target_ratio(m, tol, 1.0, 1.5).ratio;
    const double upper = solve_target_ratio(m, tol, 1.5, 2.0).ratio;
    // every fixed point below 1.5 means the upper half collapses onto 1.5
    const double found = whole < 1.5 ? lower : upper;
    CHECK(std::abs(found - whole) <= 2 * tol);
    CHECK(std::abs((whole < 1.5 ? upper : lower) - 1.5) <= 2 * tol);
  }
}

TEST_CASE("zero delay count") {
  CHECK(zero_delay_count(2, 1.54610) == 0);
  CHECK(zero_delay_count(5, 1.42907) == 1);
  CHECK(zero_delay_count(10, 1.39529) == 2);
  CHECK_THROWS_AS(zero_delay_count(3, 1.0), std::invalid_argument);
}

TEST_CASE("solved is memoized") {
  CHECK(&solved(4) == &solved(4));
}
