#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "delayed_spt/harness.hpp"
#include "delayed_spt/key_pattern.hpp"
#include "delayed_spt/offline_oracle.hpp"
#include "delayed_spt/online_engine.hpp"

using namespace dspt;
using doctest::Approx;

TEST_CASE("exact optimum examples") {
  const Instance two(2, {{1, 1.0, 0.0, 1.0}, {2, 1.0, 0.0, 1.0}});
  CHECK(total_completion_time(exact_optimal(two), two) == Approx(2.0));

  const Instance tight(3, {{1, 1.0, 0.0, 1.0}, {2, 0.58679, 0.02991, 1.0}, {3, 0.58679, 0.02991, 1.0}});
  CHECK(total_completion_time(exact_optimal(tight), tight) == Approx(2.23340).epsilon(1e-5));

  const Instance mixed(2, {{1, 1.0, 0.0, 1.0}, {2, 1.0, 0.0, 1.0}, {3, 0.3, 0.23898, 1.0}});
  const double opt = total_completion_time(exact_optimal(mixed), mixed);
  CHECK(opt <= total_completion_time(run(mixed, 1.54610).schedule, mixed) + 1e-12);
  CHECK(opt <= total_completion_time(reference_schedule(mixed), mixed) + 1e-12);

  CHECK(exact_optimal(Instance(2, {})).size() == 0);

  std::vector<Job> nine;
  for (int j = 1; j <= 9; ++j) nine.push_back({j, 1.0, 0.0, 1.0});
  CHECK_THROWS_AS(exact_optimal(Instance(2, nine)), InstanceTooLarge);
  CHECK_NOTHROW(exact_optimal(Instance(2, nine), 9));
}

TEST_CASE("exact optimum is a lower envelope") {
  for (int seed = 0; seed < 500; ++seed) {
    Rng rng(derive_seed(41, static_cast<std::uint64_t>(seed)));
    const int m = 1 + seed % 3;
    const Instance inst = random_instance(rng, m, 7);
    const Schedule s = exact_optimal(inst);
    REQUIRE(validate_schedule(s, inst).empty());
    const double opt = total_completion_time(s, inst);
    CHECK(opt <= total_completion_time(run(inst, 1.5).schedule, inst) + 1e-9);
    CHECK(opt <= total_completion_time(reference_schedule(inst), inst) + 1e-9);
    CHECK(opt >= completion_lower_bound(inst) - 1e-9);
  }
}

TEST_CASE("uniform optimal totals") {
  CHECK(uniform_optimal_total(2, 1.0, 0.0) == Approx(2.0));
  CHECK(uniform_optimal_total(3, 1.0, 0.0) == Approx(4.0));
  CHECK_THROWS_AS(uniform_optimal_total(3, 1.0, 0.0, 3), std::invalid_argument);

  for (int k = 1; k <= 8; ++k) {
    for (double p : {0.1, 0.43762, 1.0}) {
      for (double r : {0.0, 0.23898}) {
        std::vector<Job> jobs;
        for (int j = 1; j <= k; ++j) jobs.push_back({j, p, 0.0, 1.0});
        const Instance inst(2, jobs);
        const double exact = total_completion_time(exact_optimal(inst), inst) + k * r;
        CHECK(std::abs(uniform_optimal_total(k, p, r) - exact) < 1e-9);
      }
    }
  }
}

TEST_CASE("restricted family totals") {
  // no restriction
  const FamilyTotals free = restricted_family_totals(0.5, 0.5, 5, 0.2, 0.5);
  CHECK(free.restricted_total == Approx(free.optimal_total));
  CHECK(free.optimal_total == Approx(uniform_optimal_total(5, 0.2, 0.5)));

  const FamilyTotals even = restricted_family_totals(0.0, 2.0, 4, 1.0, 0.0);
  CHECK(even.kappa == 2.0);
  CHECK_FALSE(even.upper_bound);
  const PatternTotals sim = discrete_pattern_totals({{0.0, 2.0}, 0.0}, {1.0, 4});
  CHECK(even.restricted_total == Approx(sim.restricted_total));

  const FamilyTotals frac = restricted_family_totals(0.0, 1.5, 4, 1.0, 0.0);
  CHECK(frac.upper_bound);
  CHECK(frac.restricted_total >= discrete_pattern_totals({{0.0, 1.5}, 0.0}, {1.0, 4}).restricted_total);

  CHECK_THROWS_AS(restricted_family_totals(1.0, 0.5, 2, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(restricted_family_totals(0.5, 1.0, 2, 1.0, 0.7), std::invalid_argument);
}

TEST_CASE("odd remainder stays within a quarter of the limit ratio") {
  // k - kappa odd adds p/4 over the continuous limit; that costs at most a
  // factor (k + 1/2)/k <= 1.25 for k >= 2
  for (int k = 2; k <= 8; k += 2) {
    const FamilyTotals f = restricted_family_totals(0.0, 1.0, k, 1.0, 0.0);
    REQUIRE(std::fmod(k - f.kappa, 2.0) == 1.0);
    const double limit = f.restricted_total - 0.25;
    CHECK(f.restricted_total / limit <= (k + 0.5) / k + 1e-12);
    CHECK((k + 0.5) / k <= 1.25);
  }
}

TEST_CASE("list schedules") {
  const Instance inst(2, {{1, 2.0, 0.0, 1.0}, {2, 1.0, 0.0, 1.0}, {3, 0.5, 0.5, 1.0}});
  const std::vector<int> order{2, 1, 3};
  const Schedule s = list_schedule(inst, order);
  CHECK(validate_schedule(s, inst).empty());
  CHECK(s.find(2).machine == 1);
  CHECK(s.find(1).machine == 2);
  CHECK(s.find(3).start == Approx(1.0));
  CHECK(completion_lower_bound(inst) == Approx(4.0));
}
