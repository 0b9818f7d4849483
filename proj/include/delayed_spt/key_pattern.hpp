#pragma once

#include <span>
#include <vector>

// Ratio calculus for a burst of k identical small jobs of length delta,
// submitted at time r, on machines that only become free at given times.
// Every quantity here is homogeneous of degree 1 in time.

namespace dspt {

/// Machine availability times together with the submission time of the burst.
struct AvailabilityProfile {
  std::vector<double> availability;
  double release = 0.0;
};

struct PatternSpec {
  double delta = 1.0;
  long k = 1;
};

/// Input of the delay computation for one head-of-queue job.
///
/// `fixed` holds the free times of the machines that are not idle, `idle_count`
/// the machines already free, and one further machine receives the candidate
/// job of length `p`. The candidate's machine is modeled as free at r + p.
struct DelayQuery {
  std::vector<double> fixed;
  int idle_count = 0;
  double p = 0.0;
  double floor = 0.0;
  double target = 2.0;

  int machines() const { return static_cast<int>(fixed.size()) + idle_count + 1; }
};

/// Small-job total completion time ratio when the burst finishes at makespan
/// `makespan`. Availabilities are clamped into [release, makespan] first.
/// Throws std::domain_error when the optimal denominator is not positive.
double pattern_ratio_at(double makespan, const AvailabilityProfile& profile);

/// Burst makespan over optimal burst makespan, with the same clamping.
double makespan_ratio_at(double makespan, const AvailabilityProfile& profile);

struct WorstCase {
  double ratio = 1.0;
  double makespan = 0.0;  // maximizing makespan; equals the release when degenerate
};

/// Supremum of pattern_ratio_at over all burst sizes.
///
/// The ratio is piecewise rational in the makespan with breakpoints at the
/// sorted (clamped) availabilities. On each piece the stationary point is the
/// makespan at which the makespan ratio equals the pattern ratio; it is found
/// in closed form, so no grid search is involved.
WorstCase worst_case_ratio(const AvailabilityProfile& profile);

/// Same as worst_case_ratio(profile).ratio, for an ascending availability
/// sequence already clamped to >= release.
double worst_case_ratio_sorted(std::span<const double> sorted, double release);

/// Release that makes a constant profile hit `target` exactly (minus branch of
/// the quadratic). Throws std::domain_error for target <= 1 or an empty profile.
double solve_release_closed_form(std::span<const double> profile, double target);

/// Smallest release r >= query.floor whose profile keeps the worst-case ratio
/// at or below query.target. Profile(r) is max(f, r) for every fixed machine,
/// r for each idle machine and r + p for the receiving machine. Solved by
/// bisection; the worst-case ratio is nonincreasing in r.
double critical_delay(const DelayQuery& query);

/// Linear delay rules for two machines, r(p) = a * p + b * m1, for the two
/// regimes where the new job completes before (alpha <= 1) or after the busy
/// machine.
struct TwoMachineCoefficients {
  double early_p, early_m1;  // alpha <= 1
  double late_p, late_m1;    // alpha > 1
  double branch_fraction;    // p <= branch_fraction * m1 selects the early rule
};

TwoMachineCoefficients two_machine_coefficients(double ratio);

/// Earliest start of a job of length `p` when the other machine is busy until
/// `m1`. Throws std::domain_error when the result is not below m1; the caller
/// then uses the both-machines-idle rule.
double two_machine_delay_closed_form(double p, double m1, double ratio);

struct PatternTotals {
  double restricted_total = 0.0;
  double optimal_total = 0.0;
  double ratio() const { return restricted_total / optimal_total; }
};

/// Non-delay schedules of spec.k jobs of length spec.delta released at
/// profile.release: on the given availabilities, and on machines all free at
/// the release.
PatternTotals discrete_pattern_totals(const AvailabilityProfile& profile, const PatternSpec& spec);

}  // namespace dspt
