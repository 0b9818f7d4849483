#pragma once

#include <span>
#include <vector>

namespace dspt {

/// Target ratio R_m and the delays t_1..t_m of m unit jobs released at 0.
struct BoundSolution {
  int machines = 0;
  double ratio = 0.0;
  std::vector<double> delays;
  double consistency = 0.0;  // 1 + mean(delays) at the returned ratio
  int iterations = 0;
};

/// Sequential critical delays for target `ratio`: delay i is the critical
/// release with the first i-1 machines busy until t_h + 1, m - i idle
/// machines and a unit job on machine i. Nondecreasing by construction.
std::vector<double> delays_for_target(int machines, double ratio);

/// 1 + sum(delays) / m: the ratio of the delayed unit jobs to starting them at 0.
double consistency_ratio(std::span<const double> delays);

/// Bisection on the ratio until consistency_ratio(delays_for_target(m, R))
/// and R agree within `tol`. The bracket defaults to [1, 2]; for m = 1 the
/// fixed point is 2 itself.
BoundSolution solve_target_ratio(int machines, double tol = 1e-9, double lo = 1.0, double hi = 2.0);

/// Number of machines whose unit job starts at time 0 in the limit of a
/// continuous machine count: floor(m * (1 - 1/R)).
int zero_delay_count(int machines, double ratio);

/// solve_target_ratio(m) with the default tolerance, memoized per m.
/// Thread-safe.
const BoundSolution& solved(int machines);

}  // namespace dspt
