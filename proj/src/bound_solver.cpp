#include "delayed_spt/bound_solver.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "delayed_spt/key_pattern.hpp"

namespace dspt {

std::vector<double> delays_for_target(int machines, double ratio) {
  if (machines < 1) throw std::invalid_argument("machine count must be >= 1");
  if (!(ratio > 1.0)) throw std::invalid_argument("target ratio must exceed 1");

  std::vector<double> t;
  t.reserve(static_cast<std::size_t>(machines));
  DelayQuery q;
  q.p = 1.0;
  q.target = ratio;
  q.fixed.reserve(static_cast<std::size_t>(machines));
  for (int i = 1; i <= machines; ++i) {
    q.idle_count = machines - i;
    q.floor = t.empty() ? 0.0 : t.back();
    // critical_delay never returns less than the floor
    t.push_back(critical_delay(q));
    q.fixed.push_back(t.back() + 1.0);
  }
  return t;
}

double consistency_ratio(std::span<const double> delays) {
  if (delays.empty()) return 1.0;
  return 1.0 + std::accumulate(delays.begin(), delays.end(), 0.0) / static_cast<double>(delays.size());
}

BoundSolution solve_target_ratio(int machines, double tol, double lo, double hi) {
  if (machines < 1) throw std::invalid_argument("machine count must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be > 0");
  if (!(lo >= 1.0 && hi <= 2.0 && lo < hi)) throw std::invalid_argument("bracket must lie in [1, 2]");

  // delays_for_target needs R > 1; the consistency test at R = 2 always
  // lowers R, so evaluating strictly inside the bracket is enough.
  BoundSolution s;
  s.machines = machines;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double rc = consistency_ratio(delays_for_target(machines, mid));
    if (rc > mid)
      lo = mid;
    else
      hi = mid;
    ++s.iterations;
  }
  s.ratio = 0.5 * (lo + hi);
  s.delays = delays_for_target(machines, s.ratio);
  s.consistency = consistency_ratio(s.delays);
  return s;
}

int zero_delay_count(int machines, double ratio) {
  if (!(ratio > 1.0)) throw std::invalid_argument("ratio must exceed 1");
  return static_cast<int>(std::floor(machines * (1.0 - 1.0 / ratio)));
}

const BoundSolution& solved(int machines) {
  static std::mutex mu;
  static std::map<int, BoundSolution> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(machines); it != cache.end()) return it->second;
  }
  BoundSolution s = solve_target_ratio(machines);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(machines, std::move(s)).first->second;
}

}  // namespace dspt
