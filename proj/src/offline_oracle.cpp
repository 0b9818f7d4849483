#include "delayed_spt/offline_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <string>

namespace dspt {

namespace {

class Enumerator {
 public:
  Enumerator(const Instance& inst) : jobs_(inst.jobs().begin(), inst.jobs().end()), m_(inst.machines()) {
    used_.assign(jobs_.size(), false);
    for (const Job& j : jobs_) remaining_lb_ += j.r + j.p;
  }

  Schedule solve() {
    if (jobs_.empty()) return {};
    anchor_ = smallest_unused();
    dfs(0, 0.0, 0.0, 0, false);
    return Schedule(best_);
  }

 private:
  std::size_t smallest_unused() const {
    std::size_t pick = jobs_.size();
    for (std::size_t i = 0; i < jobs_.size(); ++i)
      if (!used_[i] && (pick == jobs_.size() || jobs_[i].id < jobs_[pick].id)) pick = i;
    return pick;
  }

  void dfs(int machine, double free, double total, std::size_t placed_here, bool has_anchor) {
    if (total + remaining_lb_ >= best_total_) return;
    if (path_.size() == jobs_.size()) {
      best_total_ = total;
      best_ = path_;
      return;
    }
    const std::size_t anchor = anchor_;
    for (std::size_t i = 0; i < jobs_.size(); ++i) {
      if (used_[i]) continue;
      const Job& j = jobs_[i];
      const double start = std::max(free, j.r);
      used_[i] = true;
      remaining_lb_ -= j.r + j.p;
      path_.push_back({j.id, machine + 1, start});
      dfs(machine, start + j.p, total + start + j.p, placed_here + 1, has_anchor || i == anchor);
      path_.pop_back();
      remaining_lb_ += j.r + j.p;
      used_[i] = false;
    }
    if (placed_here > 0 && has_anchor && machine + 1 < m_) {
      anchor_ = smallest_unused();
      dfs(machine + 1, 0.0, total, 0, false);
      anchor_ = anchor;
    }
  }

  std::vector<Job> jobs_;
  int m_;
  std::vector<bool> used_;
  std::vector<Assignment> path_;
  std::vector<Assignment> best_;
  double best_total_ = std::numeric_limits<double>::infinity();
  double remaining_lb_ = 0.0;
  std::size_t anchor_ = 0;
};

}  // namespace

Schedule exact_optimal(const Instance& instance, int limit) {
  if (static_cast<int>(instance.size()) > limit)
    throw InstanceTooLarge("exact enumeration limited to " + std::to_string(limit) + " jobs; got " +
                           std::to_string(instance.size()) + " (use the family formulas)");
  Enumerator e(instance);
  return e.solve();
}

double uniform_optimal_total(int k, double p, double r, int machines) {
  if (machines != 2) throw std::invalid_argument("uniform optimal total is only available for two machines");
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const double kd = k;
  double total = kd * kd / 4.0 * p + kd / 2.0 * p + kd * r;
  if (k % 2 == 1) total += p / 4.0;
  return total;
}

FamilyTotals restricted_family_totals(double m1, double m2, int k, double p, double r) {
  if (!(r >= 0.0 && m1 >= r && m2 >= m1)) throw std::invalid_argument("need m2 >= m1 >= r >= 0");
  if (!(p > 0.0)) throw std::invalid_argument("p must be > 0");
  if (k < 1) throw std::invalid_argument("k must be >= 1");

  FamilyTotals f;
  f.k = k;
  f.p = p;
  f.r = r;
  f.m1 = m1;
  f.m2 = m2;
  const double kd = k;
  f.kappa = std::min(kd, (m2 - m1) / p);
  f.optimal_total = uniform_optimal_total(k, p, r);

  if (f.kappa >= kd) {
    f.restricted_total = kd * kd / 2.0 * p + kd / 2.0 * p + kd * m1;
    return f;
  }
  const double rounded = std::round(f.kappa);
  const bool integral = std::abs(f.kappa - rounded) < 1e-9;
  const double kappa = integral ? rounded : f.kappa;
  const double rest = kd - kappa;
  f.restricted_total = rest * rest / 4.0 * p + kappa * kappa / 2.0 * p + kd / 2.0 * p + rest * m2 + kappa * m1;
  if (!integral || static_cast<long>(rest) % 2 == 1) f.restricted_total += p / 4.0;
  f.upper_bound = !integral;
  return f;
}

Schedule list_schedule(const Instance& instance, std::span<const int> order) {
  std::vector<double> free(static_cast<std::size_t>(instance.machines()), 0.0);
  Schedule s;
  for (int id : order) {
    const Job& j = instance.job(id);
    auto it = std::min_element(free.begin(), free.end());
    const double start = std::max(*it, j.r);
    s.add({id, static_cast<int>(it - free.begin()) + 1, start});
    *it = start + j.p;
  }
  return s;
}

Schedule reference_schedule(const Instance& instance) {
  std::vector<int> by_release;
  for (const Job& j : instance.jobs()) by_release.push_back(j.id);
  std::vector<int> by_spt = by_release;
  std::stable_sort(by_spt.begin(), by_spt.end(),
                   [&](int a, int b) { return instance.job(a).p < instance.job(b).p; });

  Schedule a = list_schedule(instance, by_release);
  Schedule b = list_schedule(instance, by_spt);
  return total_completion_time(b, instance) < total_completion_time(a, instance) ? b : a;
}

double completion_lower_bound(const Instance& instance) {
  double trivial = 0.0;
  std::vector<Job> relaxed;
  for (const Job& j : instance.jobs()) {
    trivial += j.r + j.p;
    relaxed.push_back({j.id, j.p, 0.0, j.w});
  }
  const Instance no_release(instance.machines(), std::move(relaxed));
  return std::max(trivial, total_completion_time(spt_offline(no_release), no_release));
}

}  // namespace dspt
