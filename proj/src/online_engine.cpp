#include "delayed_spt/online_engine.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "delayed_spt/bound_solver.hpp"
#include "delayed_spt/key_pattern.hpp"

namespace dspt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kExtraDelayEps = 1e-7;

int earliest_free(const std::vector<double>& free) {
  return static_cast<int>(std::min_element(free.begin(), free.end()) - free.begin());
}

}  // namespace

RunResult run(const Instance& instance, double target, const EngineOptions& options) {
  if (!(target > 1.0)) throw std::invalid_argument("target ratio must exceed 1");

  const auto jobs = instance.jobs();
  const int m = instance.machines();
  EngineState st;
  st.machine_free.assign(static_cast<std::size_t>(m), 0.0);
  std::map<int, double> last_delay;
  std::size_t next = 0;
  bool first_decision = true;
  Schedule schedule;

  while (st.log.size() < jobs.size()) {
    double start_at = kInf;
    if (!st.queue.empty()) {
      const Job& h = st.queue.head();
      if (!st.head || *st.head != h.id) {
        const int recv = earliest_free(st.machine_free);
        double floor = std::max(h.r, st.now);
        if (options.inherit_displaced_delay) {
          if (auto it = last_delay.find(h.id); it != last_delay.end()) floor = std::max(floor, it->second);
        }
        double delay = floor;
        if (h.p > 0.0) {
          DelayQuery q;
          q.p = h.p;
          q.floor = floor;
          q.target = target;
          for (int i = 0; i < m; ++i) {
            if (i == recv) continue;
            if (st.machine_free[static_cast<std::size_t>(i)] <= st.now)
              ++q.idle_count;
            else
              q.fixed.push_back(st.machine_free[static_cast<std::size_t>(i)]);
          }
          delay = critical_delay(q);
        }
        if (first_decision && options.first_delay_override) delay = *options.first_delay_override;
        first_decision = false;
        st.head = h.id;
        st.head_delay = delay;
        st.head_machine = recv;
        last_delay[h.id] = delay;
      }
      start_at = std::max(st.head_delay, st.machine_free[static_cast<std::size_t>(st.head_machine)]);
    }
    const double arrival_at = next < jobs.size() ? jobs[next].r : kInf;

    if (start_at <= arrival_at) {
      const Job h = st.queue.head();
      st.now = start_at;
      st.log.push_back({h.id, st.head_delay, start_at, st.head_machine + 1, st.queue.size()});
      schedule.add({h.id, st.head_machine + 1, start_at});
      st.machine_free[static_cast<std::size_t>(st.head_machine)] = start_at + h.p;
      st.queue.pop();
      st.head.reset();
    } else {
      st.now = arrival_at;
      while (next < jobs.size() && jobs[next].r == arrival_at) st.queue.push(jobs[next++]);
    }
  }
  return {std::move(schedule), std::move(st.log)};
}

SecondGenerationReport second_generation_delays(int machines) {
  return second_generation_delays(machines, solve_target_ratio(machines).ratio);
}

SecondGenerationReport second_generation_delays(int machines, double target) {
  if (machines < 2) throw std::invalid_argument("second generation needs at least two machines");
  std::vector<Job> jobs;
  for (int j = 1; j <= 2 * machines; ++j) jobs.push_back({j, 1.0, 0.0, 1.0});
  const Instance inst(machines, std::move(jobs));
  const RunResult res = run(inst, target);

  SecondGenerationReport rep;
  rep.machines = machines;
  rep.target = target;
  std::vector<double> completion(static_cast<std::size_t>(machines), 0.0);
  for (const DecisionRecord& d : res.log) {
    double& prev = completion[static_cast<std::size_t>(d.machine - 1)];
    if (d.job > machines) {
      const double extra = d.start - prev;
      rep.extra_delay.push_back(extra);
      if (extra > kExtraDelayEps) rep.delayed_jobs.push_back(d.job);
      rep.max_extra_delay = std::max(rep.max_extra_delay, extra);
    }
    prev = d.start + 1.0;
  }
  return rep;
}

RatioReport make_ratio_report(double online_total, double oracle_total, double target) {
  if (!(oracle_total > 0.0)) throw std::invalid_argument("oracle total must be > 0");
  RatioReport rep;
  rep.online_total = online_total;
  rep.oracle_total = oracle_total;
  rep.ratio = online_total / oracle_total;
  rep.target = target;
  rep.within_target = rep.ratio <= target + kTimeEps;
  return rep;
}

RatioReport competitive_ratio_report(const Instance& instance, double target, double oracle_total) {
  const RunResult res = run(instance, target);
  return make_ratio_report(total_completion_time(res.schedule, instance), oracle_total, target);
}

}  // namespace dspt
