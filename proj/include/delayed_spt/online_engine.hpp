#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "delayed_spt/core.hpp"

namespace dspt {

/// Pending jobs ordered by (p, r, id); the head is the shortest job.
class SptQueue {
 public:
  void push(const Job& job) { jobs_.insert(job); }
  const Job& head() const { return *jobs_.begin(); }
  void pop() { jobs_.erase(jobs_.begin()); }
  bool empty() const { return jobs_.empty(); }
  std::size_t size() const { return jobs_.size(); }

 private:
  struct Order {
    bool operator()(const Job& a, const Job& b) const {
      if (a.p != b.p) return a.p < b.p;
      if (a.r != b.r) return a.r < b.r;
      return a.id < b.id;
    }
  };
  std::set<Job, Order> jobs_;
};

/// One start event.
struct DecisionRecord {
  int job = 0;
  double computed_delay = 0.0;
  double start = 0.0;
  int machine = 1;  // 1-based
  std::size_t queue_depth = 0;  // pending jobs, including the one started

  bool operator==(const DecisionRecord&) const = default;
};

struct EngineOptions {
  /// A head that is displaced and later returns keeps its old delay as a floor.
  bool inherit_displaced_delay = false;
  /// Replaces the delay computed for the very first head job.
  std::optional<double> first_delay_override;
};

struct EngineState {
  double now = 0.0;
  std::vector<double> machine_free;
  SptQueue queue;
  std::optional<int> head;
  double head_delay = 0.0;
  int head_machine = 0;  // 0-based
  std::vector<DecisionRecord> log;
};

struct RunResult {
  Schedule schedule;
  std::vector<DecisionRecord> log;
};

/// Delayed-SPT online scheduling.
///
/// Events are job arrivals, machine completions and the expiry of the head's
/// delay. Whenever the head of the SPT queue changes, its delay is computed
/// once with critical_delay against `target`, using the earliest free machine
/// (lowest index on ties) as the receiving machine. The head starts at
/// max(delay, receiving machine free time). A start due at the same instant
/// as an arrival happens first.
RunResult run(const Instance& instance, double target, const EngineOptions& options = {});

struct SecondGenerationReport {
  int machines = 0;
  double target = 0.0;
  std::vector<double> extra_delay;  // jobs m+1..2m, in order
  std::vector<int> delayed_jobs;    // 1-based job indices with extra delay
  double max_extra_delay = 0.0;
};

/// Runs 2m unit jobs released at 0 and measures the idle time inserted before
/// each job of the second generation on its machine. The default target is
/// the solved R_m.
SecondGenerationReport second_generation_delays(int machines);
SecondGenerationReport second_generation_delays(int machines, double target);

struct RatioReport {
  double online_total = 0.0;
  double oracle_total = 0.0;
  double ratio = 0.0;
  double target = 0.0;
  bool within_target = false;
};

RatioReport competitive_ratio_report(const Instance& instance, double target, double oracle_total);
RatioReport make_ratio_report(double online_total, double oracle_total, double target);

}  // namespace dspt
