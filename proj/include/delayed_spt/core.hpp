#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace dspt {

/// Absolute tolerance for comparing times.
inline constexpr double kTimeEps = 1e-9;

struct Job {
  int id = 0;
  double p = 0.0;  // processing time
  double r = 0.0;  // release (submission) time
  double w = 1.0;  // weight
};

/// Problem input: a machine count and jobs ordered by release time.
///
/// The constructor validates job fields, rejects duplicate ids, and sorts the
/// jobs by (release, id). A nonempty instance must have its first release at
/// time 0.
class Instance {
 public:
  Instance(int machines, std::vector<Job> jobs);

  int machines() const { return machines_; }
  std::span<const Job> jobs() const { return jobs_; }
  std::size_t size() const { return jobs_.size(); }
  bool empty() const { return jobs_.empty(); }

  /// Throws std::out_of_range for unknown ids.
  const Job& job(int id) const;
  bool contains(int id) const { return index_.count(id) != 0; }

  /// Same jobs with every processing and release time multiplied by `factor`.
  Instance scaled(double factor) const;

 private:
  int machines_;
  std::vector<Job> jobs_;
  std::unordered_map<int, std::size_t> index_;
};

struct Assignment {
  int job_id = 0;
  int machine = 1;  // 1-based
  double start = 0.0;
};

class Schedule {
 public:
  Schedule() = default;
  explicit Schedule(std::vector<Assignment> assignments)
      : assignments_(std::move(assignments)) {}

  void add(Assignment a) { assignments_.push_back(a); }
  std::span<const Assignment> assignments() const { return assignments_; }
  std::size_t size() const { return assignments_.size(); }

  /// Start time of `job_id`; throws std::out_of_range if it is not assigned.
  const Assignment& find(int job_id) const;

 private:
  std::vector<Assignment> assignments_;
};

struct Violation {
  enum class Kind { Overlap, BeforeRelease, Missing, Duplicate, MachineRange, UnknownJob };
  Kind kind;
  int job_id;
  std::string message;
};

class ScheduleError : public std::runtime_error {
 public:
  ScheduleError(int job_id, const std::string& what)
      : std::runtime_error(what), job_id_(job_id) {}
  int job_id() const { return job_id_; }

 private:
  int job_id_;
};

/// Empty result means the schedule is valid for the instance.
std::vector<Violation> validate_schedule(const Schedule& schedule, const Instance& instance);

/// Sum of completion times. Throws ScheduleError naming the first offending job
/// when the schedule is invalid.
double total_completion_time(const Schedule& schedule, const Instance& instance);
double total_weighted_completion_time(const Schedule& schedule, const Instance& instance);
double makespan(const Schedule& schedule, const Instance& instance);

/// Non-delay SPT schedule; optimal when every job is released at 0.
/// Ties broken by release time, then id. Throws std::invalid_argument if any
/// release time is nonzero.
Schedule spt_offline(const Instance& instance);

/// Number of starts where a job begins directly after a longer job (in
/// global start order).
int count_inversions(const Schedule& schedule, const Instance& instance);

}  // namespace dspt
