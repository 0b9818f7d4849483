#include "delayed_spt/core.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <sstream>

namespace dspt {

namespace {

bool by_release_then_id(const Job& a, const Job& b) {
  if (a.r != b.r) return a.r < b.r;
  return a.id < b.id;
}

std::string job_message(int id, const std::string& what) {
  std::ostringstream os;
  os << "job " << id << ": " << what;
  return os.str();
}

}  // namespace

Instance::Instance(int machines, std::vector<Job> jobs) : machines_(machines), jobs_(std::move(jobs)) {
  if (machines_ < 1) throw std::invalid_argument("instance needs at least one machine");
  for (const Job& j : jobs_) {
    if (!std::isfinite(j.p) || j.p < 0.0) throw std::invalid_argument(job_message(j.id, "processing time must be >= 0"));
    if (!std::isfinite(j.r) || j.r < 0.0) throw std::invalid_argument(job_message(j.id, "release time must be >= 0"));
    if (!std::isfinite(j.w) || j.w <= 0.0) throw std::invalid_argument(job_message(j.id, "weight must be > 0"));
  }
  std::stable_sort(jobs_.begin(), jobs_.end(), by_release_then_id);
  if (!jobs_.empty() && jobs_.front().r != 0.0)
    throw std::invalid_argument("first release time must be 0");
  for (std::size_t i = 0; i < jobs_.size(); ++i) {
    if (!index_.emplace(jobs_[i].id, i).second)
      throw std::invalid_argument(job_message(jobs_[i].id, "duplicate id"));
  }
}

const Job& Instance::job(int id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw std::out_of_range(job_message(id, "not in instance"));
  return jobs_[it->second];
}

Instance Instance::scaled(double factor) const {
  if (!(factor > 0.0)) throw std::invalid_argument("scale factor must be > 0");
  std::vector<Job> jobs(jobs_.begin(), jobs_.end());
  for (Job& j : jobs) {
    j.p *= factor;
    j.r *= factor;
  }
  return Instance(machines_, std::move(jobs));
}

const Assignment& Schedule::find(int job_id) const {
  for (const Assignment& a : assignments_)
    if (a.job_id == job_id) return a;
  throw std::out_of_range(job_message(job_id, "not assigned"));
}

std::vector<Violation> validate_schedule(const Schedule& schedule, const Instance& instance) {
  std::vector<Violation> out;
  std::map<int, int> seen;
  std::vector<std::vector<std::pair<double, const Job*>>> per_machine(instance.machines());

  for (const Assignment& a : schedule.assignments()) {
    if (!instance.contains(a.job_id)) {
      out.push_back({Violation::Kind::UnknownJob, a.job_id, job_message(a.job_id, "not in instance")});
      continue;
    }
    const Job& j = instance.job(a.job_id);
    if (++seen[a.job_id] == 2)
      out.push_back({Violation::Kind::Duplicate, a.job_id, job_message(a.job_id, "assigned more than once")});
    if (a.machine < 1 || a.machine > instance.machines()) {
      out.push_back({Violation::Kind::MachineRange, a.job_id, job_message(a.job_id, "machine index out of range")});
      continue;
    }
    if (!std::isfinite(a.start) || a.start < j.r - kTimeEps)
      out.push_back({Violation::Kind::BeforeRelease, a.job_id, job_message(a.job_id, "starts before its release")});
    per_machine[a.machine - 1].emplace_back(a.start, &j);
  }

  for (const Job& j : instance.jobs())
    if (!seen.count(j.id)) out.push_back({Violation::Kind::Missing, j.id, job_message(j.id, "not assigned")});

  for (auto& list : per_machine) {
    // zero-length jobs are points and cannot overlap anything
    std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first < b.first;
      return a.second->p < b.second->p;
    });
    double busy_until = -1.0;
    for (const auto& [start, job] : list) {
      if (job->p == 0.0) continue;
      if (start < busy_until - kTimeEps)
        out.push_back({Violation::Kind::Overlap, job->id, job_message(job->id, "overlaps another job on its machine")});
      busy_until = std::max(busy_until, start + job->p);
    }
  }
  return out;
}

namespace {

void require_valid(const Schedule& schedule, const Instance& instance) {
  auto v = validate_schedule(schedule, instance);
  if (!v.empty()) throw ScheduleError(v.front().job_id, "invalid schedule: " + v.front().message);
}

}  // namespace

double total_completion_time(const Schedule& schedule, const Instance& instance) {
  require_valid(schedule, instance);
  double total = 0.0;
  for (const Assignment& a : schedule.assignments()) total += a.start + instance.job(a.job_id).p;
  return total;
}

double total_weighted_completion_time(const Schedule& schedule, const Instance& instance) {
  require_valid(schedule, instance);
  double total = 0.0;
  for (const Assignment& a : schedule.assignments()) {
    const Job& j = instance.job(a.job_id);
    total += j.w * (a.start + j.p);
  }
  return total;
}

double makespan(const Schedule& schedule, const Instance& instance) {
  require_valid(schedule, instance);
  double c = 0.0;
  for (const Assignment& a : schedule.assignments()) c = std::max(c, a.start + instance.job(a.job_id).p);
  return c;
}

Schedule spt_offline(const Instance& instance) {
  std::vector<Job> order(instance.jobs().begin(), instance.jobs().end());
  for (const Job& j : order)
    if (j.r != 0.0) throw std::invalid_argument(job_message(j.id, "spt_offline requires release time 0"));
  std::stable_sort(order.begin(), order.end(), [](const Job& a, const Job& b) {
    if (a.p != b.p) return a.p < b.p;
    return by_release_then_id(a, b);
  });

  using Slot = std::pair<double, int>;  // (free time, machine)
  std::priority_queue<Slot, std::vector<Slot>, std::greater<>> free;
  for (int i = 1; i <= instance.machines(); ++i) free.emplace(0.0, i);

  Schedule s;
  for (const Job& j : order) {
    auto [t, machine] = free.top();
    free.pop();
    s.add({j.id, machine, t});
    free.emplace(t + j.p, machine);
  }
  return s;
}

int count_inversions(const Schedule& schedule, const Instance& instance) {
  std::vector<Assignment> order(schedule.assignments().begin(), schedule.assignments().end());
  std::stable_sort(order.begin(), order.end(),
                   [](const Assignment& a, const Assignment& b) { return a.start < b.start; });
  int n = 0;
  for (std::size_t i = 1; i < order.size(); ++i)
    if (instance.job(order[i].job_id).p < instance.job(order[i - 1].job_id).p) ++n;
  return n;
}

}  // namespace dspt
