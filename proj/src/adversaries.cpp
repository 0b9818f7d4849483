#include "delayed_spt/adversaries.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace dspt {

namespace {

// Root of an increasing function on [lo, hi].
double bisect_increasing(const std::function<double(double)>& f, double lo, double hi) {
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Instance long_jobs_instance(int machines) {
  if (machines < 1) throw std::invalid_argument("machine count must be >= 1");
  std::vector<Job> jobs;
  for (int j = 1; j <= machines; ++j) jobs.push_back({j, 1.0, 0.0, 1.0});
  return Instance(machines, std::move(jobs));
}

KeyPatternInstance key_pattern_instance(int machines, int index, double delta, const BoundSolution& solution) {
  if (index < 1 || index > machines) throw std::invalid_argument("pattern index must lie in [1, m]");
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be > 0");
  if (static_cast<int>(solution.delays.size()) != machines)
    throw std::invalid_argument("bound solution is for a different machine count");

  const double release = solution.delays[static_cast<std::size_t>(index - 1)];
  AvailabilityProfile profile;
  profile.release = release;
  for (int h = 0; h < machines; ++h)
    profile.availability.push_back(h < index ? solution.delays[static_cast<std::size_t>(h)] + 1.0 : release);

  const WorstCase worst = worst_case_ratio(profile);
  double work = 0.0;
  for (double a : profile.availability) work += worst.makespan - std::min(std::max(a, release), worst.makespan);
  const long k = std::max(1L, static_cast<long>(std::ceil(work / delta)));

  std::vector<Job> jobs;
  for (int j = 1; j <= index; ++j) jobs.push_back({j, 1.0, 0.0, 1.0});
  for (long b = 0; b < k; ++b) jobs.push_back({index + 1 + static_cast<int>(b), delta, release, 1.0});
  return {Instance(machines, std::move(jobs)), release, worst, work, k};
}

Instance single_long_burst_instance(double p2, int k, std::optional<double> release) {
  if (!(p2 > 0.0 && p2 < 1.0)) throw std::invalid_argument("p2 must lie in (0, 1)");
  if (k < 2) throw std::invalid_argument("k counts the long job and needs at least one burst job");
  const double r = release.value_or(solved(2).delays.front());
  std::vector<Job> jobs{{1, 1.0, 0.0, 1.0}};
  for (int j = 2; j <= k; ++j) jobs.push_back({j, p2, r, 1.0});
  return Instance(2, std::move(jobs));
}

Instance tightness_instance_m3(bool with_companions, std::optional<double> p2, std::optional<double> release) {
  const double p = p2.value_or(0.58679);
  const double r = release.value_or(solved(3).delays.front());
  std::vector<Job> jobs{{1, 1.0, 0.0, 1.0}};
  if (with_companions) {
    jobs.push_back({4, 1.0, 0.0, 1.0});
    jobs.push_back({5, 1.0, 0.0, 1.0});
  }
  jobs.push_back({2, p, r, 1.0});
  jobs.push_back({3, p, r, 1.0});
  return Instance(3, std::move(jobs));
}

const WeightedSetup& weighted_setup() {
  static const WeightedSetup setup{solved(2).delays.front(), 0.3, solved(2).ratio};
  return setup;
}

WeightedAdversary::WeightedAdversary(double medium_weight, const WeightedSetup& setup)
    : setup_(setup), w2_(medium_weight) {
  if (!(medium_weight > 0.0)) throw std::invalid_argument("medium job weight must be > 0");
}

Instance WeightedAdversary::opening() const {
  return Instance(2, {{1, 1.0, 0.0, 1.0}, {2, 1.0, 0.0, 1.0}});
}

Job WeightedAdversary::observe_first_start(double t1) {
  if (phase_ != Phase::LongJobs) throw std::logic_error("first start already observed");
  if (!(t1 >= 0.0)) throw std::invalid_argument("start time must be >= 0");
  t1_observed_ = t1;
  phase_ = Phase::MediumJob;
  return {3, setup_.medium_p, t1, w2_};
}

void WeightedAdversary::observe_medium_start(double t_prime) {
  if (phase_ != Phase::MediumJob) throw std::logic_error("medium job not submitted yet");
  if (t_prime < t1_observed_) throw std::invalid_argument("medium job cannot start before its release");
  t_prime_ = t_prime;
  phase_ = Phase::Burst;
}

double WeightedAdversary::medium_ratio() const {
  if (phase_ != Phase::Burst) throw std::logic_error("medium job not started yet");
  const double p2 = setup_.medium_p;
  const double t1 = t1_observed_;
  const double online = t1 + 1.0 + w2_ * (t_prime_ + p2) + t_prime_ + 1.0 + p2;
  const double optimal = 1.0 + w2_ * (t1 + p2) + t1 + 1.0 + p2;
  return online / optimal;
}

double WeightedAdversary::medium_limit_ratio() const {
  if (phase_ != Phase::Burst) throw std::logic_error("medium job not started yet");
  return (t_prime_ + setup_.medium_p) / (t1_observed_ + setup_.medium_p);
}

double WeightedAdversary::burst_limit_ratio() const {
  if (phase_ != Phase::Burst) throw std::logic_error("medium job not started yet");
  // online runs the zero-length jobs after the medium job, the optimum at t'
  return 1.0 + setup_.medium_p / t_prime_;
}

namespace {

WeightedAdversary played(double t_prime, double w2) {
  const WeightedSetup& s = weighted_setup();
  if (t_prime < s.first_start) throw std::invalid_argument("t' must be at least t_1");
  WeightedAdversary adv(w2, s);
  adv.observe_first_start(s.first_start);
  adv.observe_medium_start(t_prime);
  return adv;
}

}  // namespace

double weighted_adversary_play(double t_prime, double w2) { return played(t_prime, w2).medium_ratio(); }
double weighted_medium_limit(double t_prime) { return played(t_prime, 1.0).medium_limit_ratio(); }
double weighted_burst_limit(double t_prime) { return played(t_prime, 1.0).burst_limit_ratio(); }

WeightedSeparation weighted_separation_bound() {
  const double t1 = weighted_setup().first_start;
  const double cross = bisect_increasing(
      [](double t) { return weighted_medium_limit(t) - weighted_burst_limit(t); }, t1, 2.0);
  return {std::max(weighted_medium_limit(cross), weighted_burst_limit(cross)), cross};
}

double weighted_medium_threshold() {
  const WeightedSetup& s = weighted_setup();
  return bisect_increasing([&](double t) { return weighted_medium_limit(t) - s.target; }, s.first_start, 2.0);
}

double weighted_burst_threshold() {
  const WeightedSetup& s = weighted_setup();
  return bisect_increasing([&](double t) { return s.target - weighted_burst_limit(t); }, s.first_start, 2.0);
}

}  // namespace dspt
