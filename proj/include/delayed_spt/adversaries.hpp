#pragma once

#include <optional>

#include "delayed_spt/bound_solver.hpp"
#include "delayed_spt/core.hpp"
#include "delayed_spt/key_pattern.hpp"

namespace dspt {

/// m unit jobs released at 0.
Instance long_jobs_instance(int machines);

struct KeyPatternInstance {
  Instance instance;
  double release = 0.0;            // burst submission time t_i
  WorstCase worst;                 // of the profile the burst meets
  double work = 0.0;               // burst work that reaches worst.makespan
  long burst_jobs = 0;
};

/// i long unit jobs at 0 plus a burst of delta-jobs released at t_i, sized so
/// the burst reaches the critical makespan of the profile
/// {t_1 + 1, ..., t_i + 1, t_i, ..., t_i}: k = ceil(work / delta) with
/// work = m * C - sum(clamped availabilities).
KeyPatternInstance key_pattern_instance(int machines, int index, double delta, const BoundSolution& solution);

/// Two machines: one unit job at 0 and k - 1 jobs of length p2 released at
/// `release`; k counts every job, the long one included. The default release
/// is the solved t_1 for two machines, so the burst arrives right after the
/// long job starts.
Instance single_long_burst_instance(double p2, int k, std::optional<double> release = std::nullopt);

/// Three machines: one unit job at 0 and two jobs of length p2 released at
/// `release` (defaults: 0.58679 and the solved t_1 for three machines).
/// With companions, two more unit jobs are released at 0.
Instance tightness_instance_m3(bool with_companions, std::optional<double> p2 = std::nullopt,
                               std::optional<double> release = std::nullopt);

/// Constants of the two-machine weighted construction.
struct WeightedSetup {
  double first_start;  // t_1 for two machines
  double medium_p = 0.3;
  double target;       // R_2
};

/// Solved t_1 and R_2 with p2 = 0.3.
const WeightedSetup& weighted_setup();

/// Interactive weighted adversary on two machines: two unit jobs at 0, then a
/// heavy medium job at the algorithm's first start, then (in the limit) a
/// burst of heavy zero-length jobs at the medium job's start.
class WeightedAdversary {
 public:
  enum class Phase { LongJobs, MediumJob, Burst };

  explicit WeightedAdversary(double medium_weight, const WeightedSetup& setup = weighted_setup());

  Phase phase() const { return phase_; }
  /// Jobs submitted at time 0.
  Instance opening() const;
  /// The algorithm started its first long job; returns the medium job.
  Job observe_first_start(double t1);
  /// The algorithm started the medium job at t_prime; the burst follows.
  void observe_medium_start(double t_prime);

  /// Exact ratio after the medium job.
  double medium_ratio() const;
  /// Ratio with an infinitely heavy medium job.
  double medium_limit_ratio() const;
  /// Ratio once infinitely heavy zero-length jobs arrive at t_prime.
  double burst_limit_ratio() const;

 private:
  WeightedSetup setup_;
  Phase phase_ = Phase::LongJobs;
  double t1_observed_ = 0.0;
  double t_prime_ = 0.0;
  double w2_;
};

/// Ratio after the medium job when the first long job started at the solved
/// t_1 and the medium job (p = 0.3, weight w2) started at t_prime.
double weighted_adversary_play(double t_prime, double w2);
double weighted_medium_limit(double t_prime);
double weighted_burst_limit(double t_prime);

struct WeightedSeparation {
  double bound;      // inf over t' of the larger limit ratio
  double crossover;  // t' where both limits agree
};

/// Minimizes max(medium limit, burst limit) over t' >= t_1 by bisection on
/// their difference; the medium limit increases and the burst limit
/// decreases in t'.
WeightedSeparation weighted_separation_bound();

/// t' at which the medium limit reaches R_2 and at which the burst limit
/// falls to R_2.
double weighted_medium_threshold();
double weighted_burst_threshold();

}  // namespace dspt
