#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "delayed_spt/core.hpp"

namespace dspt {

class InstanceTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Exhaustive branch and bound over per-machine job sequences. Machines are
/// identical, so machine i+1 is only opened for the smallest unassigned job id;
/// within a fixed sequence each job starts at max(release, predecessor end).
/// Ties keep the first optimum found in lexicographic order.
///
/// Throws InstanceTooLarge when the instance has more than `limit` jobs.
Schedule exact_optimal(const Instance& instance, int limit = 8);

/// Optimal total for k jobs of length p released at r on two machines.
/// Throws std::invalid_argument for machines != 2.
double uniform_optimal_total(int k, double p, double r, int machines = 2);

struct FamilyTotals {
  int k = 0;
  double p = 0.0;
  double r = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
  double kappa = 0.0;  // min(k, (m2 - m1) / p)
  double restricted_total = 0.0;
  double optimal_total = 0.0;
  bool upper_bound = false;  // kappa not integral: restricted_total is an upper bound
};

/// Non-delay totals of k jobs of length p released at r on two machines that
/// become free at m1 <= m2, against the unrestricted optimum.
FamilyTotals restricted_family_totals(double m1, double m2, int k, double p, double r);

/// List schedule: jobs in `order` each go to the earliest free machine
/// (lowest index on ties) at max(release, free time).
Schedule list_schedule(const Instance& instance, std::span<const int> order);

/// Better of the release-order and SPT-order list schedules. An upper bound
/// on the optimum, used for instances too large to enumerate.
Schedule reference_schedule(const Instance& instance);

/// max(sum of r + p, SPT total with all releases dropped).
double completion_lower_bound(const Instance& instance);

}  // namespace dspt
