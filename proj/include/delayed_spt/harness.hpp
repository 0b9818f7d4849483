#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "delayed_spt/core.hpp"

namespace dspt {

/// Worker count: DELAYED_SPT_THREADS if set and positive, else hardware
/// concurrency (at least 1).
int worker_count();

/// Calls fn(i) for i in [0, n) on up to worker_count() threads. The first
/// exception thrown by any call is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// mt19937_64 with a portable double in [0, 1) built from the top 53 bits;
/// std::uniform_real_distribution is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Integer in [lo, hi].
  int integer(int lo, int hi) {
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 engine_;
};

/// Seed of sweep instance `index` under base seed `seed` (splitmix64).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// 1..max_jobs jobs, first release at 0. Processing times and releases are
/// drawn on a coarse grid half the time so ties and simultaneous events occur.
Instance random_instance(Rng& rng, int machines, int max_jobs);

// Tables, printed at five decimals.

struct TableCell {
  std::string label;
  double value;
};

struct TableRow {
  int m;
  std::vector<TableCell> cells;
};

struct Table {
  std::string name;
  std::vector<TableRow> rows;
};

/// table1: R_m. `large` adds m = 10^4.
Table ratio_table(bool large);
/// table2: t_1..t_m for m = 2..10.
Table delay_table();
/// table3: t_m for m = 10, 100, 1000 (and 10^4 with `large`).
Table last_delay_table(bool large);
/// table4: first and last delayed second-generation job and the largest
/// extra delay for m = 3..10 (and 100 with `large`).
Table second_generation_table(bool large);

/// CSV with a header line, values at 5 decimals.
std::string table_csv(const Table& table);
std::string table_json(const Table& table);

// Acceptance suite.

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::vector<std::string> failures;  // measured vs expected for each failing check
  std::string summary;                // one line of measured values
  double seconds = 0.0;
};

enum class VerifyLevel { Fast, Full };

/// Fast runs criteria 1-6, 9 and 10; Full adds 7 and 8.
std::vector<CriterionResult> run_acceptance(VerifyLevel level, std::uint64_t seed);
CriterionResult run_criterion(int id, std::uint64_t seed);

std::string criterion_line(const CriterionResult& result);

}  // namespace dspt
