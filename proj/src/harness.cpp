#include "delayed_spt/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "delayed_spt/adversaries.hpp"
#include "delayed_spt/bound_solver.hpp"
#include "delayed_spt/key_pattern.hpp"
#include "delayed_spt/offline_oracle.hpp"
#include "delayed_spt/online_engine.hpp"

namespace dspt {

int worker_count() {
  if (const char* env = std::getenv("DELAYED_SPT_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<int>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(worker_count()), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Instance random_instance(Rng& rng, int machines, int max_jobs) {
  const int n = rng.integer(1, max_jobs);
  const bool grid = rng.uniform() < 0.5;
  auto draw = [&](double lo, double hi) {
    const double x = rng.uniform(lo, hi);
    return grid ? std::round(x * 10.0) / 10.0 : x;
  };
  std::vector<Job> jobs;
  for (int j = 1; j <= n; ++j) {
    const double r = j == 1 ? 0.0 : draw(0.0, 2.0);
    jobs.push_back({j, std::clamp(draw(0.1, 2.0), 0.1, 2.0), r, 1.0});
  }
  return Instance(machines, std::move(jobs));
}

// ---------------------------------------------------------------- tables

namespace {

std::vector<int> ratio_table_machines(bool large) {
  std::vector<int> ms{2, 3, 4, 5, 10, 100, 1000};
  // m = 10^4 takes minutes; larger m is out of reach for the exact solver
  if (large) ms.push_back(10000);
  return ms;
}

// Solves every m once, in parallel, in input order.
std::vector<const BoundSolution*> solve_all(const std::vector<int>& ms) {
  std::vector<const BoundSolution*> out(ms.size());
  parallel_for(ms.size(), [&](std::size_t i) { out[i] = &solved(ms[i]); });
  return out;
}

std::string fmt5(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.5f", x);
  return buf;
}

}  // namespace

Table ratio_table(bool large) {
  const auto ms = ratio_table_machines(large);
  const auto sol = solve_all(ms);
  Table t{"table1", {}};
  for (std::size_t i = 0; i < ms.size(); ++i) t.rows.push_back({ms[i], {{"R_m", sol[i]->ratio}}});
  return t;
}

Table delay_table() {
  std::vector<int> ms;
  for (int m = 2; m <= 10; ++m) ms.push_back(m);
  const auto sol = solve_all(ms);
  Table t{"table2", {}};
  for (std::size_t i = 0; i < ms.size(); ++i) {
    TableRow row{ms[i], {}};
    for (std::size_t h = 0; h < sol[i]->delays.size(); ++h)
      row.cells.push_back({"t_" + std::to_string(h + 1), sol[i]->delays[h]});
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table last_delay_table(bool large) {
  std::vector<int> ms{10, 100, 1000};
  if (large) ms.push_back(10000);
  const auto sol = solve_all(ms);
  Table t{"table3", {}};
  for (std::size_t i = 0; i < ms.size(); ++i) t.rows.push_back({ms[i], {{"t_m", sol[i]->delays.back()}}});
  return t;
}

Table second_generation_table(bool large) {
  std::vector<int> ms;
  for (int m = 3; m <= 10; ++m) ms.push_back(m);
  if (large) ms.push_back(100);
  std::vector<SecondGenerationReport> reps(ms.size());
  parallel_for(ms.size(), [&](std::size_t i) { reps[i] = second_generation_delays(ms[i]); });
  Table t{"table4", {}};
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const auto& d = reps[i].delayed_jobs;
    const double first = d.empty() ? 0.0 : d.front();
    const double last = d.empty() ? 0.0 : d.back();
    t.rows.push_back({ms[i], {{"first_job", first}, {"last_job", last}, {"delta_max", reps[i].max_extra_delay}}});
  }
  return t;
}

std::string table_csv(const Table& table) {
  // Rows may differ in width (delay table); the header covers the widest row.
  std::size_t widest = 0;
  for (std::size_t i = 0; i < table.rows.size(); ++i)
    if (table.rows[i].cells.size() > table.rows[widest].cells.size()) widest = i;
  std::ostringstream os;
  os << "m";
  if (!table.rows.empty())
    for (const auto& c : table.rows[widest].cells) os << ',' << c.label;
  os << '\n';
  for (const auto& row : table.rows) {
    os << row.m;
    for (const auto& c : row.cells) {
      // job indices are integers
      if (c.label.ends_with("_job"))
        os << ',' << static_cast<long>(c.value);
      else
        os << ',' << fmt5(c.value);
    }
    os << '\n';
  }
  return os.str();
}

std::string table_json(const Table& table) {
  nlohmann::json doc;
  doc["table"] = table.name;
  doc["rows"] = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json r{{"m", row.m}};
    for (const auto& c : row.cells) r[c.label] = c.value;
    doc["rows"].push_back(r);
  }
  return doc.dump(2);
}

// ---------------------------------------------------------------- acceptance

namespace {

using Clock = std::chrono::steady_clock;

struct Checker {
  CriterionResult& res;
  std::ostringstream summary;

  void near(const std::string& what, double measured, double expected, double tol) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s=%.6f (want %.5f +-%g)", what.c_str(), measured, expected, tol);
    if (!(std::abs(measured - expected) <= tol)) res.failures.push_back(buf);
    note(what, measured);
  }
  void below(const std::string& what, double measured, double bound) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s=%.8f (want <= %.8f)", what.c_str(), measured, bound);
    if (!(measured <= bound)) res.failures.push_back(buf);
    note(what, measured);
  }
  // timing limits are checked but kept out of the summary so output stays reproducible
  void deadline(const std::string& what, double secs, double limit) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s took %.1f s (limit %.0f s)", what.c_str(), secs, limit);
    if (!(secs <= limit)) res.failures.push_back(buf);
  }
  void truth(const std::string& what, bool ok, const std::string& detail = "") {
    if (!ok) res.failures.push_back(what + (detail.empty() ? "" : ": " + detail));
  }
  void note(const std::string& what, double v) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s%s=%.5f", summary.tellp() > 0 ? " " : "", what.c_str(), v);
    summary << buf;
  }
};

void criterion_table1(Checker& c) {
  const std::vector<std::pair<int, double>> want{{2, 1.54610}, {3, 1.45961}, {4, 1.44219},
                                                 {5, 1.42907}, {10, 1.39529}, {100, 1.36905}};
  const auto start = Clock::now();
  std::vector<BoundSolution> got(want.size());
  parallel_for(want.size(), [&](std::size_t i) { got[i] = solve_target_ratio(want[i].first); });
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  for (std::size_t i = 0; i < want.size(); ++i)
    c.near("R_" + std::to_string(want[i].first), got[i].ratio, want[i].second, 1e-4);
  c.deadline("solving", secs, 10.0);
}

const std::vector<std::vector<double>>& table2_values() {
  static const std::vector<std::vector<double>> v{
      {0.23898, 0.85321},
      {0.02991, 0.50413, 0.84479},
      {0, 0.30180, 0.61584, 0.85185},
      {0, 0.16459, 0.44983, 0.67546, 0.85549},
      {0, 0.06718, 0.32491, 0.53758, 0.71155, 0.85607},
      {0, 0, 0.22774, 0.42718, 0.59435, 0.73528, 0.85585},
      {0, 0, 0.14751, 0.33596, 0.49730, 0.63520, 0.75411, 0.85803},
      {0, 0, 0.08259, 0.25969, 0.41439, 0.54851, 0.66526, 0.76780, 0.85888},
      {0, 0, 0.02397, 0.19537, 0.34308, 0.47295, 0.58711, 0.68805, 0.77804, 0.85895}};
  return v;
}

void criterion_table2(Checker& c) {
  const auto& want = table2_values();
  std::vector<int> ms;
  for (int m = 2; m <= 10; ++m) ms.push_back(m);
  const auto sol = solve_all(ms);
  int cells = 0, bad = 0;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    for (std::size_t h = 0; h < want[i].size(); ++h) {
      ++cells;
      const double got = sol[i]->delays[h];
      if (std::abs(got - want[i][h]) > 1e-4) {
        ++bad;
        char buf[128];
        std::snprintf(buf, sizeof buf, "m=%d t_%zu=%.6f (want %.5f +-1e-4)", ms[i], h + 1, got, want[i][h]);
        c.res.failures.push_back(buf);
      }
    }
  }
  c.summary << cells << " cells, " << bad << " off";
}

void criterion_table3(Checker& c) {
  const std::vector<std::pair<int, double>> want{{10, 0.85895}, {100, 0.86414}, {1000, 0.85999}};
  for (const auto& [m, t] : want) {
    const auto start = Clock::now();
    const BoundSolution s = solve_target_ratio(m);
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    c.near("t_" + std::to_string(m), s.delays.back(), t, 2e-3);
    if (m == 1000) c.deadline("m=1000", secs, 60.0);
  }
}

void criterion_constants(Checker& c) {
  const double r2 = solved(2).ratio;
  const double t1 = solved(2).delays.front();
  const TwoMachineCoefficients k = two_machine_coefficients(r2);
  c.near("early_p", k.early_p, 1.28508, 1e-5);
  c.near("early_m1", k.early_m1, 0.19288, 1e-5);
  c.near("late_p", k.late_p, 0.09219, 1e-5);
  c.near("late_m1", k.late_m1, 0.61423, 1e-5);
  const double s = std::sqrt(r2 - 1.0);
  const double lhs = (1.0 - s) / (2.0 * r2 - 1.0 - s);
  c.near("identity_lhs", lhs, t1 / (1.0 + t1), 1e-5);
  c.near("identity_rhs", t1 / (1.0 + t1), 0.19288, 1e-5);
}

double exact_ratio(const Instance& inst, double target) {
  const double opt = total_completion_time(exact_optimal(inst), inst);
  return competitive_ratio_report(inst, target, opt).ratio;
}

void criterion_engine(Checker& c) {
  const double r2 = solved(2).ratio;
  std::vector<Job> jobs;
  for (int j = 1; j <= 4; ++j) jobs.push_back({j, 1.0, 0.0, 1.0});
  const Instance inst4(2, jobs);
  const RunResult res4 = run(inst4, r2);
  c.near("start_1", res4.schedule.find(1).start, 0.23898, 1e-4);
  c.near("start_2", res4.schedule.find(2).start, 0.85321, 1e-4);
  c.near("delay_3", res4.log[2].computed_delay, 1.23049, 1e-4);
  c.near("delay_4", res4.log[3].computed_delay, 1.46744, 1e-4);
  c.near("start_3", res4.schedule.find(3).start, 1.23898, 1e-4);
  c.near("start_4", res4.schedule.find(4).start, 1.85321, 1e-4);

  const double r3 = solved(3).ratio;
  const Instance tight = tightness_instance_m3(false);
  const RunResult rt = run(tight, r3);
  c.near("m3_start_1", rt.schedule.find(1).start, 0.02991, 1e-4);
  c.near("m3_start_2", rt.schedule.find(2).start, 0.44312, 1e-4);
  c.near("m3_start_3", rt.schedule.find(3).start, 0.7081, 1e-4);
  c.near("m3_ratio", exact_ratio(tight, r3), 1.50207, 1e-4);

  c.near("burst_k2", exact_ratio(single_long_burst_instance(0.43762, 2), r2), 1.47797, 1e-4);
  c.near("burst_k3", exact_ratio(single_long_burst_instance(0.43762, 3), r2), 1.48865, 1e-4);
  c.near("burst_k4", exact_ratio(single_long_burst_instance(0.23898, 4), r2), 1.36826, 1e-4);
}

void criterion_table4(Checker& c) {
  struct Row {
    int m, first, last;
    double dmax;
  };
  const std::vector<Row> want{{3, 4, 4, 0.10260},   {4, 5, 5, 0.05350},   {5, 6, 7, 0.00426},
                              {6, 8, 8, 0.05137},   {7, 9, 9, 0.08227},   {8, 10, 11, 0.04766},
                              {9, 11, 12, 0.03560}, {10, 12, 13, 0.06178}};
  std::vector<SecondGenerationReport> reps(want.size());
  parallel_for(want.size(), [&](std::size_t i) { reps[i] = second_generation_delays(want[i].m); });
  for (std::size_t i = 0; i < want.size(); ++i) {
    const auto& w = want[i];
    std::vector<int> expect;
    for (int j = w.first; j <= w.last; ++j) expect.push_back(j);
    std::ostringstream got;
    for (int j : reps[i].delayed_jobs) got << j << ' ';
    c.truth("m=" + std::to_string(w.m) + " delayed jobs", reps[i].delayed_jobs == expect,
            "got {" + got.str() + "} want " + std::to_string(w.first) + "-" + std::to_string(w.last));
    c.near("dmax_" + std::to_string(w.m), reps[i].max_extra_delay, w.dmax, 1e-3);
  }
}

void criterion_sweeps(Checker& c, std::uint64_t seed) {
  struct Sweep {
    int m, n;
  };
  const double r2 = solved(2).ratio;
  const double bound = 1.54610 + 1e-6;
  for (const Sweep s : {Sweep{2, 7}, Sweep{4, 6}, Sweep{6, 6}}) {
    constexpr std::size_t kSeeds = 1000;
    std::vector<double> ratio(kSeeds);
    parallel_for(kSeeds, [&](std::size_t i) {
      Rng rng(derive_seed(seed + static_cast<std::uint64_t>(s.m), i));
      const Instance inst = random_instance(rng, s.m, s.n);
      ratio[i] = exact_ratio(inst, r2);
    });
    const auto worst = std::max_element(ratio.begin(), ratio.end());
    c.below("max_ratio_m" + std::to_string(s.m), *worst, bound);
    if (*worst > bound) c.res.failures.back() += " at instance " + std::to_string(worst - ratio.begin());
  }
}

// Ratio of the engine run to the SPT-order reference on a key-pattern
// instance, maximized over the pattern index.
double key_pattern_ratio(int m, double delta) {
  const BoundSolution& sol = solved(m);
  double best = 0.0;
  for (int i = 1; i <= m; ++i) {
    const KeyPatternInstance kp = key_pattern_instance(m, i, delta, sol);
    const double ref = total_completion_time(reference_schedule(kp.instance), kp.instance);
    best = std::max(best, competitive_ratio_report(kp.instance, sol.ratio, ref).ratio);
  }
  return best;
}

void criterion_key_pattern(Checker& c) {
  const std::vector<double> deltas{1e-2, 1e-3, 1e-4};
  for (int m : {2, 3}) {
    std::vector<double> r(deltas.size());
    parallel_for(deltas.size(), [&](std::size_t i) { r[i] = key_pattern_ratio(m, deltas[i]); });
    const std::string tag = "m" + std::to_string(m);
    for (std::size_t i = 0; i < r.size(); ++i) c.note(tag + "_d" + std::to_string(i + 2), r[i]);
    // m = 2 approaches from below; for m = 3 the engine overshoots R_3 at
    // coarse delta and comes down. Either way the sequence is monotone and
    // the gap to R_m shrinks with delta.
    const double target = solved(m).ratio;
    const bool up = r[0] <= r[1] && r[1] <= r[2];
    const bool down = r[0] >= r[1] && r[1] >= r[2];
    const bool closer = std::abs(r[2] - target) <= std::abs(r[1] - target) &&
                        std::abs(r[1] - target) <= std::abs(r[0] - target);
    c.truth(tag + " monotone in delta", (up || down) && closer);
    // error is O(delta): Richardson step on the two smallest deltas
    const double extrapolated = (10.0 * r[2] - r[1]) / 9.0;
    c.near(tag + "_limit", extrapolated, solved(m).ratio, 1e-2);
  }
}

void criterion_weighted(Checker& c) {
  const WeightedSeparation sep = weighted_separation_bound();
  c.note("bound", sep.bound);
  c.note("crossover", sep.crossover);
  c.truth("separation bound above R_2 + 1e-3", sep.bound > 1.54610 + 1e-3, fmt5(sep.bound));
  const WeightedSetup& s = weighted_setup();
  double lowest = 1e300;
  for (int i = 0; i <= 20000; ++i) {
    const double t = s.first_start + (2.0 - s.first_start) * i / 20000.0;
    lowest = std::min(lowest, std::max(weighted_medium_limit(t), weighted_burst_limit(t)));
  }
  c.note("grid_min", lowest);
  c.truth("grid escape below R_2", lowest >= s.target);
  c.near("medium_threshold", weighted_medium_threshold(), 0.53332, 1e-4);
  c.near("burst_threshold", weighted_burst_threshold(), 0.54935, 1e-4);
}

void criterion_oracles(Checker& c) {
  int cases = 0;
  double worst = 0.0;
  for (int k = 1; k <= 8; ++k) {
    for (double p : {0.1, 0.43762, 1.0}) {
      for (double r : {0.0, 0.23898}) {
        // instances start at 0, so enumerate at r = 0 and shift
        std::vector<Job> jobs;
        for (int j = 1; j <= k; ++j) jobs.push_back({j, p, 0.0, 1.0});
        const Instance inst(2, jobs);
        const double exact = total_completion_time(exact_optimal(inst), inst) + k * r;
        worst = std::max(worst, std::abs(uniform_optimal_total(k, p, r) - exact));
        ++cases;
      }
    }
  }
  c.below("uniform_err", worst, 1e-9);

  double fam = 0.0;
  int fam_cases = 0, bound_cases = 0;
  bool bound_ok = true;
  for (int k = 1; k <= 8; ++k) {
    for (double p : {0.25, 0.5, 1.0}) {
      for (double gap : {0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 0.3}) {
        const double r = 0.5, m1 = 0.75, m2 = m1 + gap;
        const FamilyTotals f = restricted_family_totals(m1, m2, k, p, r);
        const PatternTotals d = discrete_pattern_totals({{m1, m2}, r}, {p, k});
        if (f.upper_bound) {
          ++bound_cases;
          bound_ok = bound_ok && f.restricted_total >= d.restricted_total - 1e-9;
        } else {
          ++fam_cases;
          fam = std::max(fam, std::abs(f.restricted_total - d.restricted_total));
        }
        fam = std::max(fam, std::abs(f.optimal_total - d.optimal_total));
      }
    }
  }
  c.below("family_err", fam, 1e-9);
  c.truth("non-integral kappa totals bound the simulation", bound_ok);
  c.summary << " uniform_cases=" << cases << " family_cases=" << fam_cases << " bound_cases=" << bound_cases;
}

const char* criterion_name(int id) {
  switch (id) {
    case 1: return "target ratios";
    case 2: return "delay vectors";
    case 3: return "largest delay at large m";
    case 4: return "two-machine closed-form constants";
    case 5: return "engine golden runs";
    case 6: return "second-generation delays";
    case 7: return "random competitive-bound sweeps";
    case 8: return "key-pattern lower-bound realization";
    case 9: return "weighted separation";
    case 10: return "oracle consistency";
    default: return "unknown";
  }
}

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed) {
  CriterionResult res;
  res.id = id;
  res.name = criterion_name(id);
  Checker c{res, {}};
  const auto start = Clock::now();
  try {
    switch (id) {
      case 1: criterion_table1(c); break;
      case 2: criterion_table2(c); break;
      case 3: criterion_table3(c); break;
      case 4: criterion_constants(c); break;
      case 5: criterion_engine(c); break;
      case 6: criterion_table4(c); break;
      case 7: criterion_sweeps(c, seed); break;
      case 8: criterion_key_pattern(c); break;
      case 9: criterion_weighted(c); break;
      case 10: criterion_oracles(c); break;
      default: res.failures.push_back("no such criterion");
    }
  } catch (const std::exception& e) {
    res.failures.push_back(std::string("exception: ") + e.what());
  }
  res.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  res.summary = c.summary.str();
  res.passed = res.failures.empty();
  return res;
}

std::vector<CriterionResult> run_acceptance(VerifyLevel level, std::uint64_t seed) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 10; ++id) {
    if (level == VerifyLevel::Fast && (id == 7 || id == 8)) continue;
    out.push_back(run_criterion(id, seed));
  }
  return out;
}

std::string criterion_line(const CriterionResult& r) {
  std::ostringstream os;
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.2fs", r.seconds);
  os << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << " (" << r.name << ") [" << secs << "] "
     << r.summary;
  for (const auto& f : r.failures) os << "\n    mismatch: " << f;
  return os.str();
}

}  // namespace dspt
