// delayed-spt: bounds, online runs, instance generators, tables, acceptance.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "delayed_spt/adversaries.hpp"
#include "delayed_spt/bound_solver.hpp"
#include "delayed_spt/harness.hpp"
#include "delayed_spt/io.hpp"
#include "delayed_spt/offline_oracle.hpp"
#include "delayed_spt/online_engine.hpp"

using namespace dspt;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitInput = 2;

struct Output {
  std::string format = "csv";
  std::string path;  // empty: stdout

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << text;
  }
};

void add_output(CLI::App* cmd, Output& out, const std::string& default_format = "csv") {
  out.format = default_format;
  cmd->add_option("--format", out.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("-o,--output", out.path, "Output path (default stdout)");
}

std::string num5(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.5f", x);
  return buf;
}

std::string num17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// ---------------------------------------------------------------- bounds

struct BoundsArgs {
  int m = 2;
  std::optional<int> to;
  double tol = 1e-9;
  Output out;
};

int cmd_bounds(const BoundsArgs& a) {
  const int last = a.to.value_or(a.m);
  if (last < a.m) throw InputError("--to must be >= -m");
  std::vector<int> ms;
  for (int m = a.m; m <= last; ++m) ms.push_back(m);
  std::vector<BoundSolution> sol(ms.size());
  parallel_for(ms.size(), [&](std::size_t i) { sol[i] = solve_target_ratio(ms[i], a.tol); });

  if (a.out.format == "json") {
    json doc = json::array();
    for (const auto& s : sol)
      doc.push_back({{"m", s.machines},
                     {"R_m", s.ratio},
                     {"delays", s.delays},
                     {"consistency", s.consistency},
                     {"iterations", s.iterations}});
    a.out.write(doc.dump(2) + "\n");
    return kExitOk;
  }
  std::ostringstream os;
  os << "m,R_m,consistency,iterations,delays\n";
  for (const auto& s : sol) {
    os << s.machines << ',' << num5(s.ratio) << ',' << num5(s.consistency) << ',' << s.iterations << ',';
    for (std::size_t i = 0; i < s.delays.size(); ++i) os << (i ? " " : "") << num5(s.delays[i]);
    os << '\n';
  }
  a.out.write(os.str());
  return kExitOk;
}

// ---------------------------------------------------------------- run

struct RunArgs {
  std::string instance;
  std::optional<double> target;
  std::string log;
  Output out;
};

int cmd_run(const RunArgs& a) {
  const InstanceDocument doc = read_instance_file(a.instance);
  const Instance& inst = doc.instance;
  const double target = a.target.value_or(inst.machines() >= 1 ? solved(inst.machines()).ratio : 2.0);
  if (!(target > 1.0)) throw InputError("target ratio must exceed 1");

  const RunResult res = run(inst, target);
  const double online = total_completion_time(res.schedule, inst);

  // Oracle: exact enumeration when small, SPT when every job is released at
  // 0, a reference schedule for tagged families, otherwise none.
  std::string oracle = "none";
  std::optional<double> oracle_total;
  bool all_at_zero = true;
  for (const Job& j : inst.jobs()) all_at_zero = all_at_zero && j.r == 0.0;
  if (inst.empty()) {
    oracle = "exact";
  } else if (inst.size() <= 8) {
    oracle = "exact";
    oracle_total = total_completion_time(exact_optimal(inst), inst);
  } else if (all_at_zero) {
    oracle = "spt";
    oracle_total = total_completion_time(spt_offline(inst), inst);
  } else if (doc.family) {
    oracle = "reference";
    oracle_total = total_completion_time(reference_schedule(inst), inst);
  } else {
    std::cerr << "warning: " << inst.size()
              << " jobs is too many to enumerate and the instance has no family tag; ratio omitted\n";
  }
  std::optional<RatioReport> report;
  if (oracle_total && *oracle_total > 0.0) report = make_ratio_report(online, *oracle_total, target);
  const double lower = completion_lower_bound(inst);

  if (!a.log.empty()) {
    std::ofstream log(a.log, std::ios::binary);
    if (!log) throw InputError("cannot write " + a.log);
    write_decision_log(log, res.log);
  }

  if (a.out.format == "json") {
    json j;
    j["schedule"] = json::parse(dump_schedule(res.schedule, online));
    j["target"] = target;
    j["oracle"] = oracle;
    j["lower_bound"] = lower;
    if (report)
      j["report"] = {{"online_total", report->online_total},
                     {"oracle_total", report->oracle_total},
                     {"ratio", report->ratio},
                     {"target", report->target},
                     {"within_target", report->within_target}};
    else
      j["report"] = nullptr;
    a.out.write(j.dump(2) + "\n");
    return kExitOk;
  }
  std::ostringstream os;
  os << "job,machine,start,completion\n";
  for (const Assignment& s : res.schedule.assignments())
    os << s.job_id << ',' << s.machine << ',' << num5(s.start) << ',' << num5(s.start + inst.job(s.job_id).p)
       << '\n';
  os << "\nonline_total,oracle,oracle_total,ratio,target,within_target,lower_bound\n";
  os << num5(online) << ',' << oracle << ',' << (oracle_total ? num5(*oracle_total) : "") << ','
     << (report ? num5(report->ratio) : "") << ',' << num5(target) << ','
     << (report ? (report->within_target ? "true" : "false") : "") << ',' << num5(lower) << '\n';
  a.out.write(os.str());
  return kExitOk;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::string family;
  int m = 2;
  int index = 1;
  double delta = 1e-2;
  double p2 = 0.43762;
  int k = 2;
  bool companions = false;
  int jobs = 7;
  std::uint64_t seed = 1;
  Output out;
};

int cmd_generate(const GenerateArgs& a) {
  if (!(a.delta > 0.0)) throw InputError("--delta must be > 0");
  std::optional<Instance> inst;
  std::optional<std::string> tag = a.family;
  if (a.family == "long-jobs") {
    inst = long_jobs_instance(a.m);
  } else if (a.family == "key-pattern") {
    inst = key_pattern_instance(a.m, a.index, a.delta, solved(a.m)).instance;
  } else if (a.family == "burst") {
    inst = single_long_burst_instance(a.p2, a.k);
  } else if (a.family == "tightness") {
    inst = tightness_instance_m3(a.companions);
  } else {
    Rng rng(a.seed);
    inst = random_instance(rng, a.m, a.jobs);
    tag.reset();
  }
  if (a.out.format == "json") {
    a.out.write(dump_instance(*inst, tag) + "\n");
    return kExitOk;
  }
  std::ostringstream os;
  os << "id,p,r,w\n";
  for (const Job& j : inst->jobs()) os << j.id << ',' << num17(j.p) << ',' << num17(j.r) << ',' << num17(j.w) << '\n';
  a.out.write(os.str());
  return kExitOk;
}

// ---------------------------------------------------------------- tables

struct TablesArgs {
  bool large = false;
  Output out;
};

int cmd_tables(const TablesArgs& a) {
  const std::vector<Table> tables{ratio_table(a.large), delay_table(), last_delay_table(a.large),
                                  second_generation_table(a.large)};
  const bool as_json = a.out.format == "json";
  auto render = [&](const Table& t) { return as_json ? table_json(t) + "\n" : table_csv(t); };
  if (a.out.path.empty()) {
    for (const Table& t : tables) std::cout << "# " << t.name << '\n' << render(t);
    return kExitOk;
  }
  std::filesystem::create_directories(a.out.path);
  for (const Table& t : tables) {
    const auto file = std::filesystem::path(a.out.path) / (t.name + (as_json ? ".json" : ".csv"));
    Output{a.out.format, file.string()}.write(render(t));
  }
  return kExitOk;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string level = "fast";
  std::uint64_t seed = 7;
  Output out;
};

int cmd_verify(const VerifyArgs& a) {
  const auto results = run_acceptance(a.level == "full" ? VerifyLevel::Full : VerifyLevel::Fast, a.seed);
  bool ok = true;
  for (const auto& r : results) {
    ok = ok && r.passed;
    std::cerr << "criterion " << r.id << ": " << num5(r.seconds) << " s\n";
  }
  if (a.out.format == "json") {
    json doc = json::array();
    for (const auto& r : results)
      doc.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"measured", r.summary},
                     {"mismatches", r.failures}});
    a.out.write(doc.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "id,name,passed,measured,mismatches\n";
    for (const auto& r : results) {
      std::string mism;
      for (const auto& f : r.failures) mism += (mism.empty() ? "" : "; ") + f;
      os << r.id << ",\"" << r.name << "\"," << (r.passed ? "true" : "false") << ",\"" << r.summary << "\",\""
         << mism << "\"\n";
    }
    a.out.write(os.str());
  }
  return ok ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delayed-SPT online scheduling: bounds, simulation and adversarial instances"};
  app.require_subcommand(1);

  BoundsArgs bounds;
  auto* b = app.add_subcommand("bounds", "Solve the target ratio and delays for m machines");
  b->add_option("-m,--machines", bounds.m, "Machine count")->check(CLI::PositiveNumber);
  b->add_option("--to", bounds.to, "Sweep machine counts from -m up to this value")->check(CLI::PositiveNumber);
  b->add_option("--tol", bounds.tol, "Bisection tolerance on the ratio")->check(CLI::PositiveNumber);
  add_output(b, bounds.out);

  RunArgs runa;
  auto* r = app.add_subcommand("run", "Run delayed SPT on an instance file and report the ratio");
  r->add_option("instance", runa.instance, "Instance JSON file")->required();
  r->add_option("--target", runa.target, "Target ratio (default: solved R_m)");
  r->add_option("--log", runa.log, "Write the decision log (JSON lines) here");
  add_output(r, runa.out);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Write an adversarial or random instance");
  g->add_option("family", gen.family, "Instance family")
      ->required()
      ->check(CLI::IsMember({"long-jobs", "key-pattern", "burst", "tightness", "random"}));
  g->add_option("-m,--machines", gen.m, "Machine count")->check(CLI::PositiveNumber);
  g->add_option("--index", gen.index, "Key pattern: index of the last long job")->check(CLI::PositiveNumber);
  g->add_option("--delta", gen.delta, "Key pattern: small job length");
  g->add_option("--p2", gen.p2, "Burst: length of the burst jobs");
  g->add_option("-k", gen.k, "Burst: job count including the long job");
  g->add_flag("--companions", gen.companions, "Tightness: add two more unit jobs at 0");
  g->add_option("--jobs", gen.jobs, "Random: maximum job count")->check(CLI::PositiveNumber);
  g->add_option("--seed", gen.seed, "Random: seed");
  add_output(g, gen.out, "json");

  TablesArgs tab;
  auto* t = app.add_subcommand("tables", "Reproduce the ratio, delay and second-generation tables");
  t->add_flag("--large", tab.large, "Include the large machine counts");
  add_output(t, tab.out);
  t->get_option("--output")->description("Directory for table1..table4 (default stdout)");

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "Run the acceptance suite");
  v->add_option("--level", ver.level, "fast or full")->check(CLI::IsMember({"fast", "full"}));
  v->add_option("--seed", ver.seed, "Seed of the random sweeps");
  add_output(v, ver.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*b) return cmd_bounds(bounds);
    if (*r) return cmd_run(runa);
    if (*g) return cmd_generate(gen);
    if (*t) return cmd_tables(tab);
    if (*v) return cmd_verify(ver);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitVerify;
  }
  return kExitOk;
}
