#include "delayed_spt/io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace dspt {

using nlohmann::json;

namespace {

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte points one past the offending character
    auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    std::ostringstream os;
    os << "parse error at line " << line << ", column " << col;
    throw InputError(os.str(), line, col);
  }
}

template <typename T>
T field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where + ": missing \"" + key + "\"");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw InputError(where + ": \"" + key + "\" has the wrong type");
  }
}

}  // namespace

InstanceDocument parse_instance(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw InputError("instance must be a JSON object");
  const int machines = field<int>(doc, "machines", "instance");
  auto jobs_it = doc.find("jobs");
  if (jobs_it == doc.end() || !jobs_it->is_array()) throw InputError("instance: \"jobs\" must be an array");

  std::vector<Job> jobs;
  std::size_t n = 0;
  for (const json& j : *jobs_it) {
    const std::string where = "jobs[" + std::to_string(n++) + "]";
    if (!j.is_object()) throw InputError(where + " must be an object");
    Job job;
    job.id = field<int>(j, "id", where);
    job.p = field<double>(j, "p", where);
    job.r = field<double>(j, "r", where);
    if (j.contains("w")) job.w = field<double>(j, "w", where);
    jobs.push_back(job);
  }

  std::optional<std::string> family;
  if (doc.contains("family")) family = field<std::string>(doc, "family", "instance");
  try {
    return {Instance(machines, std::move(jobs)), family};
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("invalid instance: ") + e.what());
  }
}

InstanceDocument read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

std::string dump_instance(const Instance& instance, const std::optional<std::string>& family) {
  json doc;
  doc["machines"] = instance.machines();
  doc["jobs"] = json::array();
  for (const Job& j : instance.jobs()) doc["jobs"].push_back({{"id", j.id}, {"p", j.p}, {"r", j.r}, {"w", j.w}});
  if (family) doc["family"] = *family;
  return doc.dump(2);
}

std::string dump_schedule(const Schedule& schedule, double total) {
  json doc;
  doc["assignments"] = json::array();
  for (const Assignment& a : schedule.assignments())
    doc["assignments"].push_back({{"job", a.job_id}, {"machine", a.machine}, {"start", a.start}});
  doc["total"] = total;
  return doc.dump(2);
}

Schedule parse_schedule(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("assignments") || !doc["assignments"].is_array())
    throw InputError("schedule: \"assignments\" must be an array");
  Schedule s;
  std::size_t n = 0;
  for (const json& a : doc["assignments"]) {
    const std::string where = "assignments[" + std::to_string(n++) + "]";
    s.add({field<int>(a, "job", where), field<int>(a, "machine", where), field<double>(a, "start", where)});
  }
  return s;
}

void write_decision_log(std::ostream& out, const std::vector<DecisionRecord>& log) {
  for (const DecisionRecord& d : log) {
    json line{{"job", d.job},
              {"computed_delay", d.computed_delay},
              {"start", d.start},
              {"machine", d.machine},
              {"queue_depth", d.queue_depth}};
    out << line.dump() << '\n';
  }
}

}  // namespace dspt
