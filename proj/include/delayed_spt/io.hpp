#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "delayed_spt/core.hpp"
#include "delayed_spt/online_engine.hpp"

namespace dspt {

/// Malformed input. line/column are 1-based and 0 when unknown.
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(what), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

struct InstanceDocument {
  Instance instance;
  std::optional<std::string> family;  // generator tag, e.g. "key-pattern"
};

/// {"machines": int, "jobs": [{"id": int, "p": num, "r": num, "w": num}]}
/// with "w" optional (default 1) and an optional "family" string.
InstanceDocument parse_instance(const std::string& text);
InstanceDocument read_instance_file(const std::string& path);
std::string dump_instance(const Instance& instance, const std::optional<std::string>& family = std::nullopt);

/// {"assignments": [{"job": int, "machine": int, "start": num}], "total": num}
std::string dump_schedule(const Schedule& schedule, double total);
Schedule parse_schedule(const std::string& text);

/// One JSON object per line:
/// {"job", "computed_delay", "start", "machine", "queue_depth"}.
void write_decision_log(std::ostream& out, const std::vector<DecisionRecord>& log);

}  // namespace dspt
