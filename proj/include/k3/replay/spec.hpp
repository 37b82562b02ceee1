#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "k3/poly/ring.hpp"

namespace k3::replay {

/// Malformed spec: syntax, schema, dangling reference or dependency cycle.
/// `line` and `column` are 1-based; 0 when no location applies.
class SpecError : public std::runtime_error {
public:
  SpecError(const std::string& origin, int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }

private:
  int line_, column_;
  std::string message_;
};

/// One expected value. `basis` is "claim" (a statement of the source text, quoted in `claim`),
/// "computed" (frozen from an independent computation) or "arithmetic".
struct Expectation {
  std::string key;
  nlohmann::json value;
  std::string basis = "computed";
  std::string claim;
};

struct Step {
  std::string id;
  std::string kind;
  int line = 0;
  /// Step parameters with `id`, `kind`, `after` and `expect` removed.
  nlohmann::json params;
  std::vector<Expectation> expect;
  /// Names this step reads (curves, schemes, pencils, maps).
  std::vector<std::string> uses;
  /// Names this step defines; always includes the step id.
  std::vector<std::string> defines;
  /// Ids of the steps that must finish first.
  std::vector<std::string> deps;
  /// External data file this step reads, relative to the data directory.
  std::optional<std::string> data_file;
};

struct PipelineSpec {
  std::string name;
  std::string origin;  // file name used in messages and reports
  std::filesystem::path base_dir;
  unsigned seed = 1;
  std::map<std::string, RingPtr> rings;
  std::vector<Step> steps;

  const Step* find(const std::string& id) const;
  /// Id of the step defining a name, or nullopt.
  std::optional<std::string> producer(const std::string& name) const;
};

/// Step kinds understood by the runner.
const std::vector<std::string>& step_kinds();

/// Reads and validates a spec file. Throws SpecError.
PipelineSpec load_spec(const std::filesystem::path& path);
/// Same from text; `base_dir` resolves fixture files named in the spec.
PipelineSpec parse_spec(const std::string& text, const std::string& origin, const std::filesystem::path& base_dir);

}  // namespace k3::replay
