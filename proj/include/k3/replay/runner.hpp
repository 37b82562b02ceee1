#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "k3/replay/spec.hpp"

namespace k3::replay {

enum class Status { Pass, Fail, Skipped };
std::string status_name(Status s);

struct Check {
  std::string key;
  nlohmann::json expected;
  nlohmann::json measured;
  bool ok = false;
  std::string basis;
  std::string claim;
};

struct StepResult {
  std::string id;
  std::string kind;
  Status status = Status::Pass;
  std::vector<Check> checks;
  /// Informational values (computed forms, chosen readings, rejected alternatives).
  nlohmann::json info = nlohmann::json::object();
  /// One line per failed check or error; empty unless the step failed.
  std::vector<std::string> diff;
  /// Missing external input, for skipped steps.
  std::string missing;
  double seconds = 0;
};

struct Coverage {
  int claims = 0;
  int checked = 0;
  int skipped = 0;
};

struct Report {
  std::string pipeline;
  std::string spec;
  unsigned seed = 0;
  std::vector<StepResult> steps;
  Coverage coverage;

  int count(Status s) const;
  bool passed() const { return count(Status::Fail) == 0; }
};

struct RunOptions {
  std::optional<std::filesystem::path> data_dir;
  /// Glob on step ids ('*', '?', '[...]'); empty selects every step.
  std::string filter;
  std::optional<unsigned> seed;
  int jobs = 1;
};

/// Whether `id` matches the glob.
bool glob_match(const std::string& pattern, const std::string& id);

/// Runs the selected steps and everything they depend on; only selected steps are reported,
/// in spec order. Step failures are report entries, never exceptions.
Report run(const PipelineSpec& spec, const RunOptions& options = {});

enum class Format { Text, Structured };

/// Structured output is JSON with sorted keys and no timings; text output includes timings.
std::string render_report(const Report& r, Format format);
nlohmann::json report_to_json(const Report& r);

}  // namespace k3::replay
