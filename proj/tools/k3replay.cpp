// k3replay: replays a pipeline spec and reports each step.
//
//   k3replay verify s37 [--data DIR] [--format text|structured] [--filter GLOB] [--seed N] [--jobs N]
//   k3replay run path/to/spec.yaml [same options]
//
// Exit status: 0 when no step failed, 1 when a step failed, 2 on a malformed spec or usage error.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <unistd.h>

#include "k3/replay/runner.hpp"

namespace fs = std::filesystem;
using namespace k3::replay;

namespace {

fs::path executable_dir() {
  std::error_code ec;
  auto p = fs::read_symlink("/proc/self/exe", ec);
  return ec ? fs::path() : p.parent_path();
}

/// Directory holding the bundled specs.
std::optional<fs::path> bundled_dir() {
  std::vector<fs::path> candidates;
  if (const char* env = std::getenv("K3_DATA_DIR")) candidates.emplace_back(env);
#ifdef K3_SOURCE_DATA_DIR
  candidates.emplace_back(K3_SOURCE_DATA_DIR);
#endif
  fs::path exe = executable_dir();
  if (!exe.empty()) {
    candidates.push_back(exe / "../share/k3replay");
    candidates.push_back(exe / "../data");
  }
  for (const auto& c : candidates)
    if (fs::exists(c / "s29.yaml")) return c;
  return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Replays the computational claims of a pipeline spec"};
  app.require_subcommand(1);

  std::string pipeline, spec_path, data_dir, format = "text", filter;
  unsigned seed = 0;
  int jobs = 1;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--data", data_dir, "directory with external data files");
    sub->add_option("--format", format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
    sub->add_option("--filter", filter, "glob on step ids");
    sub->add_option("--seed", seed, "seed for randomized checks (default: the spec's)");
    sub->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  };
  CLI::App* verify = app.add_subcommand("verify", "run a bundled pipeline");
  verify->add_option("pipeline", pipeline, "s29 or s37")->required()->check(CLI::IsMember({"s29", "s37"}));
  common(verify);
  CLI::App* runc = app.add_subcommand("run", "run a spec file");
  runc->add_option("spec", spec_path, "spec file")->required();
  common(runc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    fs::path path;
    if (verify->parsed()) {
      auto dir = bundled_dir();
      if (!dir) {
        std::cerr << "k3replay: bundled specs not found; set K3_DATA_DIR\n";
        return 2;
      }
      path = *dir / (pipeline + ".yaml");
    } else {
      path = spec_path;
    }
    PipelineSpec spec = load_spec(path);
    RunOptions opts;
    if (!data_dir.empty()) opts.data_dir = fs::path(data_dir);
    opts.filter = filter;
    if (seed) opts.seed = seed;
    opts.jobs = jobs;
    Report rep = run(spec, opts);
    std::cout << render_report(rep, format == "structured" ? Format::Structured : Format::Text);
    return rep.passed() ? 0 : 1;
  } catch (const SpecError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "k3replay: " << e.what() << "\n";
    return 2;
  }
}
