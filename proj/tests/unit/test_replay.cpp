#include <doctest.h>

#include <filesystem>

#include "k3/replay/runner.hpp"

using namespace k3::replay;
namespace fs = std::filesystem;

namespace {

const fs::path kSource = K3_SOURCE_DIR;

PipelineSpec parse(const std::string& text) { return parse_spec(text, "t.yaml", kSource / "tests/data"); }

/// Location and message of the error raised by `text`.
std::string error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const SpecError& e) {
    return e.what();
  }
  return "no error";
}

const char* kPlaneCurves = R"(
pipeline: curves
rings:
  p2: {projective: 2}
steps:
  - id: conic
    kind: define_scheme
    ring: p2
    equations: ["x0*x2 - x1^2"]
    expect: {degree: 2, dimension: 1}
  - id: conic.degree
    kind: verify_degree_dim
    scheme: conic
    expect: {degree: 2}
)";

}  // namespace

TEST_CASE("spec loader errors carry locations") {
  CHECK(error_of("") == "t.yaml: empty spec");
  CHECK(error_of("# only a comment\n") == "t.yaml: empty spec");

  std::string e = error_of("pipeline: x\nrings: {p: {projective: 2}\nsteps: []\n");
  CHECK(e.rfind("t.yaml:", 0) == 0);
  CHECK(e.find("t.yaml: ") == std::string::npos);

  e = error_of(R"(pipeline: x
rings:
  p: {projective: 2}
steps:
  - id: a
    kind: define_scheme
    ring: p
    equations: ["x0*x1"]
    colour: red
)");
  CHECK(e.rfind("t.yaml:9:", 0) == 0);
  CHECK(e.find(": unknown parameter 'colour' for define_scheme") != std::string::npos);

  e = error_of(R"(pipeline: x
rings:
  p: {projective: 2}
steps:
  - id: a
    kind: verify_degree_dim
    scheme: nowhere
)");
  CHECK(e.find("dangling reference: 'nowhere'") != std::string::npos);

  e = error_of(R"(pipeline: x
rings:
  p: {projective: 2}
steps:
  - id: a
    kind: define_scheme
    ring: p
    equations: ["x0"]
    after: [b]
  - id: b
    kind: verify_degree_dim
    scheme: a
)");
  CHECK(e.find("dependency cycle: a -> b -> a") != std::string::npos);

  e = error_of(R"(pipeline: x
rings:
  p: {projective: 2}
steps:
  - id: a
    kind: define_scheme
    ring: p
    equations: ["x0 + x7"]
)");
  CHECK(e.find("t.yaml:8:") == 0);
  CHECK(e.find("unknown variable 'x7'") != std::string::npos);

  CHECK(error_of("pipeline: x\nrings:\n  p: {projective: 2}\nsteps:\n  - {id: a, kind: bake}\n").find("unknown step kind 'bake'") !=
        std::string::npos);
  CHECK(error_of("pipeline: x\npipeline: y\n").find("duplicate key") != std::string::npos);
  CHECK_THROWS_AS(load_spec(kSource / "tests/data/no-such-spec.yaml"), SpecError);
}

TEST_CASE("bundled specs load") {
  PipelineSpec s29 = load_spec(kSource / "data/s29.yaml");
  std::vector<std::string> ids;
  for (const auto& st : s29.steps) ids.push_back(st.id);
  CHECK(ids == std::vector<std::string>{"s29.weighted", "s29.sextic", "s29.ledger", "s29.model", "s29.degree",
                                        "s29.singular", "s29.curves", "s29.first.residual", "s29.first.table",
                                        "s29.second.residual", "s29.second.table", "s29.quartic", "s29.final.table",
                                        "s29.final.residual"});
  CHECK(s29.find("s29.weighted")->data_file == "s29_weighted.yaml");
  // The fixture table is inlined at load time.
  const Step* fin = s29.find("s29.final.table");
  REQUIRE(fin);
  REQUIRE(fin->expect.size() == 3);
  auto table = std::find_if(fin->expect.begin(), fin->expect.end(), [](const Expectation& e) { return e.key == "table"; });
  REQUIRE(table != fin->expect.end());
  CHECK(table->value.size() == 5);
  CHECK(table->basis == "claim");

  PipelineSpec s37 = load_spec(kSource / "data/s37.yaml");
  CHECK(s37.steps.size() == 18);
  CHECK(s37.producer("C1") == "s37.c1");
  const Step* iv = s37.find("s37.iv");
  REQUIRE(iv);
  CHECK(std::find(iv->deps.begin(), iv->deps.end(), "s37.c1") != iv->deps.end());
  CHECK(std::find(iv->deps.begin(), iv->deps.end(), "s37.lines") != iv->deps.end());
}

TEST_CASE("runner basics") {
  PipelineSpec spec = parse(kPlaneCurves);
  Report r = run(spec);
  CHECK(r.passed());
  CHECK(r.count(Status::Pass) == 2);

  RunOptions none;
  none.filter = "nothing*";
  Report empty = run(spec, none);
  CHECK(empty.steps.empty());
  CHECK(empty.passed());

  // Filtered steps bring their dependencies along but report only themselves.
  RunOptions one;
  one.filter = "*.degree";
  Report only = run(spec, one);
  REQUIRE(only.steps.size() == 1);
  CHECK(only.steps[0].id == "conic.degree");
  CHECK(only.steps[0].status == Status::Pass);

  CHECK(glob_match("s29.*", "s29.final.table"));
  CHECK_FALSE(glob_match("s29.?", "s29.final"));
  CHECK(glob_match("", "anything"));
}

TEST_CASE("failing checks carry a diff") {
  PipelineSpec spec = parse(R"(
pipeline: pairing
rings:
  p3: {projective: 3}
steps:
  - id: quadric
    kind: define_scheme
    ring: p3
    equations: ["x0*x3 - x1*x2"]
  - id: lines
    kind: verify_curve
    scheme: quadric
    curves:
      A: {equations: ["x0", "x1"]}
      B: {equations: ["x0", "x2"]}
  - id: square
    kind: pairing_check
    scheme: quadric
    classes: [A, B]
    self: 0
    expression: "A + B"
    expect:
      square: {value: 0, claim: "A + B is isotropic"}
  - id: after.square
    kind: verify_degree_dim
    scheme: quadric
    after: [square]
    expect: {degree: 2}
)");
  Report r = run(spec);
  CHECK_FALSE(r.passed());
  const StepResult& sq = r.steps[2];
  CHECK(sq.status == Status::Fail);
  REQUIRE(sq.diff.size() == 1);
  CHECK(sq.diff[0] == "square: expected 0, got 2");
  CHECK(r.steps[3].status == Status::Fail);
  CHECK(r.steps[3].diff[0] == "blocked by failed step square");
  CHECK(r.coverage.claims == 1);
  CHECK(r.coverage.checked == 1);
  CHECK(render_report(r, Format::Text).find("FAIL square = 2 (expected 0)") != std::string::npos);
}

TEST_CASE("external data steps") {
  PipelineSpec spec = load_spec(kSource / "tests/data/synthetic.yaml");
  Report skipped = run(spec);
  CHECK(skipped.passed());
  for (const auto& s : skipped.steps) {
    CHECK(s.status == Status::Skipped);
    CHECK(s.missing == "synthetic_weighted.yaml");
  }
  CHECK(skipped.coverage.skipped == 1);
  CHECK(report_to_json(skipped)["steps"][0]["status"] == "skipped:requires-external-data");

  RunOptions with;
  with.data_dir = kSource / "tests/data/external";
  Report full = run(spec, with);
  CHECK(full.passed());
  CHECK(full.count(Status::Pass) == 3);
  CHECK(full.coverage.checked == 1);
}

TEST_CASE("structured reports are deterministic") {
  PipelineSpec spec = load_spec(kSource / "data/s37.yaml");
  RunOptions a;
  a.filter = "s37.[dlip]*";
  RunOptions b = a;
  b.jobs = 4;
  std::string ra = render_report(run(spec, a), Format::Structured);
  std::string rb = render_report(run(spec, b), Format::Structured);
  CHECK(ra == rb);
  CHECK(ra.find("seconds") == std::string::npos);
  CHECK(ra.find("\"seed\": 1") != std::string::npos);
}
