#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kinobench/bench.hpp"
#include "support/oracles.hpp"

using namespace kinobench;
namespace fs = std::filesystem;

namespace {

fs::path scratch(std::string const &name)
{
  fs::path const p = fs::temp_directory_path() / ("kinobench-test-" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(fs::path const &p)
{
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

BenchmarkSpec small_spec(fs::path const &out)
{
  BenchmarkSpec spec = load_benchmark_spec(R"(schema: 1
profile: desk
scenes: [builtin:scene1]
planners: [rrt, est]
runs_per_cell: 3
timeout: 20
max_iterations: 400
seed_base: 99
)");
  spec.output_dir = out.string();
  return spec;
}

} // namespace

TEST_CASE("csv header is normative")
{
  CHECK(kCsvHeader == "scene,planner,run,seed,success,planning_time_s,action,power_w,smoothness");
  CHECK(runs_csv({}) == std::string(kCsvHeader) + "\n");
}

TEST_CASE("numbers round-trip and infinity is spelled inf")
{
  double const inf = std::numeric_limits<double>::infinity();
  CHECK(format_number(inf) == "inf");
  CHECK(parse_number("inf") == inf);
  for (double v : {0.1, 1.0 / 3.0, 123456.789e-7, 5.0, -2.5e300}) { CHECK(parse_number(format_number(v)) == v); }
  CHECK_THROWS_AS(parse_number("1.5x"), StructuralError);
}

TEST_CASE("one cell, one run")
{
  auto const out = scratch("single");
  BenchmarkSpec spec = small_spec(out);
  spec.planners = {PlannerId::Rrt};
  spec.runs_per_cell = 1;
  auto const result = run_benchmark(spec);
  REQUIRE(result.records.size() == 1);
  CHECK(result.cells.size() == 1);
  CHECK(result.overall.size() == 1);
  CHECK(result.records[0].seed == run_seed(99, "scene1", PlannerId::Rrt, 0));
  CHECK(fs::exists(out / "protocol.json"));
}

TEST_CASE("seeds are distinct per cell and run")
{
  std::set<std::uint64_t> seeds;
  for (auto const *scene : {"scene1", "scene2", "scene3"}) {
    for (auto const p : kAllPlanners) {
      for (int r = 0; r < 10; ++r) { seeds.insert(run_seed(1, scene, p, r)); }
    }
  }
  CHECK(seeds.size() == 150);
  CHECK((run_seed(1, "scene1", PlannerId::Rrt, 0) ^ run_seed(2, "scene1", PlannerId::Rrt, 0)) == 3);
}

TEST_CASE("reports round-trip through the csv")
{
  auto const out = scratch("roundtrip");
  BenchmarkSpec const spec = small_spec(out);
  auto const result = run_benchmark(spec);
  emit_reports(spec, result, spec.output_dir);

  std::string const csv = slurp(out / "runs.csv");
  CHECK(csv.substr(0, csv.find('\n')) == kCsvHeader);
  BenchmarkResult back;
  back.records = parse_runs_csv(csv);
  REQUIRE(back.records.size() == result.records.size());
  summarize(back, spec.timeout);
  REQUIRE(back.cells.size() == result.cells.size());
  for (std::size_t i = 0; i < back.cells.size(); ++i) {
    auto const &a = back.cells[i].summary;
    auto const &b = result.cells[i].summary;
    CHECK(a.success_rate == b.success_rate);
    CHECK(format_number(a.planning_time) == format_number(b.planning_time));
    CHECK(format_number(a.action) == format_number(b.action));
    CHECK(format_number(a.power) == format_number(b.power));
    CHECK(format_number(a.smoothness) == format_number(b.smoothness));
  }

  auto const summary = nlohmann::json::parse(slurp(out / "summary.json"));
  for (std::size_t i = 0; i < result.cells.size(); ++i) {
    std::size_t ok = 0;
    std::size_t n = 0;
    for (auto const &r : back.records) {
      if (r.scene_id == result.cells[i].scene_id && r.planner == result.cells[i].planner) {
        ++n;
        ok += r.metrics.success ? 1 : 0;
      }
    }
    CHECK(summary["cells"][i]["success_rate"].get<double>() == static_cast<double>(ok) / static_cast<double>(n));
  }
  for (auto const metric : kHistogramMetrics) {
    std::string const svg = slurp(out / (std::string(metric) + ".svg"));
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("overall") != std::string::npos);
    CHECK(svg.find("group,rrt,est") != std::string::npos);
  }
}

TEST_CASE("all-failure cells carry inf markers")
{
  BenchmarkResult r;
  for (int i = 0; i < 3; ++i) {
    RunRecord rec;
    rec.scene_id = "s";
    rec.planner = PlannerId::Est;
    rec.run = i;
    rec.metrics = failed_run(60.0);
    r.records.push_back(rec);
  }
  summarize(r, 60.0);
  CHECK(std::isinf(r.cells[0].summary.action));
  CHECK(r.cells[0].summary.planning_time == 60.0);
  std::string const csv = runs_csv(r.records);
  CHECK(csv.find(",0,60,inf,inf,inf\n") != std::string::npos);
  BenchmarkSpec spec;
  auto const doc = nlohmann::json::parse(summary_json(spec, r));
  CHECK(doc["cells"][0]["action"] == "inf");
  CHECK(doc["overall"][0]["smoothness"] == "inf");
}

TEST_CASE("unwritable output directory fails before any run")
{
  auto const base = scratch("blocked");
  fs::create_directories(base);
  std::ofstream(base / "file") << "x";
  BenchmarkSpec spec = small_spec(base / "file" / "out");
  int runs = 0;
  CHECK_THROWS_AS(run_benchmark(spec, [&](RunRecord const &) { ++runs; }), IoError);
  CHECK(runs == 0);
}

TEST_CASE("output order is canonical regardless of worker count")
{
  auto const out = scratch("jobs");
  BenchmarkSpec spec = small_spec(out);
  auto const serial = run_benchmark(spec);
  spec.jobs = 3;
  auto const parallel = run_benchmark(spec);
  CHECK(oracle::without_time_column(runs_csv(serial.records)) == oracle::without_time_column(runs_csv(parallel.records)));
}

TEST_CASE("run_once starvation and determinism")
{
  Scene const s3 = builtin_scene(BuiltinScene::Scene3);
  auto const starved = run_once(s3, "scene3", PlannerId::Rrt, 4, 0.01);
  CHECK_FALSE(starved.metrics.success);
  CHECK(starved.metrics.planning_time == 0.01);

  Scene const s1 = builtin_scene(BuiltinScene::Scene1);
  auto const a = run_once(s1, "scene1", PlannerId::Rrt, 7, 60.0);
  auto const b = run_once(s1, "scene1", PlannerId::Rrt, 7, 60.0);
  REQUIRE(a.metrics.success);
  CHECK(oracle::revalidate(*a.path, s1, goal_region(s1)) == "");
  CHECK(a.path->controls() == b.path->controls());
  CHECK(a.metrics.action == b.metrics.action);
  CHECK(a.metrics.power == b.metrics.power);
  CHECK(a.metrics.smoothness == b.metrics.smoothness);
}

TEST_CASE("profiles and spec documents")
{
  auto const paper = profile_spec(Profile::Paper);
  CHECK(paper.runs_per_cell == 10);
  CHECK(paper.timeout == 500.0);
  CHECK(paper.scenes.size() == 3);
  CHECK(paper.planners.size() == 5);
  auto const desk = profile_spec(Profile::Desk);
  CHECK(desk.timeout == 60.0);
  CHECK(desk.runs_per_cell == 10);

  auto const proto = nlohmann::json::parse(protocol_json(paper));
  CHECK(proto["runs_per_cell"] == 10);
  CHECK(proto["timeout_s"] == 500.0);
  CHECK(proto["goal_bias"] == 0.05);
  CHECK(proto["scenes"][0]["f_max_n"] == 10.0);
  CHECK(proto["scenes"][0]["control_step_s"] == 0.07);

  CHECK_THROWS_AS(load_benchmark_spec("schema: 1\nplanners: [prm]\n"), SceneError);
  CHECK_THROWS_AS(load_benchmark_spec("schema: 1\nrepeat: 3\n"), SceneError);
  CHECK_THROWS_AS(load_benchmark_spec("schema: 1\nruns_per_cell: 0\n"), SceneError);
}
