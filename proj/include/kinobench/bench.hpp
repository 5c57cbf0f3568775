#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kinobench/metrics.hpp"
#include "kinobench/planner.hpp"

namespace kinobench {

enum class Profile
{
  Paper, ///< 10 runs per cell, 500 s timeout
  Desk,  ///< 10 runs per cell, 60 s timeout
};

std::string_view to_string(Profile p);

struct SceneEntry
{
  std::string id;
  Scene scene;
  double load_time_s = 0.0;
};

struct BenchmarkSpec
{
  std::vector<SceneEntry> scenes;
  std::vector<PlannerId> planners;
  int runs_per_cell = 10;
  double timeout = 500.0;
  std::uint64_t seed_base = 1;
  std::string output_dir = "bench-out";
  Profile profile = Profile::Paper;
  std::optional<std::uint64_t> max_iterations;
  int jobs = 1;
  PlannerConfig planner_config; ///< per-run seed, time budget and iteration cap are filled in by the runner

  void validate() const;
};

/// The three built-in scenes, all five planners, the profile's run count and timeout.
BenchmarkSpec profile_spec(Profile profile);

/// Benchmark spec document (YAML, `schema: 1`); an optional `profile` key supplies the defaults.
BenchmarkSpec load_benchmark_spec(std::string_view document);
BenchmarkSpec load_benchmark_spec_file(std::string const &path);

/// Seed of one run: seed_base XOR a hash of (scene id, planner, run index).
std::uint64_t run_seed(std::uint64_t seed_base, std::string const &scene_id, PlannerId planner, int run);

struct RunRecord
{
  std::string scene_id;
  PlannerId planner = PlannerId::Rrt;
  int run = 0;
  std::uint64_t seed = 0;
  MetricsReport metrics;
  PlannerStats stats;
  std::optional<SolutionPath> path;
};

/// One planner run with a wall-clock budget of `timeout`. Failures report planning_time = timeout.
RunRecord run_once(Scene const &scene, std::string const &scene_id, PlannerId planner, std::uint64_t seed,
                   double timeout, PlannerConfig base = {});

struct CellSummary
{
  std::string scene_id;
  PlannerId planner = PlannerId::Rrt;
  MetricsSummary summary;
};

/// Per-planner averages across scenes.
struct PlannerOverall
{
  PlannerId planner = PlannerId::Rrt;
  double success_rate = 0.0;
  double planning_time = 0.0;
  double action = 0.0;
  double power = 0.0;
  double smoothness = 0.0;
};

struct BenchmarkResult
{
  std::vector<RunRecord> records; ///< canonical (scene, planner, run) order
  std::vector<CellSummary> cells;
  std::vector<PlannerOverall> overall;
};

/// Cell summaries and per-planner averages from records in canonical order.
void summarize(BenchmarkResult &result, double timeout);

using ProgressCallback = std::function<void(RunRecord const &)>;

/// Runs every cell with `spec.jobs` workers. Writes protocol.json to the output directory first, so an
/// unwritable directory fails before any run starts.
BenchmarkResult run_benchmark(BenchmarkSpec const &spec, ProgressCallback const &progress = {});

/// Run-protocol metadata (run count, timeout, sampling parameters) as a JSON document.
std::string protocol_json(BenchmarkSpec const &spec);
void write_protocol(BenchmarkSpec const &spec, std::string const &outdir);

std::string runs_csv(std::vector<RunRecord> const &records);
/// Parses runs.csv back into records (metrics and addressing only).
std::vector<RunRecord> parse_runs_csv(std::string const &text);
std::string summary_json(BenchmarkSpec const &spec, BenchmarkResult const &result);
/// One histogram document per metric: per-scene groups plus an overall group, one bar per planner.
std::string histogram_svg(BenchmarkResult const &result, std::string const &metric);

inline constexpr std::string_view kCsvHeader =
  "scene,planner,run,seed,success,planning_time_s,action,power_w,smoothness";
inline constexpr std::array<std::string_view, 5> kHistogramMetrics{"planning_time", "success_rate", "action",
                                                                   "power", "smoothness"};

/// Writes runs.csv, summary.json and the five histogram SVGs into `outdir`.
void emit_reports(BenchmarkSpec const &spec, BenchmarkResult const &result, std::string const &outdir);

/// Shortest round-trip decimal form; infinities become `inf`.
std::string format_number(double v);
double parse_number(std::string_view s);

} // namespace kinobench
