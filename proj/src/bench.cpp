#include "kinobench/bench.hpp"

#include <yaml-cpp/yaml.h>

#include <atomic>
#include <chrono>
#include <fstream>
#include <algorithm>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace kinobench {

namespace {

std::uint64_t splitmix(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s)
{
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char const c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

SceneEntry load_entry(std::string const &ref)
{
  auto const t0 = std::chrono::steady_clock::now();
  Scene scene = resolve_scene(ref);
  double const dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::string id = ref.starts_with("builtin:") ? ref.substr(8) : scene.name;
  return {std::move(id), std::move(scene), dt};
}

} // namespace

std::string_view to_string(Profile p) { return p == Profile::Paper ? "paper" : "desk"; }

void BenchmarkSpec::validate() const
{
  if (scenes.empty()) { throw ContractViolation("benchmark needs at least one scene"); }
  if (planners.empty()) { throw ContractViolation("benchmark needs at least one planner"); }
  if (runs_per_cell < 1) { throw ContractViolation("runs_per_cell must be >= 1"); }
  if (!(timeout > 0.0)) { throw ContractViolation("timeout must be positive"); }
  if (jobs < 1) { throw ContractViolation("jobs must be >= 1"); }
  if (max_iterations && *max_iterations == 0) { throw ContractViolation("max_iterations must be positive"); }
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    for (std::size_t j = i + 1; j < scenes.size(); ++j) {
      if (scenes[i].id == scenes[j].id) { throw ContractViolation("duplicate scene id " + scenes[i].id); }
    }
  }
  check_config(planner_config);
}

BenchmarkSpec profile_spec(Profile profile)
{
  BenchmarkSpec spec;
  spec.profile = profile;
  for (auto const *ref : {"builtin:scene1", "builtin:scene2", "builtin:scene3"}) { spec.scenes.push_back(load_entry(ref)); }
  spec.planners.assign(kAllPlanners.begin(), kAllPlanners.end());
  spec.runs_per_cell = 10;
  spec.timeout = profile == Profile::Paper ? 500.0 : 60.0;
  spec.output_dir = profile == Profile::Paper ? "bench-paper" : "bench-desk";
  return spec;
}

BenchmarkSpec load_benchmark_spec(std::string_view document)
{
  YAML::Node root;
  try {
    root = YAML::Load(std::string(document));
  } catch (YAML::Exception const &e) {
    throw SceneError(SceneErrorKind::Schema, "", std::string("malformed benchmark spec: ") + e.what());
  }
  auto fail = [](std::string const &path, std::string const &msg) {
    throw SceneError(SceneErrorKind::Schema, path, msg);
  };
  if (!root.IsMap()) { fail("", "benchmark spec must be a mapping"); }
  if (!root["schema"] || root["schema"].Scalar() != "1") { fail("schema", "expected schema: 1"); }
  for (auto const &kv : root) {
    static std::set<std::string> const known{"schema", "profile", "scenes", "planners", "runs_per_cell",
                                             "timeout", "seed_base", "max_iterations", "jobs", "output_dir"};
    if (!known.contains(kv.first.as<std::string>())) { fail(kv.first.as<std::string>(), "unknown field"); }
  }

  Profile profile = Profile::Paper;
  if (auto const p = root["profile"]) {
    auto const name = p.as<std::string>();
    if (name == "paper") {
      profile = Profile::Paper;
    } else if (name == "desk") {
      profile = Profile::Desk;
    } else {
      fail("profile", "expected paper or desk");
    }
  }
  BenchmarkSpec spec = profile_spec(profile);
  try {
    if (auto const s = root["scenes"]) {
      spec.scenes.clear();
      for (auto const &ref : s) { spec.scenes.push_back(load_entry(ref.as<std::string>())); }
    }
    if (auto const p = root["planners"]) {
      spec.planners.clear();
      for (std::size_t i = 0; i < p.size(); ++i) {
        auto const id = parse_planner(p[i].as<std::string>());
        if (!id) { fail("planners[" + std::to_string(i) + "]", "unknown planner '" + p[i].as<std::string>() + "'"); }
        spec.planners.push_back(*id);
      }
    }
    if (root["runs_per_cell"]) { spec.runs_per_cell = root["runs_per_cell"].as<int>(); }
    if (root["timeout"]) { spec.timeout = root["timeout"].as<double>(); }
    if (root["seed_base"]) { spec.seed_base = root["seed_base"].as<std::uint64_t>(); }
    if (root["max_iterations"]) { spec.max_iterations = root["max_iterations"].as<std::uint64_t>(); }
    if (root["jobs"]) { spec.jobs = root["jobs"].as<int>(); }
    if (root["output_dir"]) { spec.output_dir = root["output_dir"].as<std::string>(); }
  } catch (YAML::Exception const &e) {
    fail("", std::string("bad value: ") + e.what());
  }
  try {
    spec.validate();
  } catch (ContractViolation const &e) {
    fail("", e.what());
  }
  return spec;
}

BenchmarkSpec load_benchmark_spec_file(std::string const &path)
{
  std::ifstream in(path);
  if (!in) { throw IoError("cannot read benchmark spec " + path); }
  std::stringstream ss;
  ss << in.rdbuf();
  return load_benchmark_spec(ss.str());
}

std::uint64_t run_seed(std::uint64_t seed_base, std::string const &scene_id, PlannerId planner, int run)
{
  std::uint64_t const key =
    splitmix(fnv1a(scene_id) ^ splitmix(static_cast<std::uint64_t>(planner) + 1) ^ splitmix(0x1000ULL + run));
  return seed_base ^ key;
}

RunRecord run_once(Scene const &scene, std::string const &scene_id, PlannerId planner, std::uint64_t seed,
                   double timeout, PlannerConfig base)
{
  base.seed = seed;
  base.time_budget = timeout;
  RunRecord rec;
  rec.scene_id = scene_id;
  rec.planner = planner;
  rec.seed = seed;
  PlanResult r = solve(planner, scene, goal_region(scene), base);
  rec.stats = r.stats;
  if (r.solution) {
    rec.metrics = evaluate(*r.solution, scene.substep(), r.stats.wall_time_s);
    rec.path = std::move(r.solution);
  } else {
    rec.metrics = failed_run(timeout);
  }
  return rec;
}

void summarize(BenchmarkResult &result, double timeout)
{
  result.cells.clear();
  result.overall.clear();
  // Records arrive in canonical order, so runs of one cell are contiguous.
  std::vector<PlannerId> planner_order;
  for (std::size_t i = 0; i < result.records.size();) {
    std::size_t j = i;
    std::vector<MetricsReport> reports;
    while (j < result.records.size() && result.records[j].scene_id == result.records[i].scene_id &&
           result.records[j].planner == result.records[i].planner) {
      reports.push_back(result.records[j].metrics);
      ++j;
    }
    result.cells.push_back({result.records[i].scene_id, result.records[i].planner, aggregate(reports, timeout)});
    if (std::find(planner_order.begin(), planner_order.end(), result.records[i].planner) == planner_order.end()) {
      planner_order.push_back(result.records[i].planner);
    }
    i = j;
  }
  double const inf = std::numeric_limits<double>::infinity();
  for (auto const planner : planner_order) {
    PlannerOverall o;
    o.planner = planner;
    std::size_t scenes = 0;
    std::size_t solved_scenes = 0;
    double act = 0.0;
    double pow = 0.0;
    double smooth = 0.0;
    for (auto const &c : result.cells) {
      if (c.planner != planner) { continue; }
      ++scenes;
      o.success_rate += c.summary.success_rate;
      o.planning_time += c.summary.planning_time;
      if (c.summary.successes > 0) {
        ++solved_scenes;
        act += c.summary.action;
        pow += c.summary.power;
        smooth += c.summary.smoothness;
      }
    }
    o.success_rate /= static_cast<double>(scenes);
    o.planning_time /= static_cast<double>(scenes);
    o.action = solved_scenes ? act / static_cast<double>(solved_scenes) : inf;
    o.power = solved_scenes ? pow / static_cast<double>(solved_scenes) : inf;
    o.smoothness = solved_scenes ? smooth / static_cast<double>(solved_scenes) : inf;
    result.overall.push_back(o);
  }
}

BenchmarkResult run_benchmark(BenchmarkSpec const &spec, ProgressCallback const &progress)
{
  spec.validate();
  write_protocol(spec, spec.output_dir);

  struct Job
  {
    std::size_t scene;
    PlannerId planner;
    int run;
  };
  std::vector<Job> jobs;
  for (std::size_t s = 0; s < spec.scenes.size(); ++s) {
    for (auto const planner : spec.planners) {
      for (int run = 0; run < spec.runs_per_cell; ++run) { jobs.push_back({s, planner, run}); }
    }
  }

  BenchmarkResult result;
  result.records.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex progress_mutex;
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        Job const &job = jobs[i];
        auto const &entry = spec.scenes[job.scene];
        PlannerConfig config = spec.planner_config;
        config.max_iterations = spec.max_iterations;
        RunRecord rec = run_once(entry.scene, entry.id, job.planner,
                                 run_seed(spec.seed_base, entry.id, job.planner, job.run), spec.timeout, config);
        rec.run = job.run;
        std::lock_guard lock(progress_mutex);
        if (progress) { progress(rec); }
        result.records[i] = std::move(rec);
      } catch (...) {
        std::lock_guard lock(progress_mutex);
        if (!failure) { failure = std::current_exception(); }
        next = jobs.size();
      }
    }
  };
  std::vector<std::thread> pool;
  int const workers = std::min<int>(spec.jobs, static_cast<int>(jobs.size()));
  for (int w = 1; w < workers; ++w) { pool.emplace_back(worker); }
  worker();
  for (auto &t : pool) { t.join(); }
  if (failure) { std::rethrow_exception(failure); }

  summarize(result, spec.timeout);
  return result;
}

} // namespace kinobench
