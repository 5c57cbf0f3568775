#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "kinobench/bench.hpp"

namespace {

using namespace kinobench;

constexpr int kExitOk = 0;
constexpr int kExitNoSolution = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

void write_plan_outputs(std::string const &outdir, RunRecord const &rec, Scene const &scene)
{
  std::error_code ec;
  std::filesystem::create_directories(outdir, ec);
  if (ec) { throw IoError("cannot create " + outdir + ": " + ec.message()); }
  std::filesystem::path const dir(outdir);

  std::ofstream path_csv(dir / "path.csv");
  if (!path_csv) { throw IoError("cannot write " + (dir / "path.csv").string()); }
  path_csv << "segment,force_x,force_y,duration_s,path_length_m,displacement_x,displacement_y\n";
  if (rec.path) {
    auto const segments = segments_from_path(*rec.path);
    for (std::size_t i = 0; i < segments.size(); ++i) {
      auto const &s = segments[i];
      path_csv << i << ',' << format_number(s.force.x()) << ',' << format_number(s.force.y()) << ','
               << format_number(s.duration) << ',' << format_number(s.path_length) << ','
               << format_number(s.displacement.x()) << ',' << format_number(s.displacement.y()) << '\n';
    }
  }

  nlohmann::json doc{{"scene", rec.scene_id},
                     {"planner", std::string(to_string(rec.planner))},
                     {"seed", rec.seed},
                     {"success", rec.metrics.success},
                     {"planning_time_s", rec.metrics.planning_time},
                     {"action", format_number(rec.metrics.action)},
                     {"power_w", format_number(rec.metrics.power)},
                     {"smoothness", format_number(rec.metrics.smoothness)},
                     {"jerk_step_s", scene.substep()},
                     {"iterations", rec.stats.iterations},
                     {"motions", rec.stats.motions}};
  std::ofstream metrics(dir / "metrics.json");
  if (!metrics) { throw IoError("cannot write " + (dir / "metrics.json").string()); }
  metrics << doc.dump(2) << '\n';
}

int cmd_plan(std::string const &scene_ref, std::string const &planner_name, std::uint64_t seed, double timeout,
             std::string const &outdir)
{
  auto const planner = parse_planner(planner_name);
  if (!planner) {
    std::cerr << "unknown planner '" << planner_name << "' (rrt, est, kpiece, syclop-rrt, syclop-est)\n";
    return kExitUsage;
  }
  Scene const scene = resolve_scene(scene_ref);
  std::string const id = scene_ref.starts_with("builtin:") ? scene_ref.substr(8) : scene.name;
  RunRecord const rec = run_once(scene, id, *planner, seed, timeout);
  std::cout << "scene " << id << " planner " << planner_name << " seed " << seed << '\n';
  std::cout << "solved " << (rec.metrics.success ? "yes" : "no") << " in " << rec.stats.wall_time_s << " s, "
            << rec.stats.iterations << " iterations, " << rec.stats.motions << " motions\n";
  if (rec.metrics.success) {
    std::cout << "controls " << rec.path->controls().size() << ", duration " << rec.path->total_duration << " s\n";
    std::cout << "action " << format_number(rec.metrics.action) << " N m s, power " << format_number(rec.metrics.power)
              << " W, smoothness " << format_number(rec.metrics.smoothness) << '\n';
  }
  if (!outdir.empty()) { write_plan_outputs(outdir, rec, scene); }
  return rec.metrics.success ? kExitOk : kExitNoSolution;
}

int cmd_bench(std::string const &spec_file, std::string const &profile, int jobs, std::string const &outdir,
              bool dry_run)
{
  BenchmarkSpec spec;
  if (!spec_file.empty()) {
    spec = load_benchmark_spec_file(spec_file);
  } else if (profile == "paper" || profile == "desk") {
    spec = profile_spec(profile == "paper" ? Profile::Paper : Profile::Desk);
  } else {
    std::cerr << "bench needs --spec <file> or --profile {paper|desk}\n";
    return kExitUsage;
  }
  if (char const *env = std::getenv("KINOBENCH_SEED")) {
    try {
      spec.seed_base = std::stoull(env);
    } catch (std::exception const &) {
      std::cerr << "KINOBENCH_SEED must be an unsigned integer\n";
      return kExitUsage;
    }
  }
  if (jobs > 0) { spec.jobs = jobs; }
  if (!outdir.empty()) { spec.output_dir = outdir; }
  spec.validate();

  if (dry_run) {
    write_protocol(spec, spec.output_dir);
    std::cout << protocol_json(spec);
    return kExitOk;
  }
  std::size_t done = 0;
  std::size_t const total = spec.scenes.size() * spec.planners.size() * static_cast<std::size_t>(spec.runs_per_cell);
  auto const result = run_benchmark(spec, [&](RunRecord const &r) {
    ++done;
    std::cerr << '[' << done << '/' << total << "] " << r.scene_id << ' ' << to_string(r.planner) << " run " << r.run
              << (r.metrics.success ? " solved in " : " failed after ") << r.metrics.planning_time << " s\n";
  });
  emit_reports(spec, result, spec.output_dir);
  for (auto const &o : result.overall) {
    std::cout << to_string(o.planner) << ": success " << format_number(o.success_rate) << ", time "
              << format_number(o.planning_time) << " s, action " << format_number(o.action) << ", power "
              << format_number(o.power) << ", smoothness " << format_number(o.smoothness) << '\n';
  }
  std::cout << "reports written to " << spec.output_dir << '\n';
  return kExitOk;
}

int cmd_scene_validate(std::string const &file)
{
  Scene const scene = load_scene_file(file);
  std::cout << "valid scene '" << scene.name << "': " << scene.bodies.size() << " bodies; collision-free path "
            << (geometric_path_exists(scene) ? "exists" : "does not exist") << '\n';
  return kExitOk;
}

int cmd_scene_show(std::string const &which)
{
  std::string const ref = which.starts_with("builtin:") ? which : "builtin:" + which;
  std::cout << save_scene(resolve_scene(ref));
  return kExitOk;
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Kinodynamic planning benchmark for a pushing disc robot"};
  app.require_subcommand(1);

  std::string scene_ref;
  std::string planner = "kpiece";
  std::uint64_t seed = 0;
  double timeout = 60.0;
  std::string outdir;
  auto *plan = app.add_subcommand("plan", "Solve one planning query");
  plan->add_option("--scene", scene_ref, "Scene file or builtin:scene1..3")->required();
  plan->add_option("--planner", planner, "rrt | est | kpiece | syclop-rrt | syclop-est");
  plan->add_option("--seed", seed, "Random seed");
  plan->add_option("--timeout", timeout, "Wall-clock budget in seconds")->check(CLI::PositiveNumber);
  plan->add_option("--out", outdir, "Write path.csv and metrics.json here");

  std::string spec_file;
  std::string profile;
  int jobs = 0;
  bool dry_run = false;
  auto *bench = app.add_subcommand("bench", "Run a benchmark matrix");
  auto *spec_opt = bench->add_option("--spec", spec_file, "Benchmark spec file");
  bench->add_option("--profile", profile, "paper | desk")->excludes(spec_opt);
  bench->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  bench->add_option("--out", outdir, "Output directory");
  bench->add_flag("--dry-run", dry_run, "Only write the run protocol");

  std::string scene_arg;
  auto *scene = app.add_subcommand("scene", "Scene utilities");
  scene->require_subcommand(1);
  auto *validate = scene->add_subcommand("validate", "Validate a scene file");
  validate->add_option("file", scene_arg)->required();
  auto *show = scene->add_subcommand("show", "Print a built-in scene document");
  show->add_option("builtin", scene_arg, "scene1 | scene2 | scene3")->required();

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const &e) {
    int const code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*plan) { return cmd_plan(scene_ref, planner, seed, timeout, outdir); }
    if (*bench) { return cmd_bench(spec_file, profile, jobs, outdir, dry_run); }
    if (*validate) { return cmd_scene_validate(scene_arg); }
    if (*show) { return cmd_scene_show(scene_arg); }
  } catch (IoError const &e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (SceneError const &e) {
    std::cerr << "scene error: " << e.what() << '\n';
    return kExitUsage;
  } catch (ContractViolation const &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
