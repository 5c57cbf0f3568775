#include <variant>

#include "kinobench/nearest.hpp"
#include "kinobench/planner.hpp"

namespace kinobench {

namespace {

constexpr int kRrtDefaultCandidates = 10;

template <typename Index>
PlanResult rrt_loop(Scene const &scene, GoalRegion const &goal, PlannerConfig const &config, Index &index)
{
  detail::Budget const budget(config);
  Rng rng(config.seed);
  int const candidates = config.candidate_controls > 0 ? config.candidate_controls : kRrtDefaultCandidates;

  MotionTree tree;
  PlanResult result;
  std::size_t const root = tree.add_root(start_state(scene));
  index.add(root, tree[root].state.robot_pos);
  std::optional<std::size_t> reached;
  if (in_goal(tree[root].state, goal)) { reached = root; }

  while (!reached && !budget.exhausted(result.stats.iterations)) {
    ++result.stats.iterations;
    Vec2 const target = sample_goal_biased_target(rng, goal, scene.bounds, config.goal_bias);
    std::size_t const near = index.nearest(target);

    std::optional<PropagationResult> best;
    Control best_control;
    double best_d = std::numeric_limits<double>::infinity();
    for (int c = 0; c < candidates; ++c) {
      Control const control = sample_control(rng, scene, config.max_control_steps);
      PropagationResult r = propagate(tree[near].state, control, scene);
      if (!r.valid) { continue; }
      double const d = (r.final.robot_pos - target).norm();
      if (d < best_d) {
        best_d = d;
        best_control = control;
        best = std::move(r);
      }
    }
    if (!best) { continue; }
    std::size_t const id = tree.add(near, std::move(best->final), best_control);
    index.add(id, tree[id].state.robot_pos);
    if (in_goal(tree[id].state, goal)) { reached = id; }
  }

  result.stats.motions = tree.size();
  result.stats.wall_time_s = budget.elapsed();
  if (reached) { result.solution = extract_solution(tree, *reached, scene); }
  return result;
}

} // namespace

PlanResult rrt_solve(Scene const &scene, GoalRegion const &goal, PlannerConfig const &config)
{
  check_config(config);
  check_start(scene);
  if (config.grid_nearest) {
    GridNearest index(0.5);
    return rrt_loop(scene, goal, config, index);
  }
  LinearNearest index;
  return rrt_loop(scene, goal, config, index);
}

} // namespace kinobench
