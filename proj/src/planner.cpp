#include "kinobench/planner.hpp"

#include <algorithm>

#include "kinobench/syclop.hpp"

namespace kinobench {

std::size_t MotionTree::add_root(WorldState state)
{
  if (!motions_.empty()) { throw ContractViolation("tree already has a root"); }
  motions_.push_back({0, std::nullopt, std::move(state), std::nullopt, std::nullopt});
  return 0;
}

std::size_t MotionTree::add(std::size_t parent, WorldState state, Control control)
{
  if (parent >= motions_.size()) { throw StructuralError("unknown parent motion"); }
  std::size_t const id = motions_.size();
  motions_.push_back({id, parent, std::move(state), control, std::nullopt});
  return id;
}

std::vector<std::size_t> MotionTree::lineage(std::size_t id) const
{
  std::vector<std::size_t> ids;
  for (std::optional<std::size_t> cur = id; cur; cur = motions_[*cur].parent) { ids.push_back(*cur); }
  std::reverse(ids.begin(), ids.end());
  return ids;
}

std::vector<Control> SolutionPath::controls() const
{
  std::vector<Control> out;
  for (auto const &m : motions) {
    if (m.motion.control) { out.push_back(*m.motion.control); }
  }
  return out;
}

std::string_view to_string(PlannerId id)
{
  switch (id) {
  case PlannerId::Rrt: return "rrt";
  case PlannerId::Est: return "est";
  case PlannerId::Kpiece: return "kpiece";
  case PlannerId::SyclopRrt: return "syclop-rrt";
  case PlannerId::SyclopEst: return "syclop-est";
  }
  return "?";
}

std::optional<PlannerId> parse_planner(std::string_view name)
{
  for (auto const id : kAllPlanners) {
    if (to_string(id) == name) { return id; }
  }
  return std::nullopt;
}

void check_config(PlannerConfig const &config)
{
  if (!(config.goal_bias >= 0.0 && config.goal_bias <= 1.0)) { throw ContractViolation("goal_bias must lie in [0, 1]"); }
  if (!(config.time_budget > 0.0)) { throw ContractViolation("time budget must be positive"); }
  if (config.max_iterations && *config.max_iterations == 0) { throw ContractViolation("iteration budget must be positive"); }
  if (config.candidate_controls < 0) { throw ContractViolation("candidate_controls must be >= 0"); }
  if (config.max_control_steps < 1) { throw ContractViolation("max_control_steps must be >= 1"); }
  if (!(config.est_radius > 0.0)) { throw ContractViolation("EST radius must be positive"); }
  if (!(config.kpiece_cell_size > 0.0)) { throw ContractViolation("KPIECE cell size must be positive"); }
  if (!(config.kpiece_border_fraction >= 0.0 && config.kpiece_border_fraction <= 1.0)) {
    throw ContractViolation("KPIECE border fraction must lie in [0, 1]");
  }
  if (config.syclop_grid_x < 1 || config.syclop_grid_y < 1) { throw ContractViolation("SyCLoP grid dims must be >= 1"); }
  if (config.syclop_free_volume_samples < 1 || config.syclop_lead_period < 1) {
    throw ContractViolation("SyCLoP sample count and lead period must be >= 1");
  }
}

void check_start(Scene const &scene)
{
  WorldState const s = start_state(scene);
  Validity const v = check_validity(s, detect_contacts(s, scene), scene);
  if (!v.valid) { throw ContractViolation("invalid start state: " + v.reason); }
}

SolutionPath extract_solution(MotionTree const &tree, std::size_t goal_id, Scene const &scene)
{
  SolutionPath path;
  for (auto const id : tree.lineage(goal_id)) {
    Motion const &m = tree[id];
    PathMotion pm{m, {}};
    if (!m.parent) {
      pm.trace.push_back({m.state.time, m.state.robot_pos, m.state.robot_vel});
    } else {
      PropagationResult r = propagate(tree[*m.parent].state, *m.control, scene);
      if (!r.valid || !(r.final == m.state)) {
        throw StructuralError("motion " + std::to_string(id) + " does not re-propagate to its stored state");
      }
      pm.trace = std::move(r.trace);
      path.total_duration += m.control->duration;
    }
    path.motions.push_back(std::move(pm));
  }
  return path;
}

PlanResult solve(PlannerId planner, Scene const &scene, GoalRegion const &goal, PlannerConfig const &config)
{
  switch (planner) {
  case PlannerId::Rrt: return rrt_solve(scene, goal, config);
  case PlannerId::Est: return est_solve(scene, goal, config);
  case PlannerId::Kpiece: return kpiece_solve(scene, goal, config);
  case PlannerId::SyclopRrt: return syclop_solve(scene, goal, config, LowLevelPlanner::Rrt);
  case PlannerId::SyclopEst: return syclop_solve(scene, goal, config, LowLevelPlanner::Est);
  }
  throw ContractViolation("unknown planner");
}

namespace detail {

std::size_t sample_weighted(std::vector<double> const &weights, Rng &rng)
{
  double total = 0.0;
  for (double const w : weights) { total += w; }
  if (!(total > 0.0)) { throw ContractViolation("weighted selection needs a positive total weight"); }
  double const u = std::uniform_real_distribution<double>(0.0, total)(rng);
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (u < acc) { return i; }
  }
  // Rounding: land on the last positive weight.
  for (std::size_t i = weights.size(); i-- > 0;) {
    if (weights[i] > 0.0) { return i; }
  }
  return 0;
}

} // namespace detail

} // namespace kinobench
