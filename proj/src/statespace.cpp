#include "kinobench/statespace.hpp"

namespace kinobench {

GoalRegion goal_region(Scene const &scene) { return {scene.robot.goal, scene.robot.goal_radius}; }

Control sample_control(Rng &rng, Scene const &scene, int max_steps)
{
  double const f = scene.dynamics.f_max;
  std::uniform_real_distribution<double> force(-f, f);
  std::uniform_int_distribution<int> steps(1, max_steps);
  Control c;
  c.force.x() = force(rng);
  c.force.y() = force(rng);
  c.duration = steps(rng) * scene.dynamics.control_step;
  return c;
}

Vec2 sample_uniform(Rng &rng, Bounds const &bounds)
{
  auto axis = [&](double lo, double hi) {
    if (!(hi > lo)) { return lo; }
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  double const x = axis(bounds.min.x(), bounds.max.x());
  double const y = axis(bounds.min.y(), bounds.max.y());
  return {x, y};
}

Vec2 sample_goal_biased_target(Rng &rng, GoalRegion const &goal, Bounds const &bounds, double goal_bias)
{
  if (std::uniform_real_distribution<double>(0.0, 1.0)(rng) < goal_bias) { return goal.center; }
  return sample_uniform(rng, bounds);
}

} // namespace kinobench
