#pragma once

#include <random>

#include "kinobench/world.hpp"

namespace kinobench {

using Rng = std::mt19937_64;

inline constexpr double kDefaultGoalBias = 0.05;
inline constexpr int kDefaultMaxControlSteps = 10;

/// Closed disc around the robot goal; any state whose robot lies inside counts as the goal.
struct GoalRegion
{
  Vec2 center = Vec2::Zero();
  double radius = 1.0;
};

GoalRegion goal_region(Scene const &scene);

/// Projection used for coverage estimation: the robot's planar position.
inline Vec2 project(WorldState const &s) { return s.robot_pos; }

/// Euclidean distance between robot positions; movable-body poses are ignored.
inline double distance(WorldState const &a, WorldState const &b) { return (a.robot_pos - b.robot_pos).norm(); }

inline bool in_goal(WorldState const &s, GoalRegion const &goal)
{
  return (s.robot_pos - goal.center).norm() <= goal.radius;
}

/// Force components uniform in [-f_max, f_max]; duration k * control_step, k uniform in {1..max_steps}.
Control sample_control(Rng &rng, Scene const &scene, int max_steps = kDefaultMaxControlSteps);

Vec2 sample_uniform(Rng &rng, Bounds const &bounds);

/// Returns the goal center with probability `goal_bias`, else a uniform point in `bounds`.
Vec2 sample_goal_biased_target(Rng &rng, GoalRegion const &goal, Bounds const &bounds,
                               double goal_bias = kDefaultGoalBias);

} // namespace kinobench
