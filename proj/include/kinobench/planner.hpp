#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "kinobench/statespace.hpp"

namespace kinobench {

/// Integer coordinate of a projection grid cell; compares lexicographically.
using CellCoord = std::array<int, 2>;

/// Tree node. The root carries no parent and no control.
struct Motion
{
  std::size_t id = 0;
  std::optional<std::size_t> parent;
  WorldState state;
  std::optional<Control> control;
  std::optional<CellCoord> cell;
};

class MotionTree
{
public:
  std::size_t add_root(WorldState state);
  std::size_t add(std::size_t parent, WorldState state, Control control);

  Motion const &operator[](std::size_t id) const { return motions_[id]; }
  Motion &operator[](std::size_t id) { return motions_[id]; }
  std::size_t size() const { return motions_.size(); }
  bool empty() const { return motions_.empty(); }
  std::vector<Motion> const &motions() const { return motions_; }

  /// Ids from the root to `id`, inclusive.
  std::vector<std::size_t> lineage(std::size_t id) const;

private:
  std::vector<Motion> motions_;
};

struct PathMotion
{
  Motion motion;
  std::vector<TraceSample> trace; ///< substep trace of the motion's control; a single sample for the root
};

/// Root-to-goal motion sequence. Consecutive entries are parent and child.
struct SolutionPath
{
  std::vector<PathMotion> motions;
  double total_duration = 0.0;

  std::vector<Control> controls() const;
  WorldState const &start() const { return motions.front().motion.state; }
  WorldState const &final() const { return motions.back().motion.state; }
};

struct PlannerStats
{
  std::uint64_t iterations = 0;
  std::size_t motions = 0;
  double wall_time_s = 0.0;
  // KPIECE grid statistics.
  std::size_t cells = 0;
  std::size_t exterior_cells = 0;
  std::size_t interior_cells = 0;
  std::size_t min_exterior_cells = 0;
  // SyCLoP statistics.
  std::size_t lead_computations = 0;
};

struct PlanResult
{
  std::optional<SolutionPath> solution;
  PlannerStats stats;
  bool solved() const { return solution.has_value(); }
};

enum class PlannerId
{
  Rrt,
  Est,
  Kpiece,
  SyclopRrt,
  SyclopEst,
};

inline constexpr std::array<PlannerId, 5> kAllPlanners{PlannerId::Rrt, PlannerId::Est, PlannerId::Kpiece,
                                                       PlannerId::SyclopRrt, PlannerId::SyclopEst};

std::string_view to_string(PlannerId id);
std::optional<PlannerId> parse_planner(std::string_view name);

struct PlannerConfig
{
  double goal_bias = kDefaultGoalBias;
  /// Candidate controls per expansion; 0 selects the planner default (RRT 10, EST/KPIECE 1).
  int candidate_controls = 0;
  double time_budget = 60.0; ///< s, wall clock
  std::optional<std::uint64_t> max_iterations;
  std::uint64_t seed = 0;
  int max_control_steps = kDefaultMaxControlSteps;
  bool grid_nearest = false; ///< bucket-grid accelerator for RRT nearest-neighbour queries

  double est_radius = 1.0;          ///< m
  double kpiece_cell_size = 0.5;    ///< m
  double kpiece_border_fraction = 0.8;

  int syclop_grid_x = 10;
  int syclop_grid_y = 10;
  int syclop_free_volume_samples = 400;
  int syclop_lead_period = 50;
  double syclop_exploration_probability = 0.05;
};

/// Validates a config; throws ContractViolation.
void check_config(PlannerConfig const &config);

/// Throws ContractViolation when the scene's start state is not valid.
void check_start(Scene const &scene);

/**
 * Rebuilds the root-to-`goal_id` path, re-propagating every control from its parent state to recover the
 * substep traces. Throws StructuralError if a re-propagated endpoint differs from the stored one.
 */
SolutionPath extract_solution(MotionTree const &tree, std::size_t goal_id, Scene const &scene);

PlanResult rrt_solve(Scene const &scene, GoalRegion const &goal, PlannerConfig const &config);
PlanResult est_solve(Scene const &scene, GoalRegion const &goal, PlannerConfig const &config);
PlanResult kpiece_solve(Scene const &scene, GoalRegion const &goal, PlannerConfig const &config);

/// Dispatches to the named planner (SyCLoP variants included).
PlanResult solve(PlannerId planner, Scene const &scene, GoalRegion const &goal, PlannerConfig const &config);

namespace detail {

/// Wall-clock and iteration budget, polled once per planner iteration.
class Budget
{
public:
  explicit Budget(PlannerConfig const &config)
    : start_(std::chrono::steady_clock::now())
    , seconds_(config.time_budget)
    , max_iterations_(config.max_iterations)
  {
  }

  bool exhausted(std::uint64_t iterations) const
  {
    if (max_iterations_ && iterations >= *max_iterations_) { return true; }
    return elapsed() >= seconds_;
  }

  double elapsed() const
  {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_;
  double seconds_;
  std::optional<std::uint64_t> max_iterations_;
};

/// Index drawn with probability proportional to `weights` (non-negative, positive sum).
std::size_t sample_weighted(std::vector<double> const &weights, Rng &rng);

} // namespace detail

} // namespace kinobench
