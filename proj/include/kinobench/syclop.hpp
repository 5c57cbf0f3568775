#pragma once

#include <functional>
#include <vector>

#include "kinobench/planner.hpp"

namespace kinobench {

struct Region
{
  std::size_t index = 0;
  Bounds rect;
  double free_volume = 1.0; ///< estimated collision-free fraction of robot placements, in [0, 1]
  std::size_t coverage = 0; ///< tree motions whose endpoint lies in the region
  std::size_t selections = 0;
};

/// Uniform grid decomposition of the workspace; region index = row * nx + column.
class Decomposition
{
public:
  Decomposition(Bounds const &bounds, int nx, int ny);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  std::size_t size() const { return regions_.size(); }
  Region &operator[](std::size_t i) { return regions_[i]; }
  Region const &operator[](std::size_t i) const { return regions_[i]; }
  std::vector<Region> const &regions() const { return regions_; }

  /// Region containing `p`; points on a shared boundary belong to the lower-index region.
  std::size_t locate(Vec2 const &p) const;
  /// 4-neighbourhood, in increasing index order.
  std::vector<std::size_t> neighbors(std::size_t i) const;

private:
  Bounds bounds_;
  int nx_;
  int ny_;
  std::vector<Region> regions_;
};

/// Uniform grid with free-volume estimates from `samples` robot placements per region against Fixed bodies.
Decomposition decompose(Scene const &scene, int nx, int ny, int samples, std::uint64_t seed);

/// Entering cost of a region: (1 + coverage)(1 + selections) / (1e-3 + free_volume^2).
double region_cost(Region const &r);

/// Ordered, adjacent region indices from the start region to the goal region.
using Lead = std::vector<std::size_t>;

/// Dijkstra lead under `region_cost`, ties by lowest index.
Lead shortest_lead(Decomposition const &decomp, std::size_t start_region, std::size_t goal_region);
/// Randomized depth-first lead.
Lead random_lead(Decomposition const &decomp, std::size_t start_region, std::size_t goal_region, Rng &rng);

/// With probability 1 - exploration_probability the shortest lead, otherwise a random depth-first lead.
Lead compute_lead(Decomposition const &decomp, std::size_t start_region, std::size_t goal_region, Rng &rng,
                  double exploration_probability = 0.05);

/// Region selection weight: free_volume^2 / (1 + selections).
double region_selection_weight(Region const &r);

/**
 * Samples a lead region that holds at least one motion, with probability proportional to
 * `region_selection_weight`, and counts the selection. Falls back to the lead's first region.
 */
std::size_t select_region(Lead const &lead, Decomposition &decomp, Rng &rng);

enum class LowLevelPlanner
{
  Rrt,
  Est,
};

/// Test hook, invoked after every iteration and lead recomputation.
struct SyclopObserver
{
  std::function<void(Lead const &, Decomposition const &)> on_lead;
  std::function<void(Decomposition const &, MotionTree const &)> on_iteration;
};

PlanResult syclop_solve(Scene const &scene, GoalRegion const &goal, PlannerConfig const &config,
                        LowLevelPlanner low_level, SyclopObserver const &observer = {});

} // namespace kinobench
