#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "kinobench/planner.hpp"

namespace kinobench {

struct Cell
{
  CellCoord coord{};
  std::vector<std::size_t> motions;
  std::uint64_t selections = 0;
  std::uint64_t created_at = 0;
  std::uint64_t last_selected_at = 0;
  std::uint64_t expansion_successes = 0;
  std::uint64_t expansion_attempts = 0;
};

/**
 * Cell importance, higher is better:
 *
 *   importance = E * R / ((1 + S) * (1 + N) * C)
 *
 * with recency R = 1 / (1 + now - last_selected_at), selections S, instantiated orthogonal neighbours N,
 * coverage C = |motions| and expansion factor E = (successes + 1) / (attempts + 1).
 */
double kpiece_cell_importance(Cell const &cell, std::size_t neighbors, std::uint64_t now);

CellCoord cell_of(Vec2 const &projection, double cell_size);

/// Sparse projection grid with incrementally maintained interior/exterior classification.
class KpieceGrid
{
public:
  explicit KpieceGrid(double cell_size);

  /// Adds a motion to the cell containing `projection`, instantiating it if needed. Returns its coordinate.
  CellCoord add_motion(Vec2 const &projection, std::size_t motion, std::uint64_t now);

  Cell &cell(CellCoord const &c) { return cells_.at(c); }
  Cell const &cell(CellCoord const &c) const { return cells_.at(c); }
  bool contains(CellCoord const &c) const { return cells_.contains(c); }
  std::size_t neighbor_count(CellCoord const &c) const;
  bool is_interior(CellCoord const &c) const { return interior_.contains(c); }

  std::map<CellCoord, Cell> const &cells() const { return cells_; }
  std::set<CellCoord> const &interior() const { return interior_; }
  std::set<CellCoord> const &exterior() const { return exterior_; }
  double cell_size() const { return cell_size_; }

  /// Highest-importance cell of a class; ties go to the lowest coordinate.
  CellCoord best_of(std::set<CellCoord> const &cls, std::uint64_t now) const;

private:
  double cell_size_;
  std::map<CellCoord, Cell> cells_;
  std::set<CellCoord> interior_;
  std::set<CellCoord> exterior_;
};

/// Called every 100 iterations with the current grid (used by tests to audit the classification).
using KpieceObserver = std::function<void(KpieceGrid const &, std::uint64_t iteration)>;

PlanResult kpiece_solve(Scene const &scene, GoalRegion const &goal, PlannerConfig const &config,
                        KpieceObserver const &observer);

} // namespace kinobench
