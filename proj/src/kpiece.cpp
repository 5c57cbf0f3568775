#include "kinobench/kpiece.hpp"

#include <cmath>

namespace kinobench {

namespace {

constexpr std::array<CellCoord, 4> kOrthogonal{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};

CellCoord offset(CellCoord const &c, CellCoord const &d) { return {c[0] + d[0], c[1] + d[1]}; }

} // namespace

double kpiece_cell_importance(Cell const &cell, std::size_t neighbors, std::uint64_t now)
{
  double const recency = 1.0 / (1.0 + static_cast<double>(now - std::min(now, cell.last_selected_at)));
  double const expansion =
    (static_cast<double>(cell.expansion_successes) + 1.0) / (static_cast<double>(cell.expansion_attempts) + 1.0);
  double const coverage = static_cast<double>(std::max<std::size_t>(1, cell.motions.size()));
  return expansion * recency /
         ((1.0 + static_cast<double>(cell.selections)) * (1.0 + static_cast<double>(neighbors)) * coverage);
}

CellCoord cell_of(Vec2 const &projection, double cell_size)
{
  return {static_cast<int>(std::floor(projection.x() / cell_size)),
          static_cast<int>(std::floor(projection.y() / cell_size))};
}

KpieceGrid::KpieceGrid(double cell_size)
  : cell_size_(cell_size)
{
}

std::size_t KpieceGrid::neighbor_count(CellCoord const &c) const
{
  std::size_t n = 0;
  for (auto const &d : kOrthogonal) { n += cells_.contains(offset(c, d)) ? 1 : 0; }
  return n;
}

CellCoord KpieceGrid::add_motion(Vec2 const &projection, std::size_t motion, std::uint64_t now)
{
  CellCoord const c = cell_of(projection, cell_size_);
  auto it = cells_.find(c);
  if (it == cells_.end()) {
    Cell fresh;
    fresh.coord = c;
    fresh.created_at = now;
    fresh.last_selected_at = now;
    it = cells_.emplace(c, std::move(fresh)).first;
    (neighbor_count(c) == 4 ? interior_ : exterior_).insert(c);
    for (auto const &d : kOrthogonal) {
      CellCoord const n = offset(c, d);
      if (cells_.contains(n) && neighbor_count(n) == 4) {
        exterior_.erase(n);
        interior_.insert(n);
      }
    }
  }
  it->second.motions.push_back(motion);
  return c;
}

CellCoord KpieceGrid::best_of(std::set<CellCoord> const &cls, std::uint64_t now) const
{
  CellCoord best = *cls.begin();
  double best_score = -1.0;
  for (auto const &c : cls) {
    double const score = kpiece_cell_importance(cells_.at(c), neighbor_count(c), now);
    if (score > best_score) {
      best_score = score;
      best = c;
    }
  }
  return best;
}

PlanResult kpiece_solve(Scene const &scene, GoalRegion const &goal, PlannerConfig const &config)
{
  return kpiece_solve(scene, goal, config, {});
}

PlanResult kpiece_solve(Scene const &scene, GoalRegion const &goal, PlannerConfig const &config,
                        KpieceObserver const &observer)
{
  check_config(config);
  check_start(scene);
  detail::Budget const budget(config);
  Rng rng(config.seed);
  int const candidates = config.candidate_controls > 0 ? config.candidate_controls : 1;
  double const step = scene.dynamics.control_step;

  MotionTree tree;
  KpieceGrid grid(config.kpiece_cell_size);
  PlanResult result;
  auto &stats = result.stats;

  auto insert = [&](std::size_t id, std::uint64_t now) {
    tree[id].cell = grid.add_motion(project(tree[id].state), id, now);
  };

  std::size_t const root = tree.add_root(start_state(scene));
  insert(root, 0);
  stats.min_exterior_cells = grid.exterior().size();
  std::optional<std::size_t> reached;
  if (in_goal(tree[root].state, goal)) { reached = root; }

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (!reached && !budget.exhausted(stats.iterations)) {
    std::uint64_t const now = ++stats.iterations;

    bool want_exterior = unit(rng) < config.kpiece_border_fraction;
    if (want_exterior && grid.exterior().empty()) { want_exterior = false; }
    if (!want_exterior && grid.interior().empty()) { want_exterior = true; }
    CellCoord const chosen = grid.best_of(want_exterior ? grid.exterior() : grid.interior(), now);
    Cell &cell = grid.cell(chosen);
    ++cell.selections;
    cell.last_selected_at = now;

    // Uniform motion in the cell, then a uniform control-step boundary along it.
    std::size_t const picked =
      cell.motions[std::uniform_int_distribution<std::size_t>(0, cell.motions.size() - 1)(rng)];
    std::size_t from = picked;
    if (auto const &control = tree[picked].control) {
      int const steps = static_cast<int>(std::lround(control->duration / step));
      int const at = std::uniform_int_distribution<int>(1, steps)(rng);
      if (at < steps) {
        // Materialize the intermediate state as its own motion so every tree edge stays a whole control.
        Control const prefix{control->force, at * step};
        std::size_t const parent = *tree[picked].parent;
        PropagationResult r = propagate(tree[parent].state, prefix, scene);
        if (!r.valid) { throw StructuralError("prefix of a valid motion failed to re-propagate"); }
        from = tree.add(parent, std::move(r.final), prefix);
        insert(from, now);
        if (in_goal(tree[from].state, goal)) {
          reached = from;
          break;
        }
      }
    }

    for (int c = 0; c < candidates && !reached; ++c) {
      Control const control = sample_control(rng, scene, config.max_control_steps);
      PropagationResult r = propagate(tree[from].state, control, scene);
      Cell &selected = grid.cell(chosen);
      ++selected.expansion_attempts;
      if (!r.valid) { continue; }
      ++selected.expansion_successes;
      std::size_t const id = tree.add(from, std::move(r.final), control);
      insert(id, now);
      if (in_goal(tree[id].state, goal)) { reached = id; }
    }

    stats.min_exterior_cells = std::min(stats.min_exterior_cells, grid.exterior().size());
    if (observer && now % 100 == 0) { observer(grid, now); }
  }

  stats.motions = tree.size();
  stats.cells = grid.cells().size();
  stats.exterior_cells = grid.exterior().size();
  stats.interior_cells = grid.interior().size();
  stats.wall_time_s = budget.elapsed();
  if (reached) { result.solution = extract_solution(tree, *reached, scene); }
  return result;
}

} // namespace kinobench
