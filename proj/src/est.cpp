#include "kinobench/est.hpp"

#include <bit>
#include <cmath>

#include "kinobench/planner.hpp"

namespace kinobench {

std::vector<std::size_t> est_neighbor_counts(std::span<Vec2 const> positions, double radius)
{
  std::vector<std::size_t> counts(positions.size(), 0);
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = 0; j < positions.size(); ++j) {
      if (i != j && (positions[i] - positions[j]).norm() <= radius) { ++counts[i]; }
    }
  }
  return counts;
}

EstDensity::EstDensity(double radius)
  : radius_(radius)
{
  if (!(radius > 0.0)) { throw ContractViolation("EST radius must be positive"); }
}

std::int64_t EstDensity::bucket_key(int x, int y) const
{
  return (static_cast<std::int64_t>(x) << 32) ^ static_cast<std::uint32_t>(y);
}

void EstDensity::fenwick_add(std::size_t i, double delta)
{
  for (std::size_t k = i + 1; k < tree_.size(); k += k & (~k + 1)) { tree_[k] += delta; }
}

std::size_t EstDensity::add(Vec2 const &p)
{
  std::size_t const id = points_.size();
  int const cx = static_cast<int>(std::floor(p.x() / radius_));
  int const cy = static_cast<int>(std::floor(p.y() / radius_));

  // Grow the Fenwick tree: rebuild when capacity is exceeded.
  if (id + 2 > tree_.size()) {
    std::size_t const cap = std::bit_ceil(std::max<std::size_t>(16, (id + 2) * 2));
    tree_.assign(cap, 0.0);
    for (std::size_t i = 0; i < id; ++i) { fenwick_add(i, est_weight(counts_[i])); }
  }

  std::size_t own = 0;
  for (int dx = -1; dx <= 1; ++dx) {
    for (int dy = -1; dy <= 1; ++dy) {
      auto const it = buckets_.find(bucket_key(cx + dx, cy + dy));
      if (it == buckets_.end()) { continue; }
      for (auto const j : it->second) {
        if ((points_[j] - p).norm() > radius_) { continue; }
        ++own;
        double const before = est_weight(counts_[j]);
        ++counts_[j];
        fenwick_add(j, est_weight(counts_[j]) - before);
      }
    }
  }
  points_.push_back(p);
  counts_.push_back(own);
  buckets_[bucket_key(cx, cy)].push_back(id);
  fenwick_add(id, est_weight(own));
  return id;
}

double EstDensity::total_weight() const
{
  double total = 0.0;
  for (std::size_t k = points_.size(); k > 0; k -= k & (~k + 1)) { total += tree_[k]; }
  return total;
}

std::size_t EstDensity::sample(Rng &rng) const
{
  if (points_.empty()) { throw ContractViolation("cannot sample from an empty milestone set"); }
  double u = std::uniform_real_distribution<double>(0.0, total_weight())(rng);
  // Fenwick descent for the first prefix sum exceeding u.
  std::size_t pos = 0;
  for (std::size_t step = std::bit_floor(tree_.size() - 1); step > 0; step >>= 1) {
    std::size_t const next = pos + step;
    if (next < tree_.size() && tree_[next] <= u) {
      pos = next;
      u -= tree_[next];
    }
  }
  return std::min(pos, points_.size() - 1);
}

PlanResult est_solve(Scene const &scene, GoalRegion const &goal, PlannerConfig const &config)
{
  check_config(config);
  check_start(scene);
  detail::Budget const budget(config);
  Rng rng(config.seed);
  int const candidates = config.candidate_controls > 0 ? config.candidate_controls : 1;

  MotionTree tree;
  EstDensity density(config.est_radius);
  PlanResult result;
  std::size_t const root = tree.add_root(start_state(scene));
  density.add(project(tree[root].state));
  std::optional<std::size_t> reached;
  if (in_goal(tree[root].state, goal)) { reached = root; }

  while (!reached && !budget.exhausted(result.stats.iterations)) {
    ++result.stats.iterations;
    std::size_t const milestone = density.sample(rng);
    for (int c = 0; c < candidates && !reached; ++c) {
      Control const control = sample_control(rng, scene, config.max_control_steps);
      PropagationResult r = propagate(tree[milestone].state, control, scene);
      if (!r.valid) { continue; }
      std::size_t const id = tree.add(milestone, std::move(r.final), control);
      density.add(project(tree[id].state));
      // Endgame region: any milestone inside the goal region ends the search.
      if (in_goal(tree[id].state, goal)) { reached = id; }
    }
  }

  result.stats.motions = tree.size();
  result.stats.wall_time_s = budget.elapsed();
  if (reached) { result.solution = extract_solution(tree, *reached, scene); }
  return result;
}

} // namespace kinobench
