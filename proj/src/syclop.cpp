#include "kinobench/syclop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "kinobench/est.hpp"

namespace kinobench {

namespace {

constexpr int kRrtDefaultCandidates = 10;
constexpr double kFreeVolumeEpsilon = 1e-3;

std::uint64_t mix(std::uint64_t x)
{
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

} // namespace

Decomposition::Decomposition(Bounds const &bounds, int nx, int ny)
  : bounds_(bounds)
  , nx_(nx)
  , ny_(ny)
{
  if (nx < 1 || ny < 1) { throw ContractViolation("decomposition needs at least one region per axis"); }
  double const w = (bounds.max.x() - bounds.min.x()) / nx;
  double const h = (bounds.max.y() - bounds.min.y()) / ny;
  for (int row = 0; row < ny; ++row) {
    for (int col = 0; col < nx; ++col) {
      Region r;
      r.index = regions_.size();
      // Outer edges snap to the bounds so the tiling is exact.
      r.rect.min = Vec2(bounds.min.x() + col * w, bounds.min.y() + row * h);
      r.rect.max = Vec2(col + 1 == nx ? bounds.max.x() : bounds.min.x() + (col + 1) * w,
                        row + 1 == ny ? bounds.max.y() : bounds.min.y() + (row + 1) * h);
      regions_.push_back(r);
    }
  }
}

std::size_t Decomposition::locate(Vec2 const &p) const
{
  auto axis = [](double v, double lo, double hi, int n) {
    double const t = (v - lo) / (hi - lo) * n;
    int const i = static_cast<int>(std::ceil(t)) - 1;
    return std::clamp(i, 0, n - 1);
  };
  int const col = axis(p.x(), bounds_.min.x(), bounds_.max.x(), nx_);
  int const row = axis(p.y(), bounds_.min.y(), bounds_.max.y(), ny_);
  return static_cast<std::size_t>(row) * static_cast<std::size_t>(nx_) + static_cast<std::size_t>(col);
}

std::vector<std::size_t> Decomposition::neighbors(std::size_t i) const
{
  int const col = static_cast<int>(i) % nx_;
  int const row = static_cast<int>(i) / nx_;
  std::vector<std::size_t> out;
  if (row > 0) { out.push_back(i - static_cast<std::size_t>(nx_)); }
  if (col > 0) { out.push_back(i - 1); }
  if (col + 1 < nx_) { out.push_back(i + 1); }
  if (row + 1 < ny_) { out.push_back(i + static_cast<std::size_t>(nx_)); }
  return out;
}

Decomposition decompose(Scene const &scene, int nx, int ny, int samples, std::uint64_t seed)
{
  if (samples < 1) { throw ContractViolation("free-volume estimation needs at least one sample"); }
  Decomposition decomp(scene.bounds, nx, ny);
  Shape const robot = scene.robot_shape();
  for (std::size_t i = 0; i < decomp.size(); ++i) {
    Region &r = decomp[i];
    Rng rng(mix(seed ^ mix(i)));
    int free = 0;
    for (int k = 0; k < samples; ++k) {
      Vec2 const p = sample_uniform(rng, r.rect);
      bool blocked = false;
      for (auto const &body : scene.bodies) {
        if (body.kind != BodyKind::Fixed) { continue; }
        auto const c = collide(robot, p, body.shape, body.pose, 0.0);
        if (c && c->penetration > 0.0) {
          blocked = true;
          break;
        }
      }
      free += blocked ? 0 : 1;
    }
    r.free_volume = static_cast<double>(free) / samples;
  }
  return decomp;
}

double region_cost(Region const &r)
{
  return (1.0 + static_cast<double>(r.coverage)) * (1.0 + static_cast<double>(r.selections)) /
         (kFreeVolumeEpsilon + r.free_volume * r.free_volume);
}

Lead shortest_lead(Decomposition const &decomp, std::size_t start_region, std::size_t goal_region)
{
  std::size_t const n = decomp.size();
  if (start_region >= n || goal_region >= n) { throw ContractViolation("lead endpoints outside the decomposition"); }
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> prev(n, n);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  dist[start_region] = 0.0;
  open.emplace(0.0, start_region);
  while (!open.empty()) {
    auto const [d, u] = open.top();
    open.pop();
    if (d > dist[u]) { continue; }
    if (u == goal_region) { break; }
    for (auto const v : decomp.neighbors(u)) {
      double const nd = d + region_cost(decomp[v]);
      if (nd < dist[v]) {
        dist[v] = nd;
        prev[v] = u;
        open.emplace(nd, v);
      }
    }
  }
  if (!std::isfinite(dist[goal_region])) { throw StructuralError("no lead between the start and goal regions"); }
  Lead lead;
  for (std::size_t v = goal_region; v != n; v = prev[v]) { lead.push_back(v); }
  std::reverse(lead.begin(), lead.end());
  return lead;
}

Lead random_lead(Decomposition const &decomp, std::size_t start_region, std::size_t goal_region, Rng &rng)
{
  std::size_t const n = decomp.size();
  if (start_region >= n || goal_region >= n) { throw ContractViolation("lead endpoints outside the decomposition"); }
  std::vector<bool> seen(n, false);
  Lead stack{start_region};
  seen[start_region] = true;
  while (!stack.empty() && stack.back() != goal_region) {
    auto options = decomp.neighbors(stack.back());
    std::erase_if(options, [&](std::size_t v) { return seen[v]; });
    if (options.empty()) {
      stack.pop_back();
      continue;
    }
    std::size_t const next = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
    seen[next] = true;
    stack.push_back(next);
  }
  if (stack.empty()) { throw StructuralError("no lead between the start and goal regions"); }
  return stack;
}

Lead compute_lead(Decomposition const &decomp, std::size_t start_region, std::size_t goal_region, Rng &rng,
                  double exploration_probability)
{
  if (std::uniform_real_distribution<double>(0.0, 1.0)(rng) < exploration_probability) {
    return random_lead(decomp, start_region, goal_region, rng);
  }
  return shortest_lead(decomp, start_region, goal_region);
}

double region_selection_weight(Region const &r)
{
  return r.free_volume * r.free_volume / (1.0 + static_cast<double>(r.selections));
}

std::size_t select_region(Lead const &lead, Decomposition &decomp, Rng &rng)
{
  if (lead.empty()) { throw ContractViolation("empty lead"); }
  std::vector<std::size_t> candidates;
  std::vector<double> weights;
  for (auto const r : lead) {
    if (decomp[r].coverage > 0) {
      candidates.push_back(r);
      weights.push_back(region_selection_weight(decomp[r]));
    }
  }
  std::size_t chosen = lead.front();
  if (!candidates.empty()) {
    double total = 0.0;
    for (double const w : weights) { total += w; }
    chosen = total > 0.0 ? candidates[detail::sample_weighted(weights, rng)] : candidates.front();
  }
  ++decomp[chosen].selections;
  return chosen;
}

PlanResult syclop_solve(Scene const &scene, GoalRegion const &goal, PlannerConfig const &config,
                        LowLevelPlanner low_level, SyclopObserver const &observer)
{
  check_config(config);
  check_start(scene);
  detail::Budget const budget(config);
  Rng rng(config.seed);
  Decomposition decomp = decompose(scene, config.syclop_grid_x, config.syclop_grid_y,
                                   config.syclop_free_volume_samples, mix(config.seed ^ 0x5ec10bULL));
  bool const rrt = low_level == LowLevelPlanner::Rrt;
  int const candidates =
    config.candidate_controls > 0 ? config.candidate_controls : (rrt ? kRrtDefaultCandidates : 1);

  MotionTree tree;
  EstDensity density(config.est_radius);
  std::vector<std::vector<std::size_t>> members(decomp.size());
  PlanResult result;
  auto &stats = result.stats;

  std::optional<std::size_t> reached;
  auto insert = [&](std::size_t id) {
    Vec2 const p = project(tree[id].state);
    std::size_t const r = decomp.locate(p);
    ++decomp[r].coverage;
    members[r].push_back(id);
    density.add(p);
    if (in_goal(tree[id].state, goal)) { reached = id; }
  };

  insert(tree.add_root(start_state(scene)));
  std::size_t const start_region = decomp.locate(scene.robot.start);
  std::size_t const goal_region = decomp.locate(goal.center);
  Lead lead;
  auto recompute = [&] {
    lead = compute_lead(decomp, start_region, goal_region, rng, config.syclop_exploration_probability);
    ++stats.lead_computations;
    if (observer.on_lead) { observer.on_lead(lead, decomp); }
  };
  recompute();

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (!reached && !budget.exhausted(stats.iterations)) {
    ++stats.iterations;
    if (stats.iterations % static_cast<std::uint64_t>(config.syclop_lead_period) == 0) { recompute(); }

    std::size_t const region = select_region(lead, decomp, rng);
    auto const at = std::find(lead.begin(), lead.end(), region);
    std::size_t const next = (at != lead.end() && at + 1 != lead.end()) ? *(at + 1) : region;
    auto const &pool = members[region];

    if (rrt) {
      // Grow from the region towards the next region of the lead.
      Vec2 const target = unit(rng) < config.goal_bias ? goal.center : sample_uniform(rng, decomp[next].rect);
      std::size_t near = pool.front();
      double near_d = std::numeric_limits<double>::infinity();
      for (auto const id : pool) {
        double const d = (tree[id].state.robot_pos - target).squaredNorm();
        if (d < near_d) {
          near_d = d;
          near = id;
        }
      }
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
      if (best) { insert(tree.add(near, std::move(best->final), best_control)); }
    } else {
      // EST milestone selection restricted to the region.
      std::vector<double> weights;
      weights.reserve(pool.size());
      for (auto const id : pool) { weights.push_back(density.weight(id)); }
      std::size_t const milestone = pool[detail::sample_weighted(weights, rng)];
      for (int c = 0; c < candidates && !reached; ++c) {
        Control const control = sample_control(rng, scene, config.max_control_steps);
        PropagationResult r = propagate(tree[milestone].state, control, scene);
        if (!r.valid) { continue; }
        insert(tree.add(milestone, std::move(r.final), control));
      }
    }
    if (observer.on_iteration) { observer.on_iteration(decomp, tree); }
  }

  stats.motions = tree.size();
  stats.cells = decomp.size();
  stats.wall_time_s = budget.elapsed();
  if (reached) { result.solution = extract_solution(tree, *reached, scene); }
  return result;
}

} // namespace kinobench
