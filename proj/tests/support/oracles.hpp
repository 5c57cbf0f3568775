#pragma once

#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kinobench/kpiece.hpp"
#include "kinobench/planner.hpp"
#include "kinobench/syclop.hpp"

namespace kinobench::oracle {

// Replays the path's controls from the scene start with the bare propagator. Returns an empty string when
// every stored endpoint is reproduced bit-exactly, every propagation is valid and the path ends in the goal.
inline std::string revalidate(SolutionPath const &path, Scene const &scene, GoalRegion const &goal)
{
  if (path.motions.empty()) { return "empty path"; }
  WorldState state = start_state(scene);
  if (!(path.start() == state)) { return "path does not start at the scene start state"; }
  double duration = 0.0;
  for (std::size_t i = 1; i < path.motions.size(); ++i) {
    auto const &m = path.motions[i].motion;
    if (!m.control) { return "motion " + std::to_string(i) + " has no control"; }
    if (m.parent != path.motions[i - 1].motion.id) { return "motion " + std::to_string(i) + " is not a child of its predecessor"; }
    auto const r = propagate(state, *m.control, scene);
    if (!r.valid) { return "motion " + std::to_string(i) + " propagates invalid: " + r.validity.reason; }
    if (!(r.final == m.state)) { return "motion " + std::to_string(i) + " endpoint differs on re-propagation"; }
    duration += m.control->duration;
    state = r.final;
  }
  if (!in_goal(state, goal)) { return "path ends outside the goal region"; }
  if (std::abs(duration - path.total_duration) > 1e-9) { return "total duration mismatch"; }
  return {};
}

struct Audit
{
  std::size_t robot_contacts = 0;
  std::size_t constrained_contacts = 0;
  std::size_t disallowed = 0;
  std::size_t fixed_penetrations = 0;
  std::size_t allowed_pushes_y = 0; ///< constrained contacts on a face whose normal is along y
};

// Recomputes the contact sets along the path and judges every robot contact with a constraint-oriented
// body by its outward face normal (30 degree cone around the allowed axis).
inline Audit contact_audit(SolutionPath const &path, Scene const &scene)
{
  Audit a;
  double const cone = std::cos(30.0 * M_PI / 180.0);
  WorldState state = start_state(scene);
  for (std::size_t i = 1; i < path.motions.size(); ++i) {
    ContactLog log;
    auto const r = propagate(state, *path.motions[i].motion.control, scene, &log);
    for (auto const &step : log) {
      for (auto const &c : step) {
        auto const &second = scene.bodies[c.second];
        if (second.kind == BodyKind::Fixed && c.contact.penetration > kContactTolerance) { ++a.fixed_penetrations; }
        if (c.first != kRobot) { continue; }
        ++a.robot_contacts;
        if (second.kind != BodyKind::ConstraintOriented) { continue; }
        ++a.constrained_contacts;
        Vec2 const n = c.contact.normal; // out of the body, towards the robot
        bool ok = true;
        if (second.allowed_push_axis == PushAxis::X) { ok = std::abs(n.x()) >= cone; }
        if (second.allowed_push_axis == PushAxis::Y) { ok = std::abs(n.y()) >= cone; }
        if (!ok) { ++a.disallowed; }
        if (std::abs(n.y()) >= cone) { ++a.allowed_pushes_y; }
      }
    }
    state = r.final;
  }
  return a;
}

// Interior: all four orthogonal neighbours instantiated.
inline std::set<CellCoord> brute_interior(std::set<CellCoord> const &cells)
{
  std::set<CellCoord> out;
  for (auto const &c : cells) {
    int n = 0;
    for (auto const &d : {CellCoord{1, 0}, CellCoord{-1, 0}, CellCoord{0, 1}, CellCoord{0, -1}}) {
      n += cells.contains(CellCoord{c[0] + d[0], c[1] + d[1]}) ? 1 : 0;
    }
    if (n == 4) { out.insert(c); }
  }
  return out;
}

// Breadth-first region distance on an nx * ny grid (row-major indices).
inline int bfs_hops(int nx, int ny, int from, int to)
{
  std::vector<int> dist(static_cast<std::size_t>(nx * ny), -1);
  std::deque<int> q{from};
  dist[from] = 0;
  while (!q.empty()) {
    int const cur = q.front();
    q.pop_front();
    int const x = cur % nx;
    int const y = cur / nx;
    int const cand[4][2] = {{x + 1, y}, {x - 1, y}, {x, y + 1}, {x, y - 1}};
    for (auto const &c : cand) {
      if (c[0] < 0 || c[1] < 0 || c[0] >= nx || c[1] >= ny) { continue; }
      int const k = c[1] * nx + c[0];
      if (dist[k] < 0) {
        dist[k] = dist[cur] + 1;
        q.push_back(k);
      }
    }
  }
  return dist[to];
}

inline bool lead_is_valid(Lead const &lead, Decomposition const &d, std::size_t from, std::size_t to)
{
  if (lead.empty() || lead.front() != from || lead.back() != to) { return false; }
  for (std::size_t i = 1; i < lead.size(); ++i) {
    int const ax = static_cast<int>(lead[i - 1]) % d.nx();
    int const ay = static_cast<int>(lead[i - 1]) / d.nx();
    int const bx = static_cast<int>(lead[i]) % d.nx();
    int const by = static_cast<int>(lead[i]) / d.nx();
    if (std::abs(ax - bx) + std::abs(ay - by) != 1) { return false; }
  }
  return true;
}

// An open 10 m x 10 m world without bodies.
inline Scene empty_scene(Vec2 start = {2.0, 5.0}, Vec2 goal = {5.0, 5.0})
{
  Scene s;
  s.name = "empty";
  s.bounds = {Vec2(0.0, 0.0), Vec2(10.0, 10.0)};
  s.robot.start = start;
  s.robot.goal = goal;
  s.robot.goal_radius = 2.0 * s.robot.radius;
  return s;
}

// Standard normal tail check: |observed - n p| <= 3 sqrt(n p (1 - p)).
inline bool within_3_sigma(std::size_t observed, std::size_t n, double p)
{
  double const mean = static_cast<double>(n) * p;
  double const sigma = std::sqrt(static_cast<double>(n) * p * (1.0 - p));
  return std::abs(static_cast<double>(observed) - mean) <= 3.0 * sigma;
}

// runs.csv text with the planning_time_s column (the sixth) removed from every line.
inline std::string without_time_column(std::string const &csv)
{
  std::istringstream in(csv);
  std::string line;
  std::string out;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string f;
    int i = 0;
    while (std::getline(fields, f, ',')) {
      if (i++ != 5) { out += f + ','; }
    }
    out += '\n';
  }
  return out;
}

} // namespace kinobench::oracle
