#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kinobench/metrics.hpp"
#include "support/oracles.hpp"

using namespace kinobench;

namespace {

TrajectorySegment segment(Vec2 f, double dt, double eps, Vec2 d)
{
  return {f, dt, eps, d, {}};
}

double action_of(std::vector<TrajectorySegment> const &s) { return action(std::span<TrajectorySegment const>(s)); }
double power_of(std::vector<TrajectorySegment> const &s) { return power(std::span<TrajectorySegment const>(s)); }

SolutionPath path_of(Scene const &scene, std::vector<Control> const &controls)
{
  MotionTree tree;
  std::size_t id = tree.add_root(start_state(scene));
  for (auto const &c : controls) {
    auto const r = propagate(tree[id].state, c, scene);
    REQUIRE(r.valid);
    id = tree.add(id, r.final, c);
  }
  return extract_solution(tree, id, scene);
}

} // namespace

TEST_CASE("action")
{
  CHECK(action_of({}) == 0.0);
  auto const one = segment(Vec2(10, 0), 1.0, 2.0, Vec2(2, 0));
  CHECK(action_of({one}) == 20.0);
  CHECK(action_of({one, one}) == 2.0 * action_of({one}));
  CHECK(action_of({segment(Vec2(3, 4), 2.0, 0.5, Vec2(0.1, 0))}) == 5.0);
}

TEST_CASE("power")
{
  CHECK(power_of({segment(Vec2(3, 4), 0.5, 0.5, Vec2(0.3, 0.4))}) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(power_of({segment(Vec2(1, 0), 0.5, 1.0, Vec2(0, 1))}) == 0.0);
  auto const fwd = segment(Vec2(2, 0), 1.0, 1.0, Vec2(1, 0));
  auto const back = segment(Vec2(2, 0), 1.0, 1.0, Vec2(-1, 0));
  CHECK(power_of({back}) < 0.0);
  CHECK(power_of({fwd, back}) < power_of({fwd}));
}

TEST_CASE("smoothness of analytic signals")
{
  double const h = 0.007;
  std::vector<Vec2> constant(100, Vec2(1, 2));
  CHECK(smoothness_of_velocities<double>(constant, h) == 0.0);

  std::vector<Vec2> ramp;
  for (int k = 0; k < 100; ++k) { ramp.emplace_back(3.0 * k * h, -1.0 * k * h); }
  CHECK(smoothness_of_velocities<double>(ramp, h) < 1e-9);

  // v = sin t gives jerk -sin t; the squared integral over one period is pi.
  std::vector<Vec2> sine;
  int const n = static_cast<int>(std::floor(2.0 * M_PI / h));
  for (int k = 0; k <= n; ++k) { sine.emplace_back(std::sin(k * h), 0.0); }
  double const s = smoothness_of_velocities<double>(sine, h);
  CHECK(std::abs(s - M_PI) / M_PI < 0.02);

  std::vector<Vec2> two(2, Vec2(1, 0));
  CHECK(smoothness_of_velocities<double>(two, h) == 0.0);
}

TEST_CASE("concatenation drops the shared boundary sample")
{
  TrajectorySegment a{Vec2(1, 0), 0.014, 0.0, Vec2::Zero(), {Vec2(0, 0), Vec2(1, 0), Vec2(2, 0)}};
  TrajectorySegment b{Vec2(1, 0), 0.014, 0.0, Vec2::Zero(), {Vec2(2, 0), Vec2(3, 0), Vec2(4, 0)}};
  std::vector<TrajectorySegment> const segs{a, b};
  auto const v = concatenated_velocities(std::span<TrajectorySegment const>(segs));
  REQUIRE(v.size() == 5);
  CHECK(smoothness(std::span<TrajectorySegment const>(segs), 0.007) == 0.0);
}

TEST_CASE("segments from a propagated path")
{
  Scene s = oracle::empty_scene();
  s.dynamics.mu = 0.0;
  SolutionPath const root_only = path_of(s, {});
  CHECK(segments_from_path(root_only).empty());

  SolutionPath const p = path_of(s, {{Vec2(10, 0), 0.35}, {Vec2(-10, 0), 0.7}, {Vec2(10, 0), 0.35}});
  auto const segs = segments_from_path(p);
  REQUIRE(segs.size() == 3);
  Vec2 total = Vec2::Zero();
  double arc = 0.0;
  for (auto const &g : segs) {
    CHECK(g.path_length >= g.displacement.norm() - 1e-12);
    CHECK(g.velocity_trace.size() == static_cast<std::size_t>(std::lround(g.duration / 0.007)) + 1);
    total += g.displacement;
    arc += g.path_length;
  }
  CHECK(total.norm() < 1e-12);
  CHECK(arc > 0.5);

  // A single constant-force motion from rest moves in a straight line.
  SolutionPath const straight = path_of(s, {{Vec2(0, 10), 0.7}});
  auto const one = segments_from_path(straight);
  CHECK(one[0].path_length == doctest::Approx(one[0].displacement.norm()).epsilon(1e-12));
  CHECK(smoothness(std::span<TrajectorySegment const>(one), 0.007) < 1e-9);

  SolutionPath broken = straight;
  broken.motions.back().trace.pop_back();
  CHECK_THROWS_AS(segments_from_path(broken), StructuralError);
}

TEST_CASE("scaling force and mass together scales action and power")
{
  Scene s = oracle::empty_scene();
  s.dynamics.mu = 0.0;
  s.dynamics.f_max = 20.0;
  std::vector<Control> const cs{{Vec2(3, 4), 0.21}, {Vec2(-5, 1), 0.49}};
  SolutionPath const base = path_of(s, cs);
  Scene s2 = s;
  s2.robot.mass *= 2.0;
  std::vector<Control> cs2 = cs;
  for (auto &c : cs2) { c.force *= 2.0; }
  SolutionPath const scaled = path_of(s2, cs2);
  auto const a = evaluate(base, 0.007, 0.0);
  auto const b = evaluate(scaled, 0.007, 0.0);
  CHECK(b.action == doctest::Approx(2.0 * a.action).epsilon(1e-12));
  CHECK(b.power == doctest::Approx(2.0 * a.power).epsilon(1e-12));
  CHECK(b.smoothness == doctest::Approx(a.smoothness).epsilon(1e-9));
}

TEST_CASE("aggregate")
{
  std::vector<MetricsReport> runs;
  for (int i = 0; i < 7; ++i) { runs.push_back({2.0, 1.0, 3.0, 4.0, true}); }
  for (int i = 0; i < 3; ++i) { runs.push_back(failed_run(60.0)); }
  auto const s = aggregate(runs, 60.0);
  CHECK(s.success_rate == 0.7);
  CHECK(s.action == 2.0);
  CHECK(s.power == 1.0);
  CHECK(s.smoothness == 3.0);
  CHECK(s.planning_time == 4.0);

  std::vector<MetricsReport> const fails(4, failed_run(60.0));
  auto const f = aggregate(fails, 60.0);
  CHECK(f.success_rate == 0.0);
  CHECK(std::isinf(f.action));
  CHECK(std::isinf(f.power));
  CHECK(std::isinf(f.smoothness));
  CHECK(f.planning_time == 60.0);

  CHECK_THROWS_AS(aggregate({}, 60.0), ContractViolation);
}
