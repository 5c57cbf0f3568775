#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kinobench/statespace.hpp"
#include "support/oracles.hpp"

using namespace kinobench;

namespace {

WorldState at(double x, double y)
{
  WorldState s;
  s.robot_pos = Vec2(x, y);
  return s;
}

} // namespace

TEST_CASE("distance is a metric on robot positions")
{
  CHECK(distance(at(0, 0), at(0, 0)) == 0.0);
  CHECK(distance(at(0, 0), at(3, 4)) == 5.0);
  Rng rng(1);
  Bounds const b{Vec2(-5, -5), Vec2(5, 5)};
  for (int i = 0; i < 1000; ++i) {
    WorldState const a = at(0, 0);
    WorldState x = a, y = a, z = a;
    x.robot_pos = sample_uniform(rng, b);
    y.robot_pos = sample_uniform(rng, b);
    z.robot_pos = sample_uniform(rng, b);
    CHECK(distance(x, z) <= distance(x, y) + distance(y, z) + 1e-12);
    CHECK(distance(x, y) == distance(y, x));
  }
  WorldState moved = at(1, 1);
  moved.bodies.push_back({Vec2(4, 4), Vec2(1, 0)});
  CHECK(distance(moved, at(1, 1)) == 0.0);
}

TEST_CASE("control samples are uniform, bounded and on the step grid")
{
  Scene const s = oracle::empty_scene();
  Rng rng(2);
  double sx = 0.0, sy = 0.0;
  double lo = 0.0, hi = 0.0;
  int const n = 100000;
  for (int i = 0; i < n; ++i) {
    Control const c = sample_control(rng, s);
    sx += c.force.x();
    sy += c.force.y();
    lo = std::min({lo, c.force.x(), c.force.y()});
    hi = std::max({hi, c.force.x(), c.force.y()});
    double const k = c.duration / 0.07;
    REQUIRE(std::abs(k - std::round(k)) < 1e-9);
    REQUIRE(std::round(k) >= 1);
    REQUIRE(std::round(k) <= 10);
    REQUIRE(substeps_for(c.duration, s) == 10 * static_cast<int>(std::round(k)));
  }
  CHECK(std::abs(sx / n) < 0.15);
  CHECK(std::abs(sy / n) < 0.15);
  CHECK(lo >= -10.0);
  CHECK(hi <= 10.0);
  CHECK(lo < -9.9);
  CHECK(hi > 9.9);
}

TEST_CASE("seeded sampling is reproducible")
{
  Scene const s = oracle::empty_scene();
  Rng a(42), b(42);
  CHECK(sample_control(a, s) == sample_control(b, s));
  GoalRegion const g = goal_region(s);
  CHECK(sample_goal_biased_target(a, g, s.bounds) == sample_goal_biased_target(b, g, s.bounds));
}

TEST_CASE("goal bias frequency")
{
  Scene const s = oracle::empty_scene();
  GoalRegion const g = goal_region(s);
  Rng rng(4);
  int hits = 0;
  int const n = 100000;
  for (int i = 0; i < n; ++i) { hits += sample_goal_biased_target(rng, g, s.bounds) == g.center ? 1 : 0; }
  double const f = static_cast<double>(hits) / n;
  CHECK(f >= 0.04);
  CHECK(f <= 0.06);
}

TEST_CASE("degenerate bounds always give that point")
{
  Rng rng(5);
  Bounds const point{Vec2(2, 3), Vec2(2, 3)};
  GoalRegion const g{Vec2(9, 9), 1.0};
  for (int i = 0; i < 1000; ++i) {
    Vec2 const p = sample_goal_biased_target(rng, g, point);
    CHECK((p == Vec2(2, 3) || p == g.center));
  }
}

TEST_CASE("goal region is closed")
{
  GoalRegion const g{Vec2(1, 1), 1.0};
  CHECK(in_goal(at(1, 1), g));
  CHECK(in_goal(at(2, 1), g));
  CHECK_FALSE(in_goal(at(2 + 1e-6, 1), g));
  Scene const s = oracle::empty_scene();
  CHECK(goal_region(s).radius == 2.0 * s.robot.radius);
}
