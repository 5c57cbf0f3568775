#include "kinobench/scene.hpp"

namespace kinobench {

namespace {

// 10 m x 10 m world, 0.5 m robot, walls of 0.2 m along the border.
Scene base(std::string name, Vec2 start, Vec2 goal)
{
  Scene s;
  s.name = std::move(name);
  s.bounds = {Vec2(0.0, 0.0), Vec2(10.0, 10.0)};
  s.robot = {0.5, 1.0, start, goal, 1.0};
  auto wall = [&](std::string id, Vec2 pose, double hw, double hh) {
    s.bodies.push_back({std::move(id), BodyKind::Fixed, Box<double>{hw, hh}, pose, 0.0, s.dynamics.mu, PushAxis::Any});
  };
  wall("wall_south", {5.0, 0.1}, 5.0, 0.1);
  wall("wall_north", {5.0, 9.9}, 5.0, 0.1);
  wall("wall_west", {0.1, 5.0}, 0.1, 4.8);
  wall("wall_east", {9.9, 5.0}, 0.1, 4.8);
  return s;
}

void prism(Scene &s, std::string id, Vec2 pose, double size = 0.8)
{
  ConvexPolygon<double> tri{{Vec2(-size, -0.85 * size), Vec2(size, -0.85 * size), Vec2(0.0, 0.95 * size)}};
  s.bodies.push_back({std::move(id), BodyKind::Fixed, tri, pose, 0.0, s.dynamics.mu, PushAxis::Any});
}

void crate(Scene &s, std::string id, Vec2 pose, double half = 0.3)
{
  s.bodies.push_back({std::move(id), BodyKind::FreeManipulatable, Box<double>{half, half}, pose, 0.5, 0.4, PushAxis::Any});
}

void constrained(Scene &s, std::string id, Vec2 pose, double hw, double hh, PushAxis axis)
{
  s.bodies.push_back({std::move(id), BodyKind::ConstraintOriented, Box<double>{hw, hh}, pose, 0.5, 0.3, axis});
}

Scene scene1()
{
  Scene s = base("scene1", {1.5, 1.5}, {8.5, 8.5});
  prism(s, "prism_a", {3.5, 6.5});
  prism(s, "prism_b", {6.5, 3.0});
  prism(s, "prism_c", {7.5, 6.2}, 0.6);
  crate(s, "crate_a", {3.0, 3.2});
  crate(s, "crate_b", {5.3, 5.3});
  crate(s, "crate_c", {6.0, 8.2});
  return s;
}

// A divider wall at x = 5 leaves a 1.6 m gap; a crate that may only be pushed along y sits in front of it.
Scene scene2()
{
  Scene s = base("scene2", {2.0, 2.0}, {8.0, 5.0});
  s.bodies.push_back({"divider_lower", BodyKind::Fixed, Box<double>{0.2, 2.0}, {5.0, 2.2}, 0.0, s.dynamics.mu, PushAxis::Any});
  s.bodies.push_back({"divider_upper", BodyKind::Fixed, Box<double>{0.2, 2.0}, {5.0, 7.8}, 0.0, s.dynamics.mu, PushAxis::Any});
  constrained(s, "gate", {4.3, 5.0}, 0.4, 0.9, PushAxis::Y);
  prism(s, "prism_a", {7.2, 2.2});
  crate(s, "crate_a", {2.0, 7.8});
  crate(s, "crate_b", {7.5, 8.0});
  return s;
}

// The goal is covered by a crate that may only be pushed along x; a fixed barrier forces a detour over the top.
Scene scene3()
{
  Scene s = base("scene3", {1.5, 1.5}, {8.0, 5.0});
  s.robot.goal_radius = 0.5;
  s.bodies.push_back({"barrier", BodyKind::Fixed, Box<double>{0.2, 3.65}, {5.0, 3.85}, 0.0, s.dynamics.mu, PushAxis::Any});
  constrained(s, "goal_crate", {8.0, 5.0}, 0.75, 0.75, PushAxis::X);
  prism(s, "prism_a", {2.6, 4.5});
  prism(s, "prism_b", {3.2, 8.0});
  prism(s, "prism_c", {8.0, 8.2}, 0.6);
  prism(s, "prism_d", {8.0, 1.8}, 0.6);
  crate(s, "crate_a", {1.5, 6.5});
  crate(s, "crate_b", {6.5, 8.6});
  crate(s, "crate_c", {6.2, 2.0});
  return s;
}

} // namespace

Scene builtin_scene(BuiltinScene which)
{
  switch (which) {
  case BuiltinScene::Scene1: return scene1();
  case BuiltinScene::Scene2: return scene2();
  case BuiltinScene::Scene3: return scene3();
  }
  return scene1();
}

} // namespace kinobench
