#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kinobench/errors.hpp"
#include "kinobench/scene.hpp"

using namespace kinobench;

namespace {

char const *const kMinimal = R"(schema: 1
name: minimal
bounds: {min: [0, 0], max: [10, 10]}
robot: {start: [1, 1], goal: [9, 9]}
)";

bool inside(Body const &b, Vec2 const &p)
{
  return collide(Shape{Disc<double>{1e-9}}, p, b.shape, b.pose, 0.0).has_value();
}

} // namespace

TEST_CASE("minimal document")
{
  Scene const s = load_scene(kMinimal);
  CHECK(s.bodies.empty());
  CHECK(s.name == "minimal");
  CHECK(s.dynamics.f_max == 10.0);
  CHECK(s.dynamics.control_step == 0.07);
  CHECK(s.robot.radius == 0.5);
  CHECK(s.robot.goal_radius == 1.0);
}

TEST_CASE("duplicate body ids are rejected by name")
{
  std::string doc = std::string(kMinimal) + R"(bodies:
  - {id: rock, kind: fixed, shape: {type: disc, radius: 0.3}, pose: [5, 5]}
  - {id: rock, kind: fixed, shape: {type: disc, radius: 0.3}, pose: [7, 5]}
)";
  try {
    load_scene(doc);
    FAIL("expected a duplicate-id error");
  } catch (SceneError const &e) {
    CHECK(e.kind() == SceneErrorKind::DuplicateId);
    CHECK(std::string(e.what()).find("rock") != std::string::npos);
  }
}

TEST_CASE("schema errors name the field")
{
  std::string doc = std::string(kMinimal) + R"(bodies:
  - {id: crate, kind: free, shape: {type: box, half_extents: [0.3, 0.3]}, pose: [5, 5]}
)";
  try {
    load_scene(doc);
    FAIL("expected a schema error");
  } catch (SceneError const &e) {
    CHECK(e.kind() == SceneErrorKind::Schema);
    CHECK(e.path() == "bodies[0].mass");
  }
  CHECK_THROWS_AS(load_scene("schema: 2\n"), SceneError);
  CHECK_THROWS_AS(load_scene(std::string(kMinimal) + "colour: red\n"), SceneError);
}

TEST_CASE("start outside bounds or inside a body is rejected")
{
  try {
    load_scene(R"(schema: 1
name: out
bounds: {min: [0, 0], max: [10, 10]}
robot: {start: [11, 1], goal: [9, 9]}
)");
    FAIL("expected an out-of-bounds error");
  } catch (SceneError const &e) {
    CHECK(e.kind() == SceneErrorKind::OutOfBounds);
  }
  try {
    load_scene(std::string(kMinimal) + "bodies:\n  - {id: w, kind: fixed, shape: {type: box, half_extents: [1, 1]}, pose: [1, 1]}\n");
    FAIL("expected an interpenetration error");
  } catch (SceneError const &e) {
    CHECK(e.kind() == SceneErrorKind::Interpenetration);
  }
}

TEST_CASE("save and reload is the identity")
{
  for (auto which : {BuiltinScene::Scene1, BuiltinScene::Scene2, BuiltinScene::Scene3}) {
    Scene const s = builtin_scene(which);
    Scene const back = load_scene(save_scene(s));
    CHECK(back == s);
  }
  Scene const s = load_scene(std::string(kMinimal) + R"(bodies:
  - {id: tri, kind: fixed, shape: {type: polygon, vertices: [[-0.3, -0.2], [0.3, -0.2], [0.0, 0.31]]}, pose: [5.1, 4.3]}
  - {id: gate, kind: constraint_oriented, shape: {type: box, half_extents: [0.2, 0.7]}, pose: [3, 3], mass: 0.25, allowed_push_axis: y}
)");
  CHECK(load_scene(save_scene(s)) == s);
}

TEST_CASE("built-in scenes have the stated topology")
{
  Scene const s1 = builtin_scene(BuiltinScene::Scene1);
  Scene const s2 = builtin_scene(BuiltinScene::Scene2);
  Scene const s3 = builtin_scene(BuiltinScene::Scene3);
  CHECK(geometric_path_exists(s1));
  CHECK_FALSE(geometric_path_exists(s2));
  CHECK_FALSE(geometric_path_exists(s3));

  bool has_free = false;
  for (auto const &b : s1.bodies) { has_free = has_free || b.kind == BodyKind::FreeManipulatable; }
  CHECK(has_free);

  int gates = 0;
  for (auto const &b : s2.bodies) {
    if (b.kind == BodyKind::ConstraintOriented) {
      ++gates;
      CHECK(b.allowed_push_axis == PushAxis::Y);
    }
  }
  CHECK(gates == 1);

  int covering = 0;
  for (auto const &b : s3.bodies) {
    if (b.kind == BodyKind::ConstraintOriented && inside(b, s3.robot.goal)) {
      ++covering;
      CHECK(b.allowed_push_axis == PushAxis::X);
    }
  }
  CHECK(covering == 1);
}

TEST_CASE("scene references")
{
  CHECK(resolve_scene("builtin:scene2") == builtin_scene(BuiltinScene::Scene2));
  CHECK_THROWS_AS(resolve_scene("builtin:scene9"), SceneError);
  CHECK_THROWS_AS(resolve_scene("/nonexistent/scene.yaml"), IoError);
}
