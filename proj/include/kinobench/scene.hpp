#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "kinobench/geometry.hpp"

namespace kinobench {

enum class BodyKind
{
  Fixed,
  FreeManipulatable,
  ConstraintOriented,
};

/// Direction along which a constraint-oriented body may be pushed (both senses).
enum class PushAxis
{
  X,
  Y,
  Any,
};

struct Body
{
  std::string id;
  BodyKind kind = BodyKind::Fixed;
  Shape shape = Disc<double>{0.5};
  Vec2 pose = Vec2::Zero();
  double mass = 0.0; ///< unused for Fixed bodies
  double friction_mu = 0.5;
  PushAxis allowed_push_axis = PushAxis::Any;

  bool movable() const { return kind != BodyKind::Fixed; }
  bool operator==(Body const &) const = default;
};

struct Bounds
{
  Vec2 min = Vec2::Zero();
  Vec2 max = Vec2::Zero();

  bool contains(Vec2 const &p) const
  {
    return p.x() >= min.x() && p.x() <= max.x() && p.y() >= min.y() && p.y() <= max.y();
  }
  bool operator==(Bounds const &) const = default;
};

struct RobotSpec
{
  double radius = 0.5;
  double mass = 1.0;
  Vec2 start = Vec2::Zero();
  Vec2 goal = Vec2::Zero();
  double goal_radius = 1.0;
  bool operator==(RobotSpec const &) const = default;
};

struct Dynamics
{
  double f_max = 10.0;        ///< N, per force component
  double control_step = 0.07; ///< s
  double mu = 0.5;            ///< default ground Coulomb coefficient (robot and bodies)
  double gravity = 9.81;      ///< m/s^2
  bool operator==(Dynamics const &) const = default;
};

/// Integration substeps per control step.
inline constexpr int kSubstepsPerControlStep = 10;

struct Scene
{
  std::string name;
  Bounds bounds;
  RobotSpec robot;
  Dynamics dynamics;
  std::vector<Body> bodies;

  /// Internal integration step h_int.
  double substep() const { return dynamics.control_step / kSubstepsPerControlStep; }
  Shape robot_shape() const { return Disc<double>{robot.radius}; }
  /// Indices into `bodies` of the movable bodies, in scene order.
  std::vector<std::size_t> movable_indices() const;

  bool operator==(Scene const &) const = default;
};

enum class BuiltinScene
{
  Scene1,
  Scene2,
  Scene3,
};

/// Parses and validates a scene document (YAML, `schema: 1`). Throws SceneError.
Scene load_scene(std::string_view document);
Scene load_scene_file(std::string const &path);
/// Emits the scene document; `load_scene(save_scene(s)) == s`.
std::string save_scene(Scene const &scene);

Scene builtin_scene(BuiltinScene which);
/// Resolves `builtin:scene1` .. `builtin:scene3` or a file path.
Scene resolve_scene(std::string const &ref);

std::string_view to_string(BodyKind kind);
std::string_view to_string(PushAxis axis);

/**
 * Static reachability oracle: flood fill of the robot's collision-free center positions on a grid of the given
 * resolution, treating every body (movable ones included) as an immovable obstacle. True iff some reachable
 * grid cell lies within the goal region.
 */
bool geometric_path_exists(Scene const &scene, double resolution = 0.05);

} // namespace kinobench
