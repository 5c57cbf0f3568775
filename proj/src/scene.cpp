#include "kinobench/scene.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

namespace kinobench {

std::vector<std::size_t> Scene::movable_indices() const
{
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    if (bodies[i].movable()) { out.push_back(i); }
  }
  return out;
}

std::string_view to_string(BodyKind kind)
{
  switch (kind) {
  case BodyKind::Fixed: return "fixed";
  case BodyKind::FreeManipulatable: return "free";
  case BodyKind::ConstraintOriented: return "constraint_oriented";
  }
  return "?";
}

std::string_view to_string(PushAxis axis)
{
  switch (axis) {
  case PushAxis::X: return "x";
  case PushAxis::Y: return "y";
  case PushAxis::Any: return "any";
  }
  return "?";
}

namespace {

[[noreturn]] void schema_error(std::string const &path, std::string const &msg)
{
  throw SceneError(SceneErrorKind::Schema, path, msg);
}

double as_double(YAML::Node const &node, std::string const &path)
{
  if (!node || !node.IsScalar()) { schema_error(path, "expected a number"); }
  try {
    return node.as<double>();
  } catch (YAML::Exception const &) {
    schema_error(path, "expected a number, got '" + node.Scalar() + "'");
  }
}

double positive(YAML::Node const &node, std::string const &path)
{
  double const v = as_double(node, path);
  if (!(v > 0.0)) { schema_error(path, "must be > 0"); }
  return v;
}

Vec2 as_vec2(YAML::Node const &node, std::string const &path)
{
  if (!node || !node.IsSequence() || node.size() != 2) { schema_error(path, "expected [x, y]"); }
  return {as_double(node[0], path + "[0]"), as_double(node[1], path + "[1]")};
}

YAML::Node require_map(YAML::Node const &parent, std::string const &key, std::string const &path)
{
  YAML::Node node = parent[key];
  if (!node || !node.IsMap()) { schema_error(path, "missing or not a mapping"); }
  return node;
}

void reject_unknown(YAML::Node const &map, std::set<std::string> const &known, std::string const &path)
{
  for (auto const &kv : map) {
    auto const key = kv.first.as<std::string>();
    if (!known.contains(key)) { schema_error(path.empty() ? key : path + "." + key, "unknown field"); }
  }
}

Shape parse_shape(YAML::Node const &node, std::string const &path)
{
  if (!node || !node.IsMap()) { schema_error(path, "missing or not a mapping"); }
  if (!node["type"]) { schema_error(path + ".type", "missing"); }
  auto const type = node["type"].as<std::string>();
  if (type == "disc") {
    reject_unknown(node, {"type", "radius"}, path);
    return Disc<double>{positive(node["radius"], path + ".radius")};
  }
  if (type == "box") {
    reject_unknown(node, {"type", "half_extents"}, path);
    Vec2 const h = as_vec2(node["half_extents"], path + ".half_extents");
    if (!(h.x() > 0.0 && h.y() > 0.0)) { schema_error(path + ".half_extents", "must be > 0"); }
    return Box<double>{h.x(), h.y()};
  }
  if (type == "polygon") {
    reject_unknown(node, {"type", "vertices"}, path);
    YAML::Node const v = node["vertices"];
    if (!v || !v.IsSequence()) { schema_error(path + ".vertices", "expected a list of [x, y]"); }
    ConvexPolygon<double> poly;
    for (std::size_t i = 0; i < v.size(); ++i) {
      poly.vertices.push_back(as_vec2(v[i], path + ".vertices[" + std::to_string(i) + "]"));
    }
    if (!is_strictly_convex_ccw(poly)) {
      schema_error(path + ".vertices", "polygon must be counter-clockwise and strictly convex");
    }
    return poly;
  }
  schema_error(path + ".type", "unknown shape type '" + type + "'");
}

Body parse_body(YAML::Node const &node, std::string const &path, double default_mu)
{
  if (!node.IsMap()) { schema_error(path, "expected a mapping"); }
  reject_unknown(node, {"id", "kind", "shape", "pose", "mass", "mu", "allowed_push_axis"}, path);
  Body b;
  if (!node["id"] || !node["id"].IsScalar() || node["id"].Scalar().empty()) { schema_error(path + ".id", "missing"); }
  b.id = node["id"].Scalar();
  if (!node["kind"]) { schema_error(path + ".kind", "missing"); }
  auto const kind = node["kind"].as<std::string>();
  if (kind == "fixed") {
    b.kind = BodyKind::Fixed;
  } else if (kind == "free") {
    b.kind = BodyKind::FreeManipulatable;
  } else if (kind == "constraint_oriented") {
    b.kind = BodyKind::ConstraintOriented;
  } else {
    schema_error(path + ".kind", "unknown kind '" + kind + "'");
  }
  b.shape = parse_shape(node["shape"], path + ".shape");
  b.pose = as_vec2(node["pose"], path + ".pose");
  b.friction_mu = node["mu"] ? as_double(node["mu"], path + ".mu") : default_mu;
  if (b.friction_mu < 0.0) { schema_error(path + ".mu", "must be >= 0"); }
  if (b.movable()) {
    b.mass = positive(node["mass"], path + ".mass");
  } else if (node["mass"]) {
    schema_error(path + ".mass", "fixed bodies carry no mass");
  }
  if (node["allowed_push_axis"]) {
    if (b.kind != BodyKind::ConstraintOriented) {
      schema_error(path + ".allowed_push_axis", "only meaningful for constraint_oriented bodies");
    }
    auto const axis = node["allowed_push_axis"].as<std::string>();
    if (axis == "x") {
      b.allowed_push_axis = PushAxis::X;
    } else if (axis == "y") {
      b.allowed_push_axis = PushAxis::Y;
    } else if (axis == "any") {
      b.allowed_push_axis = PushAxis::Any;
    } else {
      schema_error(path + ".allowed_push_axis", "expected x, y or any");
    }
  } else if (b.kind == BodyKind::ConstraintOriented) {
    schema_error(path + ".allowed_push_axis", "required for constraint_oriented bodies");
  }
  return b;
}

void validate(Scene const &scene)
{
  auto const &b = scene.bounds;
  if (!(b.max.x() > b.min.x() && b.max.y() > b.min.y())) { schema_error("bounds", "max must exceed min"); }
  if (!b.contains(scene.robot.start)) {
    throw SceneError(SceneErrorKind::OutOfBounds, "robot.start", "start lies outside the world bounds");
  }
  if (!b.contains(scene.robot.goal)) {
    throw SceneError(SceneErrorKind::OutOfBounds, "robot.goal", "goal lies outside the world bounds");
  }
  std::set<std::string> ids;
  for (std::size_t i = 0; i < scene.bodies.size(); ++i) {
    if (!ids.insert(scene.bodies[i].id).second) {
      throw SceneError(SceneErrorKind::DuplicateId, "bodies[" + std::to_string(i) + "].id",
                       "duplicate body id '" + scene.bodies[i].id + "'");
    }
  }
  Shape const robot = scene.robot_shape();
  for (std::size_t i = 0; i < scene.bodies.size(); ++i) {
    auto const &body = scene.bodies[i];
    auto const c = collide(robot, scene.robot.start, body.shape, body.pose, 0.0);
    if (c && c->penetration > kContactTolerance) {
      throw SceneError(SceneErrorKind::Interpenetration, "bodies[" + std::to_string(i) + "]",
                       "robot start interpenetrates body '" + body.id + "'");
    }
  }
}

std::string num(double v)
{
  char buf[64];
  auto const [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

void emit_vec(YAML::Emitter &out, Vec2 const &v)
{
  out << YAML::Flow << YAML::BeginSeq << num(v.x()) << num(v.y()) << YAML::EndSeq;
}

} // namespace

Scene load_scene(std::string_view document)
{
  YAML::Node root;
  try {
    root = YAML::Load(std::string(document));
  } catch (YAML::Exception const &e) {
    schema_error("", std::string("malformed document: ") + e.what());
  }
  if (!root.IsMap()) { schema_error("", "document must be a mapping"); }
  reject_unknown(root, {"schema", "name", "bounds", "robot", "dynamics", "bodies"}, "");
  if (!root["schema"] || root["schema"].Scalar() != "1") { schema_error("schema", "expected schema: 1"); }

  Scene scene;
  scene.name = root["name"] ? root["name"].as<std::string>() : std::string("scene");

  auto const bounds = require_map(root, "bounds", "bounds");
  reject_unknown(bounds, {"min", "max"}, "bounds");
  scene.bounds.min = as_vec2(bounds["min"], "bounds.min");
  scene.bounds.max = as_vec2(bounds["max"], "bounds.max");

  auto const robot = require_map(root, "robot", "robot");
  reject_unknown(robot, {"radius", "mass", "start", "goal", "goal_radius"}, "robot");
  if (robot["radius"]) { scene.robot.radius = positive(robot["radius"], "robot.radius"); }
  if (robot["mass"]) { scene.robot.mass = positive(robot["mass"], "robot.mass"); }
  scene.robot.start = as_vec2(robot["start"], "robot.start");
  scene.robot.goal = as_vec2(robot["goal"], "robot.goal");
  scene.robot.goal_radius =
    robot["goal_radius"] ? positive(robot["goal_radius"], "robot.goal_radius") : 2.0 * scene.robot.radius;

  if (auto const dyn = root["dynamics"]) {
    if (!dyn.IsMap()) { schema_error("dynamics", "not a mapping"); }
    reject_unknown(dyn, {"f_max", "control_step", "mu", "gravity"}, "dynamics");
    if (dyn["f_max"]) { scene.dynamics.f_max = positive(dyn["f_max"], "dynamics.f_max"); }
    if (dyn["control_step"]) { scene.dynamics.control_step = positive(dyn["control_step"], "dynamics.control_step"); }
    if (dyn["mu"]) {
      scene.dynamics.mu = as_double(dyn["mu"], "dynamics.mu");
      if (scene.dynamics.mu < 0.0) { schema_error("dynamics.mu", "must be >= 0"); }
    }
    if (dyn["gravity"]) { scene.dynamics.gravity = as_double(dyn["gravity"], "dynamics.gravity"); }
  }

  if (auto const bodies = root["bodies"]) {
    if (!bodies.IsSequence()) { schema_error("bodies", "expected a list"); }
    for (std::size_t i = 0; i < bodies.size(); ++i) {
      scene.bodies.push_back(parse_body(bodies[i], "bodies[" + std::to_string(i) + "]", scene.dynamics.mu));
    }
  }
  validate(scene);
  return scene;
}

Scene load_scene_file(std::string const &path)
{
  std::ifstream in(path);
  if (!in) { throw IoError("cannot read scene file " + path); }
  std::stringstream ss;
  ss << in.rdbuf();
  return load_scene(ss.str());
}

std::string save_scene(Scene const &scene)
{
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "schema" << YAML::Value << 1;
  out << YAML::Key << "name" << YAML::Value << scene.name;
  out << YAML::Key << "bounds" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "min" << YAML::Value;
  emit_vec(out, scene.bounds.min);
  out << YAML::Key << "max" << YAML::Value;
  emit_vec(out, scene.bounds.max);
  out << YAML::EndMap;

  out << YAML::Key << "robot" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "radius" << YAML::Value << num(scene.robot.radius);
  out << YAML::Key << "mass" << YAML::Value << num(scene.robot.mass);
  out << YAML::Key << "start" << YAML::Value;
  emit_vec(out, scene.robot.start);
  out << YAML::Key << "goal" << YAML::Value;
  emit_vec(out, scene.robot.goal);
  out << YAML::Key << "goal_radius" << YAML::Value << num(scene.robot.goal_radius);
  out << YAML::EndMap;

  out << YAML::Key << "dynamics" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "f_max" << YAML::Value << num(scene.dynamics.f_max);
  out << YAML::Key << "control_step" << YAML::Value << num(scene.dynamics.control_step);
  out << YAML::Key << "mu" << YAML::Value << num(scene.dynamics.mu);
  out << YAML::Key << "gravity" << YAML::Value << num(scene.dynamics.gravity);
  out << YAML::EndMap;

  out << YAML::Key << "bodies" << YAML::Value << YAML::BeginSeq;
  for (auto const &b : scene.bodies) {
    out << YAML::BeginMap;
    out << YAML::Key << "id" << YAML::Value << b.id;
    out << YAML::Key << "kind" << YAML::Value << std::string(to_string(b.kind));
    out << YAML::Key << "shape" << YAML::Value << YAML::Flow << YAML::BeginMap;
    std::visit(
      [&](auto const &s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Disc<double>>) {
          out << YAML::Key << "type" << YAML::Value << "disc";
          out << YAML::Key << "radius" << YAML::Value << num(s.radius);
        } else if constexpr (std::is_same_v<S, Box<double>>) {
          out << YAML::Key << "type" << YAML::Value << "box";
          out << YAML::Key << "half_extents" << YAML::Value;
          emit_vec(out, Vec2(s.half_width, s.half_height));
        } else {
          out << YAML::Key << "type" << YAML::Value << "polygon";
          out << YAML::Key << "vertices" << YAML::Value << YAML::BeginSeq;
          for (auto const &v : s.vertices) { emit_vec(out, v); }
          out << YAML::EndSeq;
        }
      },
      b.shape);
    out << YAML::EndMap;
    out << YAML::Key << "pose" << YAML::Value;
    emit_vec(out, b.pose);
    if (b.movable()) { out << YAML::Key << "mass" << YAML::Value << num(b.mass); }
    out << YAML::Key << "mu" << YAML::Value << num(b.friction_mu);
    if (b.kind == BodyKind::ConstraintOriented) {
      out << YAML::Key << "allowed_push_axis" << YAML::Value << std::string(to_string(b.allowed_push_axis));
    }
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

Scene resolve_scene(std::string const &ref)
{
  if (ref == "builtin:scene1") { return builtin_scene(BuiltinScene::Scene1); }
  if (ref == "builtin:scene2") { return builtin_scene(BuiltinScene::Scene2); }
  if (ref == "builtin:scene3") { return builtin_scene(BuiltinScene::Scene3); }
  if (ref.starts_with("builtin:")) {
    throw SceneError(SceneErrorKind::Schema, ref, "unknown built-in scene (expected builtin:scene1..3)");
  }
  return load_scene_file(ref);
}

bool geometric_path_exists(Scene const &scene, double resolution)
{
  auto const &b = scene.bounds;
  double const r = scene.robot.radius;
  int const nx = static_cast<int>(std::floor((b.max.x() - b.min.x()) / resolution)) + 1;
  int const ny = static_cast<int>(std::floor((b.max.y() - b.min.y()) / resolution)) + 1;
  Shape const robot = scene.robot_shape();
  auto center = [&](int ix, int iy) { return Vec2(b.min.x() + ix * resolution, b.min.y() + iy * resolution); };
  auto free_at = [&](Vec2 const &p) {
    if (p.x() - r < b.min.x() || p.x() + r > b.max.x() || p.y() - r < b.min.y() || p.y() + r > b.max.y()) {
      return false;
    }
    for (auto const &body : scene.bodies) {
      auto const c = collide(robot, p, body.shape, body.pose, 0.0);
      if (c && c->penetration > 0.0) { return false; }
    }
    return true;
  };

  // Snap the start to the nearest free grid node.
  int sx = static_cast<int>(std::lround((scene.robot.start.x() - b.min.x()) / resolution));
  int sy = static_cast<int>(std::lround((scene.robot.start.y() - b.min.y()) / resolution));
  std::vector<std::int8_t> state(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny), -1);
  auto idx = [&](int ix, int iy) { return static_cast<std::size_t>(iy) * static_cast<std::size_t>(nx) + ix; };
  auto is_free = [&](int ix, int iy) {
    auto &s = state[idx(ix, iy)];
    if (s < 0) { s = free_at(center(ix, iy)) ? 1 : 0; }
    return s == 1;
  };
  if (sx < 0 || sy < 0 || sx >= nx || sy >= ny || !is_free(sx, sy)) { return false; }

  std::vector<bool> seen(state.size(), false);
  std::deque<std::pair<int, int>> queue{{sx, sy}};
  seen[idx(sx, sy)] = true;
  while (!queue.empty()) {
    auto const [x, y] = queue.front();
    queue.pop_front();
    if ((center(x, y) - scene.robot.goal).norm() <= scene.robot.goal_radius) { return true; }
    constexpr int dx[] = {1, -1, 0, 0};
    constexpr int dy[] = {0, 0, 1, -1};
    for (int k = 0; k < 4; ++k) {
      int const ax = x + dx[k];
      int const ay = y + dy[k];
      if (ax < 0 || ay < 0 || ax >= nx || ay >= ny || seen[idx(ax, ay)]) { continue; }
      seen[idx(ax, ay)] = true;
      if (is_free(ax, ay)) { queue.emplace_back(ax, ay); }
    }
  }
  return false;
}

} // namespace kinobench
