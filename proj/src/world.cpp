#include "kinobench/world.hpp"

#include <cmath>

namespace kinobench {

namespace {

constexpr int kImpulseIterations = 8;
// cos(30 deg): contact normals within 30 degrees of the allowed axis count as allowed faces.
constexpr double kPushFaceCos = 0.86602540378443865;

void apply_friction(Vec2 &velocity, double decel_step)
{
  double const speed = velocity.norm();
  if (speed <= decel_step) {
    velocity.setZero();
  } else {
    velocity *= (speed - decel_step) / speed;
  }
}

struct Participant
{
  Vec2 *position;
  Vec2 *velocity;
  double inv_mass;
};

} // namespace

std::string_view to_string(Violation v)
{
  switch (v) {
  case Violation::None: return "none";
  case Violation::FixedPenetration: return "fixed-body penetration";
  case Violation::DisallowedPushFace: return "disallowed push face";
  case Violation::OutOfBounds: return "out of bounds";
  }
  return "unknown";
}

WorldState start_state(Scene const &scene)
{
  WorldState s;
  s.robot_pos = scene.robot.start;
  for (auto const i : scene.movable_indices()) { s.bodies.push_back({scene.bodies[i].pose, Vec2::Zero()}); }
  return s;
}

int substeps_for(double duration, Scene const &scene)
{
  double const step = scene.dynamics.control_step;
  double const k = std::round(duration / step);
  if (!(duration > 0.0) || k < 1.0 || std::abs(k * step - duration) > 1e-9 * std::max(1.0, duration)) {
    throw ContractViolation("control duration " + std::to_string(duration) + " s is not a positive multiple of " +
                            std::to_string(step) + " s");
  }
  return static_cast<int>(k) * kSubstepsPerControlStep;
}

std::vector<ContactRecord> detect_contacts(WorldState const &state, Scene const &scene)
{
  auto const movable = scene.movable_indices();
  if (movable.size() != state.bodies.size()) {
    throw StructuralError("state carries " + std::to_string(state.bodies.size()) + " body entries, scene has " +
                          std::to_string(movable.size()) + " movable bodies");
  }
  // Current position of every scene body.
  std::vector<Vec2> pos(scene.bodies.size());
  for (std::size_t i = 0; i < scene.bodies.size(); ++i) { pos[i] = scene.bodies[i].pose; }
  for (std::size_t m = 0; m < movable.size(); ++m) { pos[movable[m]] = state.bodies[m].position; }

  std::vector<ContactRecord> contacts;
  Shape const robot = scene.robot_shape();
  for (std::size_t i = 0; i < scene.bodies.size(); ++i) {
    if (auto c = collide(robot, state.robot_pos, scene.bodies[i].shape, pos[i])) {
      contacts.push_back({kRobot, static_cast<int>(i), *c});
    }
  }
  for (std::size_t i = 0; i < scene.bodies.size(); ++i) {
    if (!scene.bodies[i].movable()) { continue; }
    for (std::size_t j = 0; j < scene.bodies.size(); ++j) {
      // Movable pairs once (i < j); movable-fixed pairs always with the movable body first.
      if (j == i || (scene.bodies[j].movable() && j < i)) { continue; }
      if (auto c = collide(scene.bodies[i].shape, pos[i], scene.bodies[j].shape, pos[j])) {
        contacts.push_back({static_cast<int>(i), static_cast<int>(j), *c});
      }
    }
  }
  return contacts;
}

bool allowed_push_face(Vec2 const &outward_normal, PushAxis axis)
{
  switch (axis) {
  case PushAxis::Any: return true;
  case PushAxis::X: return std::abs(outward_normal.x()) >= kPushFaceCos;
  case PushAxis::Y: return std::abs(outward_normal.y()) >= kPushFaceCos;
  }
  return false;
}

Validity check_validity(WorldState const &state, std::vector<ContactRecord> const &contacts, Scene const &scene)
{
  double const r = scene.robot.radius;
  auto const &b = scene.bounds;
  Vec2 const &p = state.robot_pos;
  if (p.x() - r < b.min.x() - kContactTolerance || p.x() + r > b.max.x() + kContactTolerance ||
      p.y() - r < b.min.y() - kContactTolerance || p.y() + r > b.max.y() + kContactTolerance) {
    return {false, Violation::OutOfBounds, "robot left the world bounds"};
  }
  for (auto const &c : contacts) {
    Body const &second = scene.bodies[static_cast<std::size_t>(c.second)];
    if (second.kind == BodyKind::Fixed && c.contact.penetration > kContactTolerance) {
      std::string const who = c.first == kRobot ? "robot" : scene.bodies[static_cast<std::size_t>(c.first)].id;
      return {false, Violation::FixedPenetration, who + " penetrates fixed body " + second.id};
    }
    if (c.first == kRobot && second.kind == BodyKind::ConstraintOriented &&
        !allowed_push_face(c.contact.normal, second.allowed_push_axis)) {
      return {false, Violation::DisallowedPushFace, "disallowed push face on " + second.id};
    }
  }
  return {};
}

namespace {

void resolve_contacts(WorldState &state, std::vector<ContactRecord> const &contacts, Scene const &scene,
                      std::vector<int> const &slot_of_body)
{
  auto participant = [&](int who) -> Participant {
    if (who == kRobot) { return {&state.robot_pos, &state.robot_vel, 1.0 / scene.robot.mass}; }
    int const slot = slot_of_body[static_cast<std::size_t>(who)];
    if (slot < 0) { return {nullptr, nullptr, 0.0}; }
    auto &bs = state.bodies[static_cast<std::size_t>(slot)];
    return {&bs.position, &bs.velocity, 1.0 / scene.bodies[static_cast<std::size_t>(who)].mass};
  };

  // Fully inelastic normal impulses, sequentially.
  for (int it = 0; it < kImpulseIterations; ++it) {
    bool any = false;
    for (auto const &c : contacts) {
      Participant a = participant(c.first);
      Participant b = participant(c.second);
      double const inv = a.inv_mass + b.inv_mass;
      if (inv <= 0.0) { continue; }
      Vec2 const vb = b.velocity ? *b.velocity : Vec2::Zero();
      double const vn = (*a.velocity - vb).dot(c.contact.normal);
      if (vn >= 0.0) { continue; }
      double const j = -vn / inv;
      *a.velocity += (j * a.inv_mass) * c.contact.normal;
      if (b.velocity) { *b.velocity -= (j * b.inv_mass) * c.contact.normal; }
      any = true;
    }
    if (!any) { break; }
  }

  // Positional projection out of penetration, split by inverse mass.
  for (auto const &c : contacts) {
    if (c.contact.penetration <= 0.0) { continue; }
    Participant a = participant(c.first);
    Participant b = participant(c.second);
    double const inv = a.inv_mass + b.inv_mass;
    if (inv <= 0.0) { continue; }
    double const corr = c.contact.penetration / inv;
    *a.position += (corr * a.inv_mass) * c.contact.normal;
    if (b.position) { *b.position -= (corr * b.inv_mass) * c.contact.normal; }
  }
}

} // namespace

PropagationResult propagate(WorldState const &state, Control const &control, Scene const &scene, ContactLog *log)
{
  double const fmax = scene.dynamics.f_max;
  if (std::abs(control.force.x()) > fmax || std::abs(control.force.y()) > fmax || !control.force.allFinite()) {
    throw ContractViolation("control force exceeds the per-component bound");
  }
  int const n = substeps_for(control.duration, scene);
  auto const movable = scene.movable_indices();
  if (movable.size() != state.bodies.size()) {
    throw StructuralError("state/scene movable body count mismatch");
  }
  std::vector<int> slot_of_body(scene.bodies.size(), -1);
  for (std::size_t m = 0; m < movable.size(); ++m) { slot_of_body[movable[m]] = static_cast<int>(m); }

  double const h = scene.substep();
  double const g = scene.dynamics.gravity;
  Vec2 const robot_accel = control.force / scene.robot.mass;
  double const robot_decel = scene.dynamics.mu * g * h;

  PropagationResult result;
  result.final = state;
  result.trace.reserve(static_cast<std::size_t>(n) + 1);
  result.trace.push_back({state.time, state.robot_pos, state.robot_vel});

  WorldState s = state;
  for (int k = 1; k <= n; ++k) {
    s.robot_vel += robot_accel * h;
    apply_friction(s.robot_vel, robot_decel);
    for (std::size_t m = 0; m < movable.size(); ++m) {
      apply_friction(s.bodies[m].velocity, scene.bodies[movable[m]].friction_mu * g * h);
    }
    s.robot_pos += s.robot_vel * h;
    for (auto &bs : s.bodies) { bs.position += bs.velocity * h; }
    s.time = state.time + k * h;

    auto const contacts = detect_contacts(s, scene);
    if (log) { log->push_back(contacts); }
    Validity v = check_validity(s, contacts, scene);
    if (!v.valid) {
      result.valid = false;
      result.validity = std::move(v);
      return result;
    }
    resolve_contacts(s, contacts, scene, slot_of_body);

    TraceSample const &prev = result.trace.back();
    result.path_length += (s.robot_pos - prev.position).norm();
    result.trace.push_back({s.time, s.robot_pos, s.robot_vel});
    result.final = s;
  }
  return result;
}

double kinetic_energy(WorldState const &state, Scene const &scene)
{
  double e = 0.5 * scene.robot.mass * state.robot_vel.squaredNorm();
  auto const movable = scene.movable_indices();
  for (std::size_t m = 0; m < movable.size(); ++m) {
    e += 0.5 * scene.bodies[movable[m]].mass * state.bodies[m].velocity.squaredNorm();
  }
  return e;
}

Vec2 linear_momentum(WorldState const &state, Scene const &scene)
{
  Vec2 p = scene.robot.mass * state.robot_vel;
  auto const movable = scene.movable_indices();
  for (std::size_t m = 0; m < movable.size(); ++m) { p += scene.bodies[movable[m]].mass * state.bodies[m].velocity; }
  return p;
}

} // namespace kinobench
