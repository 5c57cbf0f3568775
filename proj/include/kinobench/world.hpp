#pragma once

#include <string>
#include <vector>

#include "kinobench/scene.hpp"

namespace kinobench {

struct BodyState
{
  Vec2 position = Vec2::Zero();
  Vec2 velocity = Vec2::Zero();
  bool operator==(BodyState const &) const = default;
};

/// Robot pose/velocity plus one entry per movable body, ordered as `Scene::movable_indices()`.
struct WorldState
{
  Vec2 robot_pos = Vec2::Zero();
  Vec2 robot_vel = Vec2::Zero();
  std::vector<BodyState> bodies;
  double time = 0.0;
  bool operator==(WorldState const &) const = default;
};

/// Constant planar force on the robot center, held for `duration` (a positive multiple of the control step).
struct Control
{
  Vec2 force = Vec2::Zero();
  double duration = 0.0;
  bool operator==(Control const &) const = default;
};

struct TraceSample
{
  double time = 0.0;
  Vec2 position = Vec2::Zero();
  Vec2 velocity = Vec2::Zero();
  bool operator==(TraceSample const &) const = default;
};

enum class Violation
{
  None,
  FixedPenetration,
  DisallowedPushFace,
  OutOfBounds,
};

std::string_view to_string(Violation v);

struct Validity
{
  bool valid = true;
  Violation violation = Violation::None;
  std::string reason;
};

/// Index of the robot in contact records.
inline constexpr int kRobot = -1;

/// Contact between two participants; `first`/`second` are `kRobot` or indices into `Scene::bodies`.
/// The normal points from `second` towards `first`.
struct ContactRecord
{
  int first = kRobot;
  int second = 0;
  Contact contact;
};

struct PropagationResult
{
  WorldState final;
  std::vector<TraceSample> trace; ///< one sample per substep, starting with the initial state
  bool valid = true;
  Validity validity;
  double path_length = 0.0;
};

/// Per-substep contact sets observed during a propagation (pre-resolution, the set validity is judged on).
using ContactLog = std::vector<std::vector<ContactRecord>>;

WorldState start_state(Scene const &scene);

/// Number of integration substeps for `duration`; throws ContractViolation unless it is a positive
/// integer multiple of the control step.
int substeps_for(double duration, Scene const &scene);

/**
 * Integrates the robot under a constant force with semi-implicit Euler at h_int, resolving contacts each
 * substep (inelastic impulses followed by positional projection) and applying ground Coulomb friction.
 *
 * Stops at the first substep that violates a validity rule; `final` is then the last valid substep and the
 * trace holds no samples past it.
 */
PropagationResult
propagate(WorldState const &state, Control const &control, Scene const &scene, ContactLog *log = nullptr);

/// Contacts (within tolerance) among robot, movable and fixed bodies. Fixed-fixed pairs are skipped.
std::vector<ContactRecord> detect_contacts(WorldState const &state, Scene const &scene);

Validity check_validity(WorldState const &state, std::vector<ContactRecord> const &contacts, Scene const &scene);

/// True when a robot contact normal (pointing out of the body) is an allowed push face for `axis`.
bool allowed_push_face(Vec2 const &outward_normal, PushAxis axis);

double kinetic_energy(WorldState const &state, Scene const &scene);

/// Total linear momentum of robot and movable bodies.
Vec2 linear_momentum(WorldState const &state, Scene const &scene);

} // namespace kinobench
