#pragma once

#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "kinobench/geometry.hpp"

namespace kinobench {

struct SolutionPath;

/// One applied control of a trajectory, with what it produced.
template <typename Scalar> struct TrajectorySegmentT
{
  Vec2T<Scalar> force;
  Scalar duration;      ///< s
  Scalar path_length;   ///< m, robot arc length over the segment
  Vec2T<Scalar> displacement; ///< m, net robot displacement
  std::vector<Vec2T<Scalar>> velocity_trace; ///< robot velocity at every substep, endpoints included
};
using TrajectorySegment = TrajectorySegmentT<double>;

/// Sum over segments of |f| * dt * arc length.
template <typename Scalar> Scalar action(std::span<TrajectorySegmentT<Scalar> const> segments)
{
  Scalar total(0);
  for (auto const &s : segments) { total += s.force.norm() * s.duration * s.path_length; }
  return total;
}

/// Signed sum over segments of (f . d) / dt.
template <typename Scalar> Scalar power(std::span<TrajectorySegmentT<Scalar> const> segments)
{
  Scalar total(0);
  for (auto const &s : segments) { total += s.force.dot(s.displacement) / s.duration; }
  return total;
}

/// Segment velocity traces joined into one trajectory; each segment after the first drops its initial
/// sample, which repeats the previous segment's final one.
template <typename Scalar>
std::vector<Vec2T<Scalar>> concatenated_velocities(std::span<TrajectorySegmentT<Scalar> const> segments)
{
  std::vector<Vec2T<Scalar>> v;
  for (auto const &s : segments) {
    auto first = s.velocity_trace.begin();
    if (!v.empty() && first != s.velocity_trace.end()) { ++first; }
    v.insert(v.end(), first, s.velocity_trace.end());
  }
  return v;
}

/**
 * Integral of squared jerk over a velocity signal sampled every `h` seconds.
 *
 * a_k = (v_{k+1} - v_k) / h, j_k = (a_{k+1} - a_k) / h, result = sum |j_k|^2 h.
 * Fewer than three samples carry no jerk and give 0.
 */
template <typename Scalar> Scalar smoothness_of_velocities(std::span<Vec2T<Scalar> const> v, Scalar h)
{
  if (v.size() < 3) { return Scalar(0); }
  Scalar total(0);
  for (std::size_t k = 0; k + 2 < v.size(); ++k) {
    Vec2T<Scalar> const jerk = (v[k + 2] - Scalar(2) * v[k + 1] + v[k]) / (h * h);
    total += jerk.squaredNorm() * h;
  }
  return total;
}

template <typename Scalar> Scalar smoothness(std::span<TrajectorySegmentT<Scalar> const> segments, Scalar h)
{
  auto const v = concatenated_velocities(segments);
  return smoothness_of_velocities<Scalar>(v, h);
}

/// Per-motion segments of a solution path; the root contributes none.
std::vector<TrajectorySegment> segments_from_path(SolutionPath const &path);

struct MetricsReport
{
  double action = 0.0;      ///< N m s
  double power = 0.0;       ///< W
  double smoothness = 0.0;  ///< (m/s^3)^2 s
  double planning_time = 0.0; ///< s
  bool success = false;
};

/// Metrics of a solved path with the jerk step `h` (the propagator's substep).
MetricsReport evaluate(SolutionPath const &path, double h, double planning_time);

/// Report for a run that found no solution within `max_time`.
MetricsReport failed_run(double max_time);

struct MetricsSummary
{
  std::size_t runs = 0;
  std::size_t successes = 0;
  double success_rate = 0.0;
  double planning_time = 0.0; ///< mean over successful runs; max_time when none succeeded
  double action = std::numeric_limits<double>::infinity();
  double power = std::numeric_limits<double>::infinity();
  double smoothness = std::numeric_limits<double>::infinity();
};

/// Success rate over all runs; metric means over successful runs, infinite markers when none succeeded.
MetricsSummary aggregate(std::span<MetricsReport const> runs, double max_time);

} // namespace kinobench
