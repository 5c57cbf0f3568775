#include "kinobench/metrics.hpp"

#include <cmath>

#include "kinobench/planner.hpp"

namespace kinobench {

std::vector<TrajectorySegment> segments_from_path(SolutionPath const &path)
{
  std::vector<TrajectorySegment> out;
  for (auto const &pm : path.motions) {
    if (!pm.motion.control) { continue; }
    Control const &c = *pm.motion.control;
    if (pm.trace.size() < 2) { throw StructuralError("motion trace holds fewer than two samples"); }
    double const span = pm.trace.back().time - pm.trace.front().time;
    double const h = span / static_cast<double>(pm.trace.size() - 1);
    if (std::abs(span - c.duration) > 1e-9 * std::max(1.0, c.duration) || !(h > 0.0)) {
      throw StructuralError("motion trace length does not match its control duration");
    }
    TrajectorySegment s{c.force, c.duration, 0.0, pm.trace.back().position - pm.trace.front().position, {}};
    s.velocity_trace.reserve(pm.trace.size());
    for (std::size_t k = 0; k < pm.trace.size(); ++k) {
      if (k > 0) { s.path_length += (pm.trace[k].position - pm.trace[k - 1].position).norm(); }
      s.velocity_trace.push_back(pm.trace[k].velocity);
    }
    out.push_back(std::move(s));
  }
  return out;
}

MetricsReport evaluate(SolutionPath const &path, double h, double planning_time)
{
  auto const segments = segments_from_path(path);
  std::span<TrajectorySegment const> const view(segments);
  MetricsReport r;
  r.action = action(view);
  r.power = power(view);
  r.smoothness = smoothness(view, h);
  r.planning_time = planning_time;
  r.success = true;
  return r;
}

MetricsReport failed_run(double max_time)
{
  double const inf = std::numeric_limits<double>::infinity();
  return {inf, inf, inf, max_time, false};
}

MetricsSummary aggregate(std::span<MetricsReport const> runs, double max_time)
{
  if (runs.empty()) { throw ContractViolation("aggregate needs at least one run"); }
  MetricsSummary s;
  s.runs = runs.size();
  double time = 0.0;
  double act = 0.0;
  double pow = 0.0;
  double smooth = 0.0;
  for (auto const &r : runs) {
    if (!r.success) { continue; }
    ++s.successes;
    time += r.planning_time;
    act += r.action;
    pow += r.power;
    smooth += r.smoothness;
  }
  s.success_rate = static_cast<double>(s.successes) / static_cast<double>(s.runs);
  if (s.successes == 0) {
    s.planning_time = max_time;
    return s;
  }
  double const n = static_cast<double>(s.successes);
  s.planning_time = time / n;
  s.action = act / n;
  s.power = pow / n;
  s.smoothness = smooth / n;
  return s;
}

} // namespace kinobench
