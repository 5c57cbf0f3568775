#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

#include "kinobench/geometry.hpp"

namespace kinobench {

/// Exact nearest neighbour by linear scan. Ties resolve to the lowest id.
class LinearNearest
{
public:
  void add(std::size_t id, Vec2 const &p)
  {
    ids_.push_back(id);
    points_.push_back(p);
  }

  std::size_t size() const { return ids_.size(); }

  std::size_t nearest(Vec2 const &q) const
  {
    std::size_t best = std::numeric_limits<std::size_t>::max();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points_.size(); ++i) {
      double const d = (points_[i] - q).squaredNorm();
      if (d < best_d || (d == best_d && ids_[i] < best)) {
        best_d = d;
        best = ids_[i];
      }
    }
    return best;
  }

private:
  std::vector<std::size_t> ids_;
  std::vector<Vec2> points_;
};

/// Bucket grid over the plane. Returns the same arg-min as LinearNearest, including the lowest-id tie-break.
class GridNearest
{
public:
  explicit GridNearest(double cell = 0.5)
    : cell_(cell)
  {
  }

  void add(std::size_t id, Vec2 const &p)
  {
    auto const key = cell_of(p);
    buckets_[pack(key.first, key.second)].push_back({id, p});
    lo_x_ = std::min(lo_x_, key.first);
    hi_x_ = std::max(hi_x_, key.first);
    lo_y_ = std::min(lo_y_, key.second);
    hi_y_ = std::max(hi_y_, key.second);
    ++count_;
  }

  std::size_t size() const { return count_; }

  std::size_t nearest(Vec2 const &q) const
  {
    std::size_t best = std::numeric_limits<std::size_t>::max();
    double best_d = std::numeric_limits<double>::infinity();
    auto const [cx, cy] = cell_of(q);
    int const max_ring = std::max({std::abs(cx - lo_x_), std::abs(cx - hi_x_), std::abs(cy - lo_y_),
                                   std::abs(cy - hi_y_)});
    for (int ring = 0; ring <= max_ring; ++ring) {
      // Every point in ring r is at least (r - 1) * cell away from q.
      double const reach = std::max(0, ring - 1) * cell_;
      if (reach * reach > best_d) { break; }
      for (int dx = -ring; dx <= ring; ++dx) {
        for (int dy = -ring; dy <= ring; ++dy) {
          if (std::max(std::abs(dx), std::abs(dy)) != ring) { continue; }
          auto const it = buckets_.find(pack(cx + dx, cy + dy));
          if (it == buckets_.end()) { continue; }
          for (auto const &e : it->second) {
            double const d = (e.point - q).squaredNorm();
            if (d < best_d || (d == best_d && e.id < best)) {
              best_d = d;
              best = e.id;
            }
          }
        }
      }
    }
    return best;
  }

private:
  struct Entry
  {
    std::size_t id;
    Vec2 point;
  };

  std::pair<int, int> cell_of(Vec2 const &p) const
  {
    return {static_cast<int>(std::floor(p.x() / cell_)), static_cast<int>(std::floor(p.y() / cell_))};
  }

  static std::int64_t pack(int x, int y)
  {
    return (static_cast<std::int64_t>(x) << 32) ^ static_cast<std::uint32_t>(y);
  }

  double cell_;
  std::unordered_map<std::int64_t, std::vector<Entry>> buckets_;
  int lo_x_ = std::numeric_limits<int>::max();
  int hi_x_ = std::numeric_limits<int>::min();
  int lo_y_ = std::numeric_limits<int>::max();
  int hi_y_ = std::numeric_limits<int>::min();
  std::size_t count_ = 0;
};

} // namespace kinobench
