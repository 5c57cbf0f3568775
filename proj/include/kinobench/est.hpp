#pragma once

#include <span>
#include <unordered_map>
#include <vector>

#include "kinobench/statespace.hpp"

namespace kinobench {

/// EST milestone weight: inversely proportional to one plus the neighbour count.
inline double est_weight(std::size_t neighbors) { return 1.0 / (1.0 + static_cast<double>(neighbors)); }

/// Number of other milestones within `radius` of each milestone (brute force).
std::vector<std::size_t> est_neighbor_counts(std::span<Vec2 const> positions, double radius);

/**
 * Incremental milestone density for EST: neighbour counts within a fixed radius of the projection, and
 * weighted milestone sampling in O(log n) through a Fenwick tree over the weights.
 */
class EstDensity
{
public:
  explicit EstDensity(double radius);

  std::size_t add(Vec2 const &p);
  std::size_t size() const { return points_.size(); }
  std::size_t neighbors(std::size_t i) const { return counts_[i]; }
  double weight(std::size_t i) const { return est_weight(counts_[i]); }
  double total_weight() const;

  /// Milestone index with probability weight(i) / total_weight().
  std::size_t sample(Rng &rng) const;

private:
  void fenwick_add(std::size_t i, double delta);
  std::int64_t bucket_key(int x, int y) const;

  double radius_;
  std::vector<Vec2> points_;
  std::vector<std::size_t> counts_;
  std::vector<double> tree_; // 1-based Fenwick tree
  std::unordered_map<std::int64_t, std::vector<std::size_t>> buckets_;
};

} // namespace kinobench
