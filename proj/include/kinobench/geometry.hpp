#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include "kinobench/errors.hpp"

namespace kinobench {

template <typename Scalar> using Vec2T = Eigen::Matrix<Scalar, 2, 1>;
using Vec2 = Vec2T<double>;

inline constexpr double kContactTolerance = 1e-3;

template <typename Scalar> struct Disc
{
  Scalar radius;
  bool operator==(Disc const &) const = default;
};

/// Axis-aligned box given by its half extents.
template <typename Scalar> struct Box
{
  Scalar half_width;
  Scalar half_height;
  bool operator==(Box const &) const = default;
};

/// Vertices are relative to the body position, counter-clockwise, strictly convex.
template <typename Scalar> struct ConvexPolygon
{
  std::vector<Vec2T<Scalar>> vertices;
  bool operator==(ConvexPolygon const &) const = default;
};

template <typename Scalar> using ShapeT = std::variant<Disc<Scalar>, Box<Scalar>, ConvexPolygon<Scalar>>;
using Shape = ShapeT<double>;

/// Deepest-penetration contact between shapes a and b. `normal` points from b towards a.
template <typename Scalar> struct ContactT
{
  Vec2T<Scalar> point;
  Vec2T<Scalar> normal;
  Scalar penetration;
};
using Contact = ContactT<double>;

template <typename Scalar> bool is_strictly_convex_ccw(ConvexPolygon<Scalar> const &poly)
{
  auto const &v = poly.vertices;
  std::size_t const n = v.size();
  if (n < 3) { return false; }
  for (std::size_t i = 0; i < n; ++i) {
    Vec2T<Scalar> const e0 = v[(i + 1) % n] - v[i];
    Vec2T<Scalar> const e1 = v[(i + 2) % n] - v[(i + 1) % n];
    if (e0.x() * e1.y() - e0.y() * e1.x() <= Scalar(0)) { return false; }
  }
  return true;
}

template <typename Scalar> ConvexPolygon<Scalar> as_polygon(Box<Scalar> const &box)
{
  Scalar const w = box.half_width;
  Scalar const h = box.half_height;
  return {{Vec2T<Scalar>(-w, -h), Vec2T<Scalar>(w, -h), Vec2T<Scalar>(w, h), Vec2T<Scalar>(-w, h)}};
}

/// Axis-aligned bounding box of a shape placed at `pos`, as (min, max).
template <typename Scalar>
std::pair<Vec2T<Scalar>, Vec2T<Scalar>> bounding_box(ShapeT<Scalar> const &shape, Vec2T<Scalar> const &pos)
{
  return std::visit(
    [&](auto const &s) -> std::pair<Vec2T<Scalar>, Vec2T<Scalar>> {
      using S = std::decay_t<decltype(s)>;
      if constexpr (std::is_same_v<S, Disc<Scalar>>) {
        Vec2T<Scalar> const r(s.radius, s.radius);
        return {pos - r, pos + r};
      } else if constexpr (std::is_same_v<S, Box<Scalar>>) {
        Vec2T<Scalar> const h(s.half_width, s.half_height);
        return {pos - h, pos + h};
      } else {
        Vec2T<Scalar> lo = s.vertices.front();
        Vec2T<Scalar> hi = lo;
        for (auto const &v : s.vertices) {
          lo = lo.cwiseMin(v);
          hi = hi.cwiseMax(v);
        }
        return {pos + lo, pos + hi};
      }
    },
    shape);
}

namespace detail {

template <typename Scalar>
std::optional<ContactT<Scalar>>
disc_disc(Scalar ra, Vec2T<Scalar> const &pa, Scalar rb, Vec2T<Scalar> const &pb, Scalar tolerance)
{
  Vec2T<Scalar> const d = pa - pb;
  Scalar const dist = d.norm();
  Scalar const pen = ra + rb - dist;
  if (pen < -tolerance) { return std::nullopt; }
  // Coincident centers: +x tie-break.
  Vec2T<Scalar> const n = dist > Scalar(0) ? Vec2T<Scalar>(d / dist) : Vec2T<Scalar>(1, 0);
  return ContactT<Scalar>{pb + n * rb, n, pen};
}

template <typename Scalar>
std::optional<ContactT<Scalar>>
disc_box(Scalar r, Vec2T<Scalar> const &pa, Box<Scalar> const &box, Vec2T<Scalar> const &pb, Scalar tolerance)
{
  Vec2T<Scalar> const d = pa - pb;
  Scalar const hw = box.half_width;
  Scalar const hh = box.half_height;
  bool const outside = std::abs(d.x()) > hw || std::abs(d.y()) > hh;
  if (outside) {
    Vec2T<Scalar> const q(std::clamp(d.x(), -hw, hw), std::clamp(d.y(), -hh, hh));
    Vec2T<Scalar> const delta = d - q;
    Scalar const dist = delta.norm();
    Scalar const pen = r - dist;
    if (pen < -tolerance) { return std::nullopt; }
    return ContactT<Scalar>{pb + q, delta / dist, pen};
  }
  // Center inside the box: push out through the nearest face, x wins ties.
  Scalar const fx = hw - std::abs(d.x());
  Scalar const fy = hh - std::abs(d.y());
  if (fx <= fy) {
    Scalar const s = d.x() >= Scalar(0) ? Scalar(1) : Scalar(-1);
    return ContactT<Scalar>{pb + Vec2T<Scalar>(s * hw, d.y()), Vec2T<Scalar>(s, 0), r + fx};
  }
  Scalar const s = d.y() >= Scalar(0) ? Scalar(1) : Scalar(-1);
  return ContactT<Scalar>{pb + Vec2T<Scalar>(d.x(), s * hh), Vec2T<Scalar>(0, s), r + fy};
}

template <typename Scalar>
std::optional<ContactT<Scalar>> disc_polygon(
  Scalar r, Vec2T<Scalar> const &pa, ConvexPolygon<Scalar> const &poly, Vec2T<Scalar> const &pb, Scalar tolerance)
{
  auto const &v = poly.vertices;
  std::size_t const n = v.size();
  Vec2T<Scalar> const c = pa - pb;
  bool inside = true;
  Scalar best_face = std::numeric_limits<Scalar>::infinity();
  Vec2T<Scalar> best_face_normal(1, 0);
  Scalar best_dist = std::numeric_limits<Scalar>::infinity();
  Vec2T<Scalar> best_point = v.front();
  for (std::size_t i = 0; i < n; ++i) {
    Vec2T<Scalar> const a = v[i];
    Vec2T<Scalar> const e = v[(i + 1) % n] - a;
    Vec2T<Scalar> const outward = Vec2T<Scalar>(e.y(), -e.x()).normalized();
    Scalar const signed_dist = outward.dot(c - a);
    if (signed_dist > Scalar(0)) { inside = false; }
    if (-signed_dist < best_face) {
      best_face = -signed_dist;
      best_face_normal = outward;
    }
    Scalar const t = std::clamp((c - a).dot(e) / e.squaredNorm(), Scalar(0), Scalar(1));
    Vec2T<Scalar> const q = a + t * e;
    Scalar const dist = (c - q).norm();
    if (dist < best_dist) {
      best_dist = dist;
      best_point = q;
    }
  }
  if (inside) { return ContactT<Scalar>{pb + c + best_face_normal * best_face, best_face_normal, r + best_face}; }
  Scalar const pen = r - best_dist;
  if (pen < -tolerance) { return std::nullopt; }
  return ContactT<Scalar>{pb + best_point, (c - best_point) / best_dist, pen};
}

/// Separating-axis test over the face normals of both polygons.
template <typename Scalar>
std::optional<ContactT<Scalar>> polygon_polygon(
  ConvexPolygon<Scalar> const &a, Vec2T<Scalar> const &pa, ConvexPolygon<Scalar> const &b, Vec2T<Scalar> const &pb,
  Scalar tolerance)
{
  Scalar best = std::numeric_limits<Scalar>::infinity();
  Vec2T<Scalar> best_axis(1, 0);
  auto project = [](ConvexPolygon<Scalar> const &p, Vec2T<Scalar> const &pos, Vec2T<Scalar> const &axis) {
    Scalar lo = std::numeric_limits<Scalar>::infinity();
    Scalar hi = -lo;
    for (auto const &v : p.vertices) {
      Scalar const s = axis.dot(pos + v);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    return std::pair{lo, hi};
  };
  for (auto const *poly : {&a, &b}) {
    auto const &v = poly->vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
      Vec2T<Scalar> const e = v[(i + 1) % v.size()] - v[i];
      Vec2T<Scalar> const axis = Vec2T<Scalar>(e.y(), -e.x()).normalized();
      auto const [alo, ahi] = project(a, pa, axis);
      auto const [blo, bhi] = project(b, pb, axis);
      Scalar const overlap = std::min(ahi, bhi) - std::max(alo, blo);
      if (overlap < -tolerance) { return std::nullopt; }
      if (overlap < best) {
        best = overlap;
        best_axis = axis;
      }
    }
  }
  Vec2T<Scalar> ca = Vec2T<Scalar>::Zero();
  Vec2T<Scalar> cb = Vec2T<Scalar>::Zero();
  for (auto const &v : a.vertices) { ca += v; }
  for (auto const &v : b.vertices) { cb += v; }
  ca = pa + ca / Scalar(a.vertices.size());
  cb = pb + cb / Scalar(b.vertices.size());
  if (best_axis.dot(ca - cb) < Scalar(0)) { best_axis = -best_axis; }
  // Deepest vertex of a along -normal.
  Vec2T<Scalar> point = pa + a.vertices.front();
  Scalar lowest = std::numeric_limits<Scalar>::infinity();
  for (auto const &v : a.vertices) {
    Scalar const s = best_axis.dot(pa + v);
    if (s < lowest) {
      lowest = s;
      point = pa + v;
    }
  }
  return ContactT<Scalar>{point, best_axis, best};
}

template <typename Scalar> ConvexPolygon<Scalar> polygon_of(ShapeT<Scalar> const &s)
{
  if (auto const *box = std::get_if<Box<Scalar>>(&s)) { return as_polygon(*box); }
  return std::get<ConvexPolygon<Scalar>>(s);
}

} // namespace detail

/**
 * Deepest-penetration contact between `a` at `pa` and `b` at `pb` (translation-only poses).
 *
 * The normal points from b towards a. Returns nothing when the shapes are separated by more
 * than `tolerance`. Coincident disc centers resolve to a +x normal.
 */
template <typename Scalar>
std::optional<ContactT<Scalar>> collide(
  ShapeT<Scalar> const &a, Vec2T<Scalar> const &pa, ShapeT<Scalar> const &b, Vec2T<Scalar> const &pb,
  Scalar tolerance = Scalar(kContactTolerance))
{
  auto const *da = std::get_if<Disc<Scalar>>(&a);
  auto const *db = std::get_if<Disc<Scalar>>(&b);
  if (da && db) { return detail::disc_disc(da->radius, pa, db->radius, pb, tolerance); }
  if (da) {
    if (auto const *box = std::get_if<Box<Scalar>>(&b)) { return detail::disc_box(da->radius, pa, *box, pb, tolerance); }
    return detail::disc_polygon(da->radius, pa, std::get<ConvexPolygon<Scalar>>(b), pb, tolerance);
  }
  if (db) {
    std::optional<ContactT<Scalar>> c;
    if (auto const *box = std::get_if<Box<Scalar>>(&a)) {
      c = detail::disc_box(db->radius, pb, *box, pa, tolerance);
    } else {
      c = detail::disc_polygon(db->radius, pb, std::get<ConvexPolygon<Scalar>>(a), pa, tolerance);
    }
    if (c) { c->normal = -c->normal; }
    return c;
  }
  return detail::polygon_polygon(detail::polygon_of(a), pa, detail::polygon_of(b), pb, tolerance);
}

} // namespace kinobench
