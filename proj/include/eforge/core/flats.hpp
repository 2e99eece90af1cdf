#pragma once

#include "eforge/core/types.hpp"

#include <cmath>

namespace eforge {

/// Orthonormal basis of the orthogonal complement of `v`, one vector per column.
/// Deterministic: built from the Householder reflection of `v`.
template <typename Scalar>
MatrixX<Scalar> orthonormal_complement(const VectorX<Scalar>& v) {
  const auto n = v.size();
  if (n < 2 || v.norm() == Scalar(0)) {
    throw GeometryError(ErrorKind::InvalidArgument, "orthonormal_complement needs a nonzero vector, n >= 2");
  }
  MatrixX<Scalar> a(n, 1);
  a.col(0) = v.normalized();
  Eigen::HouseholderQR<MatrixX<Scalar>> qr(a);
  MatrixX<Scalar> q = qr.householderQ() * MatrixX<Scalar>::Identity(n, n);
  return q.rightCols(n - 1);
}

/// {x : <normal, x> = offset}, normal of unit length.
template <typename Scalar>
class Hyperplane {
 public:
  using Vector = VectorX<Scalar>;

  Hyperplane(const Vector& normal, Scalar offset) {
    const Scalar len = normal.norm();
    if (!(len > Scalar(0))) {
      throw GeometryError(ErrorKind::InvalidArgument, "hyperplane normal must be nonzero");
    }
    normal_ = normal / len;
    offset_ = offset / len;
  }

  static Hyperplane through(const Vector& point, const Vector& normal) {
    const Vector unit = normal.normalized();
    return Hyperplane(unit, unit.dot(point));
  }

  const Vector& normal() const { return normal_; }
  Scalar offset() const { return offset_; }
  Eigen::Index dim() const { return normal_.size(); }

  Scalar signed_distance(const Vector& x) const { return normal_.dot(x) - offset_; }
  Vector project(const Vector& x) const { return x - signed_distance(x) * normal_; }
  Vector foot() const { return offset_ * normal_; }

  Hyperplane flipped() const { return Hyperplane(-normal_, -offset_); }

 private:
  Vector normal_;
  Scalar offset_{};
};

/// Affine chart of a hyperplane: origin on the plane plus an orthonormal basis of its direction space.
template <typename Scalar>
struct HyperplaneChart {
  using Vector = VectorX<Scalar>;

  Vector origin;
  MatrixX<Scalar> basis;  // n x (n-1)

  static HyperplaneChart of(const Hyperplane<Scalar>& plane, const Vector& near) {
    return {plane.project(near), orthonormal_complement<Scalar>(plane.normal())};
  }

  Vector to_chart(const Vector& x) const { return basis.transpose() * (x - origin); }
  Vector embed(const Vector& y) const { return origin + basis * y; }
  Vector embed_direction(const Vector& y) const { return basis * y; }
};

/// {point + t * direction}, direction of unit length.
template <typename Scalar>
class Line {
 public:
  using Vector = VectorX<Scalar>;

  Line(const Vector& point, const Vector& direction) : point_(point) {
    const Scalar len = direction.norm();
    if (!(len > Scalar(0))) {
      throw GeometryError(ErrorKind::InvalidArgument, "line direction must be nonzero");
    }
    direction_ = direction / len;
  }

  static Line through(const Vector& a, const Vector& b) { return Line(a, b - a); }

  const Vector& point() const { return point_; }
  const Vector& direction() const { return direction_; }
  Vector at(Scalar t) const { return point_ + t * direction_; }
  Scalar parameter_of(const Vector& x) const { return direction_.dot(x - point_); }
  Scalar distance_to(const Vector& x) const {
    const Vector d = x - point_;
    return (d - direction_.dot(d) * direction_).norm();
  }

 private:
  Vector point_;
  Vector direction_;
};

/// {x : a1 < <normal, x> < a2}.
template <typename Scalar>
class Slab {
 public:
  using Vector = VectorX<Scalar>;

  Slab(const Vector& normal, Scalar a1, Scalar a2) {
    const Scalar len = normal.norm();
    if (!(len > Scalar(0)) || !(a1 < a2)) {
      throw GeometryError(ErrorKind::InvalidArgument, "slab needs a nonzero normal and a1 < a2");
    }
    normal_ = normal / len;
    a1_ = a1 / len;
    a2_ = a2 / len;
  }

  /// Slab of width `width` centred on `plane`.
  static Slab around(const Hyperplane<Scalar>& plane, Scalar width) {
    return Slab(plane.normal(), plane.offset() - width / 2, plane.offset() + width / 2);
  }

  const Vector& normal() const { return normal_; }
  Scalar a1() const { return a1_; }
  Scalar a2() const { return a2_; }
  Scalar width() const { return std::abs(a2_ - a1_); }
  bool contains(const Vector& x) const {
    const Scalar s = normal_.dot(x);
    return a1_ < s && s < a2_;
  }
  /// Hyperplane parallel to the walls at fraction `t` in [0, 1] of the way from a1 to a2.
  Hyperplane<Scalar> layer(Scalar t) const { return Hyperplane<Scalar>(normal_, a1_ + t * (a2_ - a1_)); }

 private:
  Vector normal_;
  Scalar a1_{};
  Scalar a2_{};
};

using Hyperplaned = Hyperplane<double>;
using Lined = Line<double>;
using Slabd = Slab<double>;
using Chartd = HyperplaneChart<double>;

}  // namespace eforge
