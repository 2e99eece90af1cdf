#pragma once

#include "eforge/core/flats.hpp"
#include "eforge/core/types.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace eforge {

/// Point of real projective n-space in homogeneous coordinates (x_1, ..., x_n, w).
/// w = 0 marks a point at infinity; coordinates are defined up to a nonzero factor.
template <typename Scalar>
class HPoint {
 public:
  using Vector = VectorX<Scalar>;

  explicit HPoint(Vector coords) : coords_(std::move(coords)) {
    if (coords_.size() < 2 || coords_.cwiseAbs().maxCoeff() == Scalar(0)) {
      throw GeometryError(ErrorKind::InvalidArgument, "homogeneous coordinates must not all vanish");
    }
  }

  static HPoint from_affine(const Vector& x) {
    Vector c(x.size() + 1);
    c << x, Scalar(1);
    return HPoint(std::move(c));
  }

  static HPoint at_infinity(const Vector& direction) {
    Vector c(direction.size() + 1);
    c << direction, Scalar(0);
    return HPoint(std::move(c));
  }

  Eigen::Index dim() const { return coords_.size() - 1; }
  const Vector& coords() const { return coords_; }
  Scalar weight() const { return coords_(dim()); }
  Vector spatial() const { return coords_.head(dim()); }

  bool is_at_infinity(Scalar rel_tol = Scalar(1e-12)) const {
    return std::abs(weight()) <= rel_tol * coords_.norm();
  }

  Vector affine() const {
    if (is_at_infinity(Scalar(0))) {
      throw GeometryError(ErrorKind::InvalidArgument, "point at infinity has no affine representative");
    }
    return spatial() / weight();
  }

  Vector normalized() const { return coords_.normalized(); }

  /// Equality as projective points: proportional coordinates.
  bool equals(const HPoint& other, Scalar rel_tol = Scalar(1e-12)) const {
    if (other.dim() != dim()) return false;
    const Vector a = coords_.normalized();
    const Vector b = other.coords_.normalized();
    return (a - a.dot(b) * b).norm() <= rel_tol;
  }

 private:
  Vector coords_;
};

/// Hyperplane of projective n-space: {X : <coeffs, X> = 0}. Includes the hyperplane at infinity.
template <typename Scalar>
class ProjectiveHyperplane {
 public:
  using Vector = VectorX<Scalar>;

  explicit ProjectiveHyperplane(Vector coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() < 2 || coeffs_.cwiseAbs().maxCoeff() == Scalar(0)) {
      throw GeometryError(ErrorKind::InvalidArgument, "hyperplane coefficients must not all vanish");
    }
    coeffs_.normalize();
  }

  static ProjectiveHyperplane at_infinity(Eigen::Index n) {
    Vector c = Vector::Zero(n + 1);
    c(n) = Scalar(1);
    return ProjectiveHyperplane(std::move(c));
  }

  static ProjectiveHyperplane from_affine(const Hyperplane<Scalar>& h) {
    Vector c(h.dim() + 1);
    c << h.normal(), -h.offset();
    return ProjectiveHyperplane(std::move(c));
  }

  Eigen::Index dim() const { return coeffs_.size() - 1; }
  const Vector& coeffs() const { return coeffs_; }

  bool is_at_infinity(Scalar tol = Scalar(1e-12)) const { return coeffs_.head(dim()).norm() <= tol; }

  Hyperplane<Scalar> affine() const {
    if (is_at_infinity(Scalar(0))) {
      throw GeometryError(ErrorKind::InvalidArgument, "the hyperplane at infinity has no affine part");
    }
    return Hyperplane<Scalar>(coeffs_.head(dim()), -coeffs_(dim()));
  }

  Scalar evaluate(const HPoint<Scalar>& p) const { return coeffs_.dot(p.normalized()); }

  /// Meet with the line joining two distinct points.
  HPoint<Scalar> meet(const HPoint<Scalar>& a, const HPoint<Scalar>& b) const {
    const Vector an = a.normalized();
    const Vector bn = b.normalized();
    Vector x = coeffs_.dot(bn) * an - coeffs_.dot(an) * bn;
    if (x.norm() <= Scalar(64) * std::numeric_limits<Scalar>::epsilon()) {
      throw GeometryError(ErrorKind::DegenerateLines, "line lies in the hyperplane or points coincide");
    }
    return HPoint<Scalar>(std::move(x));
  }

 private:
  Vector coeffs_;
};

/// Invertible linear map of homogeneous coordinates.
template <typename Scalar>
class ProjectiveMap {
 public:
  using Matrix = MatrixX<Scalar>;

  explicit ProjectiveMap(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() < 2) {
      throw GeometryError(ErrorKind::InvalidArgument, "projective map needs a square (n+1)x(n+1) matrix");
    }
    const Scalar scale = m_.cwiseAbs().maxCoeff();
    if (!(std::abs(m_.determinant()) > Scalar(1e-12) * std::pow(scale, Scalar(m_.rows())))) {
      throw GeometryError(ErrorKind::InvalidArgument, "projective map is singular");
    }
  }

  const Matrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows() - 1; }

  HPoint<Scalar> operator()(const HPoint<Scalar>& p) const { return HPoint<Scalar>(m_ * p.coords()); }

  /// Hyperplanes transform by the inverse transpose.
  ProjectiveHyperplane<Scalar> operator()(const ProjectiveHyperplane<Scalar>& h) const {
    return ProjectiveHyperplane<Scalar>(m_.transpose().partialPivLu().solve(h.coeffs()));
  }

  ProjectiveMap inverse() const { return ProjectiveMap(m_.inverse()); }
  ProjectiveMap operator*(const ProjectiveMap& rhs) const { return ProjectiveMap(m_ * rhs.m_); }

 private:
  Matrix m_;
};

/// x -> linear * x + translation. Fixes the hyperplane at infinity.
template <typename Scalar>
class AffineMap {
 public:
  using Vector = VectorX<Scalar>;
  using Matrix = MatrixX<Scalar>;

  AffineMap(Matrix linear, Vector translation) : linear_(std::move(linear)), translation_(std::move(translation)) {
    if (linear_.rows() != linear_.cols() || translation_.size() != linear_.rows()) {
      throw GeometryError(ErrorKind::InvalidArgument, "affine map dimensions disagree");
    }
    const Scalar scale = linear_.cwiseAbs().maxCoeff();
    if (!(std::abs(linear_.determinant()) > Scalar(1e-12) * std::pow(scale, Scalar(linear_.rows() + 1)))) {
      throw GeometryError(ErrorKind::InvalidArgument, "affine map is singular");
    }
  }

  static AffineMap identity(Eigen::Index n) { return AffineMap(Matrix::Identity(n, n), Vector::Zero(n)); }

  const Matrix& linear() const { return linear_; }
  const Vector& translation() const { return translation_; }
  Eigen::Index dim() const { return linear_.rows(); }

  Vector operator()(const Vector& x) const { return linear_ * x + translation_; }
  Vector apply_direction(const Vector& d) const { return linear_ * d; }

  Matrix matrix() const {
    const auto n = dim();
    Matrix m = Matrix::Zero(n + 1, n + 1);
    m.topLeftCorner(n, n) = linear_;
    m.topRightCorner(n, 1) = translation_;
    m(n, n) = Scalar(1);
    return m;
  }

  ProjectiveMap<Scalar> projective() const { return ProjectiveMap<Scalar>(matrix()); }

  AffineMap inverse() const {
    Matrix inv = linear_.inverse();
    return AffineMap(inv, -inv * translation_);
  }

  AffineMap operator*(const AffineMap& rhs) const {
    return AffineMap(linear_ * rhs.linear_, linear_ * rhs.translation_ + translation_);
  }

  Hyperplane<Scalar> operator()(const Hyperplane<Scalar>& h) const {
    const Vector n = linear_.transpose().partialPivLu().solve(h.normal());
    return Hyperplane<Scalar>::through((*this)(h.foot()), n);
  }

 private:
  Matrix linear_;
  Vector translation_;
};

namespace detail {

/// Coordinates of collinear projective points in a 2-D basis of their common line.
template <typename Scalar, std::size_t N>
std::array<Eigen::Matrix<Scalar, 2, 1>, N> line_coordinates(const std::array<const HPoint<Scalar>*, N>& pts,
                                                            Scalar collinearity_tol) {
  const auto rows = pts[0]->coords().size();
  MatrixX<Scalar> m(rows, static_cast<Eigen::Index>(N));
  for (std::size_t i = 0; i < N; ++i) {
    if (pts[i]->coords().size() != rows) {
      throw GeometryError(ErrorKind::InvalidArgument, "points of different dimension");
    }
    m.col(static_cast<Eigen::Index>(i)) = pts[i]->normalized();
  }
  Eigen::JacobiSVD<MatrixX<Scalar>> svd(m, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  if (s.size() > 2 && s(2) > collinearity_tol * s(0)) {
    throw GeometryError(ErrorKind::NonCollinear, "points do not lie on one line");
  }
  if (s(1) <= Scalar(64) * std::numeric_limits<Scalar>::epsilon() * s(0)) {
    throw GeometryError(ErrorKind::DegenerateQuadruple, "all points coincide");
  }
  const MatrixX<Scalar> basis = svd.matrixU().leftCols(2);
  std::array<Eigen::Matrix<Scalar, 2, 1>, N> out;
  for (std::size_t i = 0; i < N; ++i) {
    out[i] = basis.transpose() * m.col(static_cast<Eigen::Index>(i));
  }
  return out;
}

template <typename Scalar>
Scalar det2(const Eigen::Matrix<Scalar, 2, 1>& p, const Eigen::Matrix<Scalar, 2, 1>& q) {
  return p(0) * q(1) - p(1) * q(0);
}

}  // namespace detail

/// Cross ratio [a, b; c, d] = ((a-c)(b-d)) / ((b-c)(a-d)) in an affine parameter of the common line.
/// Computed with 2x2 determinants of homogeneous line coordinates, so points at infinity need no
/// special casing.
template <typename Scalar>
Scalar cross_ratio(const HPoint<Scalar>& a, const HPoint<Scalar>& b, const HPoint<Scalar>& c,
                   const HPoint<Scalar>& d, Scalar collinearity_tol = Scalar(1e-9)) {
  const auto t = detail::line_coordinates<Scalar, 4>({&a, &b, &c, &d}, collinearity_tol);
  const Scalar eps = Scalar(256) * std::numeric_limits<Scalar>::epsilon();
  if (std::abs(detail::det2(t[0], t[1])) <= eps || std::abs(detail::det2(t[2], t[3])) <= eps) {
    throw GeometryError(ErrorKind::DegenerateQuadruple, "a = b or c = d");
  }
  const Scalar num = detail::det2(t[0], t[2]) * detail::det2(t[1], t[3]);
  const Scalar den = detail::det2(t[1], t[2]) * detail::det2(t[0], t[3]);
  if (std::abs(den) <= eps) {
    throw GeometryError(ErrorKind::DegenerateQuadruple, "cross ratio is 0/0 or infinite");
  }
  return num / den;
}

/// The point p with [a, b; o, p] = -1. If o = alpha*a + beta*b then p = alpha*a - beta*b.
template <typename Scalar>
HPoint<Scalar> harmonic_conjugate(const HPoint<Scalar>& a, const HPoint<Scalar>& b, const HPoint<Scalar>& o,
                                  Scalar collinearity_tol = Scalar(1e-9)) {
  using Vector = VectorX<Scalar>;
  const Vector an = a.normalized();
  const Vector bn = b.normalized();
  const Vector on = o.normalized();
  MatrixX<Scalar> ab(an.size(), 2);
  ab << an, bn;
  Eigen::JacobiSVD<MatrixX<Scalar>> svd(ab, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.singularValues()(1) <= Scalar(64) * std::numeric_limits<Scalar>::epsilon()) {
    throw GeometryError(ErrorKind::DegenerateQuadruple, "a and b coincide");
  }
  const Eigen::Matrix<Scalar, 2, 1> coef = svd.solve(on);
  if ((ab * coef - on).norm() > collinearity_tol) {
    throw GeometryError(ErrorKind::NonCollinear, "o is not on the line through a and b");
  }
  const Scalar eps = Scalar(1e3) * std::numeric_limits<Scalar>::epsilon();
  if (std::abs(coef(0)) <= eps || std::abs(coef(1)) <= eps) {
    throw GeometryError(ErrorKind::InvalidArgument, "o coincides with an endpoint");
  }
  return HPoint<Scalar>(Vector(coef(0) * an - coef(1) * bn));
}

using HPointd = HPoint<double>;
using ProjectiveHyperplaned = ProjectiveHyperplane<double>;
using ProjectiveMapd = ProjectiveMap<double>;
using AffineMapd = AffineMap<double>;

}  // namespace eforge
