#pragma once

#include "eforge/core/flats.hpp"
#include "eforge/core/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string_view>

namespace eforge {

enum class Classification { Ellipse, ParabolaOrDegenerate, Hyperbola, Hyperplane };

constexpr std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::Ellipse: return "ellipse";
    case Classification::ParabolaOrDegenerate: return "parabola-or-degenerate";
    case Classification::Hyperbola: return "hyperbola";
    case Classification::Hyperplane: return "hyperplane";
  }
  return "unknown";
}

/// Outcome of a least-squares hyperplane or quadric fit.
///
/// `model` holds the hyperplane (normal, offset) or the quadric monomial coefficients
/// (x_i x_j for i <= j, then x_i, then 1; for conics a X^2 + b XY + c Y^2 + d X + e Y + f),
/// normalized to unit length. Hyperplane residuals are distances relative to the cloud
/// diameter; quadric residuals are algebraic values on centred, RMS-scaled coordinates.
template <typename Scalar>
struct FitResult {
  VectorX<Scalar> model;
  Scalar rms_residual{};
  Scalar max_residual{};
  Classification classification{Classification::ParabolaOrDegenerate};
  Scalar tolerance{};
  bool accepted{false};
  Eigen::Index sample_count{};

  // Filled for ellipse/ellipsoid classifications. `center` is ambient; `shape` is expressed in
  // the fit frame (columns of `frame`), so the quadric is (y - y0)^T shape (y - y0) = 1.
  VectorX<Scalar> center;
  MatrixX<Scalar> shape;
  MatrixX<Scalar> frame;

  Hyperplane<Scalar> hyperplane() const {
    if (classification != Classification::Hyperplane) {
      throw GeometryError(ErrorKind::InvalidArgument, "not a hyperplane fit");
    }
    const auto n = model.size() - 1;
    return Hyperplane<Scalar>(model.head(n), model(n));
  }
};

/// Largest pairwise distance of the columns of `points`; beyond 4096 points, twice the
/// largest distance from the centroid.
template <typename Scalar>
Scalar cloud_diameter(const MatrixX<Scalar>& points) {
  const auto m = points.cols();
  if (m > 4096) {
    const VectorX<Scalar> c = points.rowwise().mean();
    return Scalar(2) * (points.colwise() - c).colwise().norm().maxCoeff();
  }
  Scalar best = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i + 1; j < m; ++j) {
      best = std::max(best, (points.col(i) - points.col(j)).squaredNorm());
    }
  }
  return std::sqrt(best);
}

/// Least-squares hyperplane through the centroid of the columns of `points`: the normal is the
/// smallest principal direction of the centred second-moment matrix.
template <typename Scalar>
FitResult<Scalar> fit_hyperplane(const MatrixX<Scalar>& points, Scalar tolerance = Scalar(1e-6)) {
  const auto n = points.rows();
  const auto m = points.cols();
  if (n < 2 || m < n + 1) {
    throw GeometryError(ErrorKind::DegenerateCloud, "hyperplane fit needs at least n+1 points");
  }
  const VectorX<Scalar> centroid = points.rowwise().mean();
  const MatrixX<Scalar> centred = points.colwise() - centroid;
  const MatrixX<Scalar> scatter = centred * centred.transpose();
  Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> eig(scatter);
  const auto& ev = eig.eigenvalues();
  const Scalar top = ev(n - 1);
  if (!(top > Scalar(0)) || ev(1) <= Scalar(1e-20) * top) {
    throw GeometryError(ErrorKind::DegenerateCloud, "scatter rank below n-1");
  }
  VectorX<Scalar> normal = eig.eigenvectors().col(0);
  Eigen::Index arg = 0;
  normal.cwiseAbs().maxCoeff(&arg);
  if (normal(arg) < 0) normal = -normal;

  const Scalar diam = cloud_diameter<Scalar>(points);
  const VectorX<Scalar> d = centred.transpose() * normal;

  FitResult<Scalar> out;
  out.model.resize(n + 1);
  out.model << normal, normal.dot(centroid);
  out.rms_residual = std::sqrt(d.squaredNorm() / Scalar(m)) / diam;
  out.max_residual = d.cwiseAbs().maxCoeff() / diam;
  out.classification = Classification::Hyperplane;
  out.tolerance = tolerance;
  out.accepted = out.rms_residual < tolerance;
  out.sample_count = m;
  out.center = centroid;
  return out;
}

namespace detail {

template <typename Scalar>
Eigen::Index quadric_monomial_count(Eigen::Index d) {
  return (d + 1) * (d + 2) / 2;
}

template <typename Scalar>
void quadric_monomials(const VectorX<Scalar>& x, Eigen::Ref<VectorX<Scalar>> row) {
  const auto d = x.size();
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i; j < d; ++j) row(k++) = x(i) * x(j);
  }
  for (Eigen::Index i = 0; i < d; ++i) row(k++) = x(i);
  row(k) = Scalar(1);
}

/// Splits monomial coefficients into x^T A x + b^T x + f.
template <typename Scalar>
void quadric_parts(const VectorX<Scalar>& c, Eigen::Index d, MatrixX<Scalar>& a, VectorX<Scalar>& b, Scalar& f) {
  a.setZero(d, d);
  b.resize(d);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i; j < d; ++j) {
      if (i == j) {
        a(i, i) = c(k++);
      } else {
        a(i, j) = a(j, i) = c(k++) / Scalar(2);
      }
    }
  }
  for (Eigen::Index i = 0; i < d; ++i) b(i) = c(k++);
  f = c(k);
}

template <typename Scalar>
VectorX<Scalar> quadric_pack(const MatrixX<Scalar>& a, const VectorX<Scalar>& b, Scalar f) {
  const auto d = b.size();
  VectorX<Scalar> c(quadric_monomial_count<Scalar>(d));
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i; j < d; ++j) c(k++) = (i == j) ? a(i, i) : Scalar(2) * a(i, j);
  }
  for (Eigen::Index i = 0; i < d; ++i) c(k++) = b(i);
  c(k) = f;
  return c;
}

}  // namespace detail

/// Least-squares quadric through the columns of `points` (d x N, d >= 2), fitted on centred and
/// RMS-scaled coordinates with a unit-norm coefficient vector. "Ellipse" means a real ellipsoid
/// of dimension d; the verdict additionally needs rms algebraic residual below `tolerance`.
template <typename Scalar>
FitResult<Scalar> fit_quadric(const MatrixX<Scalar>& points, Scalar tolerance = Scalar(1e-6)) {
  const auto d = points.rows();
  const auto m = points.cols();
  const auto k = detail::quadric_monomial_count<Scalar>(d);
  if (d < 2 || m < k) {
    throw GeometryError(ErrorKind::DegenerateCloud, "quadric fit needs at least (d+1)(d+2)/2 points");
  }
  const VectorX<Scalar> mu = points.rowwise().mean();
  const Scalar scale = std::sqrt((points.colwise() - mu).colwise().squaredNorm().mean());
  if (!(scale > Scalar(0))) {
    throw GeometryError(ErrorKind::DegenerateCloud, "all points coincide");
  }
  MatrixX<Scalar> design(m, k);
  VectorX<Scalar> row(k);
  for (Eigen::Index i = 0; i < m; ++i) {
    detail::quadric_monomials<Scalar>((points.col(i) - mu) / scale, row);
    design.row(i) = row.transpose();
  }
  Eigen::JacobiSVD<MatrixX<Scalar>> svd(design, Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  if (s(k - 2) <= Scalar(1e-10) * s(0)) {
    throw GeometryError(ErrorKind::DegenerateCloud, "quadric through the points is not unique");
  }
  VectorX<Scalar> coef = svd.matrixV().col(k - 1);
  const VectorX<Scalar> r = design * coef;

  MatrixX<Scalar> a;
  VectorX<Scalar> b;
  Scalar f{};
  detail::quadric_parts<Scalar>(coef, d, a, b, f);
  if (a.trace() < 0) {
    a = -a;
    b = -b;
    f = -f;
  }

  FitResult<Scalar> out;
  out.rms_residual = std::sqrt(r.squaredNorm() / Scalar(m));
  out.max_residual = r.cwiseAbs().maxCoeff();
  out.tolerance = tolerance;
  out.sample_count = m;
  out.frame = MatrixX<Scalar>::Identity(d, d);

  Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> eig(a);
  const auto& ev = eig.eigenvalues();
  const Scalar big = ev.cwiseAbs().maxCoeff();
  const Scalar small = Scalar(1e-12) * big;
  if (!(big > 0) || ev.cwiseAbs().minCoeff() <= small) {
    out.classification = Classification::ParabolaOrDegenerate;
  } else if (ev(0) < 0 && ev(d - 1) > 0) {
    out.classification = Classification::Hyperbola;
  } else {
    const VectorX<Scalar> c0 = -a.ldlt().solve(b) / Scalar(2);
    const Scalar value_at_center = f + b.dot(c0) / Scalar(2);
    if (value_at_center < 0) {
      out.classification = Classification::Ellipse;
      out.center = mu + scale * c0;
      out.shape = a / (-value_at_center * scale * scale);
    } else {
      out.classification = Classification::ParabolaOrDegenerate;
    }
  }
  out.accepted = out.classification == Classification::Ellipse && out.rms_residual < tolerance;

  // Coefficients in the caller's coordinates.
  const MatrixX<Scalar> ao = a / (scale * scale);
  const VectorX<Scalar> bo = b / scale - Scalar(2) * ao * mu;
  const Scalar fo = mu.dot(ao * mu) - b.dot(mu) / scale + f;
  out.model = detail::quadric_pack<Scalar>(ao, bo, fo).normalized();
  return out;
}

/// Conic (n = 3) or quadric (general n) fit of points lying in `plane`, in an orthonormal chart.
template <typename Scalar>
FitResult<Scalar> fit_planar_conic(const MatrixX<Scalar>& points, const Hyperplane<Scalar>& plane,
                                   Scalar tolerance = Scalar(1e-6), Scalar coplanarity_tol = Scalar(1e-9)) {
  if (points.rows() != plane.dim()) {
    throw GeometryError(ErrorKind::InvalidArgument, "plane and points differ in dimension");
  }
  if (points.cols() < 6) {
    throw GeometryError(ErrorKind::DegenerateCloud, "conic fit needs at least 6 points");
  }
  const VectorX<Scalar> centroid = points.rowwise().mean();
  const Scalar diam = cloud_diameter<Scalar>(points);
  for (Eigen::Index i = 0; i < points.cols(); ++i) {
    if (std::abs(plane.signed_distance(points.col(i))) > coplanarity_tol * std::max(diam, Scalar(1e-300))) {
      throw GeometryError(ErrorKind::NotCoplanar, "points are not within tolerance of the plane");
    }
  }
  const auto chart = HyperplaneChart<Scalar>::of(plane, centroid);
  MatrixX<Scalar> local(chart.basis.cols(), points.cols());
  for (Eigen::Index i = 0; i < points.cols(); ++i) local.col(i) = chart.to_chart(points.col(i));
  FitResult<Scalar> out = fit_quadric<Scalar>(local, tolerance);
  if (out.classification == Classification::Ellipse) out.center = chart.embed(out.center);
  out.frame = chart.basis;
  return out;
}

using FitResultd = FitResult<double>;

}  // namespace eforge
