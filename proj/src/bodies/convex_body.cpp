#include "eforge/bodies/convex_body.hpp"

#include "eforge/core/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace eforge {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_dim(const ConvexBody& body, const Vec& v, const char* what) {
  if (v.size() != body.dim()) {
    throw GeometryError(ErrorKind::InvalidArgument, std::string(what) + " has the wrong dimension");
  }
}

// Bisection for the boundary crossing of t -> gauge(origin + t dir) on [lo, hi] with
// gauge(lo) < 1 <= gauge(hi).
double bisect_exit(const ConvexBody& body, const Vec& origin, const Vec& dir, double lo, double hi) {
  for (int it = 0; it < 200 && hi - lo > 4 * kEps * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (body.gauge(origin + mid * dir) < 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Visits every k-subset of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_subset(Eigen::Index n, Eigen::Index k, Fn&& fn) {
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(idx);
    Eigen::Index i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (Eigen::Index j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace

// ---------------------------------------------------------------------------------------------

Vec ConvexBody::normal(const Vec& p) const {
  if (!is_smooth()) throw GeometryError(ErrorKind::NonSmoothBody, "normal of a non-smooth body");
  // Central difference of the gauge.
  const double h = 1e-6 * diameter();
  Vec g(dim());
  for (Eigen::Index i = 0; i < dim(); ++i) {
    Vec e = Vec::Zero(dim());
    e(i) = h;
    g(i) = gauge(p + e) - gauge(p - e);
  }
  return g.normalized();
}

double ConvexBody::ray_exit(const Vec& origin, const Vec& dir) const {
  require_dim(*this, origin, "ray origin");
  require_dim(*this, dir, "ray direction");
  const double len = dir.norm();
  if (!(len > 0)) throw GeometryError(ErrorKind::InvalidArgument, "ray direction must be nonzero");
  const Vec c = center();
  if ((origin - c).norm() <= 1e-14 * diameter()) return 1.0 / gauge(c + dir);
  if (gauge(origin) >= 1.0) throw GeometryError(ErrorKind::InvalidArgument, "ray origin is not interior");
  double hi = diameter() / len;
  while (gauge(origin + hi * dir) < 1.0) hi *= 2;
  return bisect_exit(*this, origin, dir, 0.0, hi);
}

void ConvexBody::init_diameter(Eigen::Index count) {
  if (count == 0) count = dim() == 2 ? 720 : 2000;
  const Mat dirs = sphere_directions(dim(), count, 0);
  double best = 0;
  for (Eigen::Index i = 0; i < dirs.cols(); ++i) {
    const Vec u = dirs.col(i);
    best = std::max(best, support(u) + support(-u));
  }
  diameter_ = best;
}

// ---------------------------------------------------------------------------------------------

Ellipsoid::Ellipsoid(Vec center, Mat shape, std::string name)
    : ConvexBody(std::move(name)), center_(std::move(center)), shape_(std::move(shape)) {
  const auto n = center_.size();
  if (n < 2 || shape_.rows() != n || shape_.cols() != n) {
    throw GeometryError(ErrorKind::InvalidArgument, "ellipsoid needs an n x n shape matrix, n >= 2");
  }
  if ((shape_ - shape_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, shape_.cwiseAbs().maxCoeff())) {
    throw GeometryError(ErrorKind::InvalidArgument, "ellipsoid shape matrix is not symmetric");
  }
  shape_ = 0.5 * (shape_ + shape_.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> eig(shape_);
  if (!(eig.eigenvalues()(0) > 0)) {
    throw GeometryError(ErrorKind::InvalidArgument, "ellipsoid shape matrix is not positive definite");
  }
  inverse_ = eig.eigenvectors() * eig.eigenvalues().cwiseInverse().asDiagonal() * eig.eigenvectors().transpose();
  init_diameter();
}

double Ellipsoid::support(const Vec& u) const { return center_.dot(u) + std::sqrt(u.dot(inverse_ * u)); }

Vec Ellipsoid::support_point(const Vec& u) const {
  const Vec w = inverse_ * u;
  return center_ + w / std::sqrt(u.dot(w));
}

double Ellipsoid::gauge(const Vec& x) const {
  const Vec d = x - center_;
  return std::sqrt(std::max(0.0, d.dot(shape_ * d)));
}

Vec Ellipsoid::normal(const Vec& p) const { return (shape_ * (p - center_)).normalized(); }

double Ellipsoid::ray_exit(const Vec& origin, const Vec& dir) const {
  const Vec d0 = origin - center_;
  const Vec qd = shape_ * dir;
  const double a = dir.dot(qd);
  const double b = d0.dot(qd);
  const double c = d0.dot(shape_ * d0) - 1.0;
  if (!(a > 0)) throw GeometryError(ErrorKind::InvalidArgument, "ray direction must be nonzero");
  if (c >= 0) throw GeometryError(ErrorKind::InvalidArgument, "ray origin is not interior");
  // Larger root of a s^2 + 2 b s + c = 0, written to avoid cancellation.
  const double disc = std::sqrt(b * b - a * c);
  return b > 0 ? -c / (b + disc) : (disc - b) / a;
}

// ---------------------------------------------------------------------------------------------

PBall::PBall(double exponent, Vec semi_axes, std::string name)
    : ConvexBody(std::move(name)), p_(exponent), q_(exponent / (exponent - 1.0)), axes_(std::move(semi_axes)) {
  if (!(p_ > 1.0) || !std::isfinite(p_)) throw GeometryError(ErrorKind::InvalidArgument, "p-ball exponent must lie in (1, inf)");
  if (axes_.size() < 2 || !(axes_.minCoeff() > 0)) {
    throw GeometryError(ErrorKind::InvalidArgument, "p-ball needs n >= 2 positive semi-axes");
  }
  init_diameter();
}

double PBall::support(const Vec& u) const {
  const Vec v = axes_.cwiseProduct(u);
  const double scale = v.cwiseAbs().maxCoeff();
  if (scale == 0) return 0;
  return scale * std::pow((v.cwiseAbs() / scale).array().pow(q_).sum(), 1.0 / q_);
}

Vec PBall::support_point(const Vec& u) const {
  const Vec v = axes_.cwiseProduct(u);
  const double scale = v.cwiseAbs().maxCoeff();
  if (scale == 0) throw GeometryError(ErrorKind::InvalidArgument, "support direction must be nonzero");
  const Eigen::ArrayXd r = v.cwiseAbs().array() / scale;
  const double hq = std::pow(r.pow(q_).sum(), 1.0 / q_);
  Vec x(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const double s = v(i) > 0 ? 1.0 : (v(i) < 0 ? -1.0 : 0.0);
    x(i) = axes_(i) * s * std::pow(r(i) / hq, q_ - 1.0);
  }
  return x;
}

double PBall::gauge(const Vec& x) const {
  const Eigen::ArrayXd r = x.cwiseQuotient(axes_).cwiseAbs().array();
  const double scale = r.maxCoeff();
  if (scale == 0) return 0;
  return scale * std::pow((r / scale).pow(p_).sum(), 1.0 / p_);
}

Vec PBall::normal(const Vec& p) const {
  const Eigen::ArrayXd r = p.cwiseQuotient(axes_).array();
  const double scale = r.abs().maxCoeff();
  if (scale == 0) throw GeometryError(ErrorKind::InvalidArgument, "normal at the centre");
  Vec g(p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const double s = r(i) > 0 ? 1.0 : (r(i) < 0 ? -1.0 : 0.0);
    g(i) = s * std::pow(std::abs(r(i)) / scale, p_ - 1.0) / axes_(i);
  }
  return g.normalized();
}

// ---------------------------------------------------------------------------------------------

Polytope::Polytope(Mat vertices, std::string name) : ConvexBody(std::move(name)), vertices_(std::move(vertices)) {
  const auto n = vertices_.rows();
  const auto m = vertices_.cols();
  if (n < 2 || m < n + 1) throw GeometryError(ErrorKind::InvalidArgument, "polytope needs at least n+1 vertices, n >= 2");
  if (m > 64) throw GeometryError(ErrorKind::InvalidArgument, "polytope supports at most 64 vertices");
  center_ = vertices_.rowwise().mean();
  const Mat centred = vertices_.colwise() - center_;
  const double scale = centred.colwise().norm().maxCoeff();
  Eigen::JacobiSVD<Mat> svd(centred);
  if (svd.singularValues()(n - 1) <= 1e-12 * svd.singularValues()(0)) {
    throw GeometryError(ErrorKind::InvalidArgument, "polytope vertices do not span R^n");
  }
  // Facets: hyperplanes through n affinely independent vertices with every vertex on one side.
  for_each_subset(m, n, [&](const std::vector<Eigen::Index>& idx) {
    Mat diffs(n, n - 1);
    for (Eigen::Index j = 1; j < n; ++j) diffs.col(j - 1) = centred.col(idx[static_cast<std::size_t>(j)]) - centred.col(idx[0]);
    Eigen::JacobiSVD<Mat> s(diffs.transpose(), Eigen::ComputeFullV);
    if (n > 2 && s.singularValues()(n - 2) <= 1e-10 * scale) return;
    if (n == 2 && diffs.norm() <= 1e-10 * scale) return;
    Vec normal = s.matrixV().col(n - 1);
    double offset = normal.dot(centred.col(idx[0]));
    if (offset < 0) {
      normal = -normal;
      offset = -offset;
    }
    if (offset <= 1e-12 * scale) return;
    const Vec heights = centred.transpose() * normal;
    if (heights.maxCoeff() > offset + 1e-10 * scale) return;
    for (const auto& f : facets_) {
      if ((f.normal() - normal).norm() < 1e-9) return;
    }
    facets_.emplace_back(normal, offset);  // relative to center_
  });
  init_diameter();
}

double Polytope::support(const Vec& u) const { return (vertices_.transpose() * u).maxCoeff(); }

Vec Polytope::support_point(const Vec& u) const {
  Eigen::Index arg = 0;
  (vertices_.transpose() * u).maxCoeff(&arg);
  return vertices_.col(arg);
}

double Polytope::gauge(const Vec& x) const {
  const Vec d = x - center_;
  double g = 0;
  for (const auto& f : facets_) g = std::max(g, f.normal().dot(d) / f.offset());
  return g;
}

// ---------------------------------------------------------------------------------------------

AffineImage::AffineImage(Mat linear, Vec translation, BodyPtr inner, std::string name)
    : ConvexBody(std::move(name)), linear_(std::move(linear)), translation_(std::move(translation)), inner_(std::move(inner)) {
  if (!inner_) throw GeometryError(ErrorKind::InvalidArgument, "affine image needs an inner body");
  const auto n = inner_->dim();
  if (linear_.rows() != n || linear_.cols() != n || translation_.size() != n) {
    throw GeometryError(ErrorKind::InvalidArgument, "affine map does not match the body dimension");
  }
  const double scale = std::max(linear_.cwiseAbs().maxCoeff(), 1e-300);
  if (std::abs(linear_.determinant()) <= 1e-12 * std::pow(scale, static_cast<double>(n))) {
    throw GeometryError(ErrorKind::InvalidArgument, "affine map is singular");
  }
  lu_.compute(linear_);
  init_diameter();
}

double AffineImage::support(const Vec& u) const { return inner_->support(linear_.transpose() * u) + translation_.dot(u); }

Vec AffineImage::support_point(const Vec& u) const {
  return linear_ * inner_->support_point(linear_.transpose() * u) + translation_;
}

double AffineImage::gauge(const Vec& x) const { return inner_->gauge(lu_.solve(Vec(x - translation_))); }

Vec AffineImage::normal(const Vec& p) const {
  const Vec inner_normal = inner_->normal(lu_.solve(Vec(p - translation_)));
  return lu_.transpose().solve(inner_normal).normalized();
}

double AffineImage::ray_exit(const Vec& origin, const Vec& dir) const {
  return inner_->ray_exit(lu_.solve(Vec(origin - translation_)), lu_.solve(dir));
}

// ---------------------------------------------------------------------------------------------

BodyPtr make_ellipsoid(Vec center, Mat shape, std::string name) {
  return std::make_shared<Ellipsoid>(std::move(center), std::move(shape), std::move(name));
}

BodyPtr make_ball(Eigen::Index dim, double radius, Vec center, std::string name) {
  if (!(radius > 0)) throw GeometryError(ErrorKind::InvalidArgument, "ball radius must be positive");
  if (center.size() == 0) center = Vec::Zero(dim);
  Mat q = Mat::Identity(dim, dim) / (radius * radius);
  return make_ellipsoid(std::move(center), std::move(q), std::move(name));
}

BodyPtr make_pball(double exponent, Vec semi_axes, std::string name) {
  return std::make_shared<PBall>(exponent, std::move(semi_axes), std::move(name));
}

BodyPtr make_polytope(Mat vertices, std::string name) {
  return std::make_shared<Polytope>(std::move(vertices), std::move(name));
}

BodyPtr make_affine_image(Mat linear, Vec translation, BodyPtr inner, std::string name) {
  return std::make_shared<AffineImage>(std::move(linear), std::move(translation), std::move(inner), std::move(name));
}

BodyPtr scaled(const BodyPtr& body, double factor, std::string name) {
  const auto n = body->dim();
  return make_affine_image(factor * Mat::Identity(n, n), Vec::Zero(n), body, std::move(name));
}

// ---------------------------------------------------------------------------------------------

Vec support_point(const ConvexBody& body, const Vec& u) {
  require_dim(body, u, "support direction");
  if (std::abs(u.norm() - 1.0) > 1e-9) throw GeometryError(ErrorKind::InvalidArgument, "support direction must be a unit vector");
  return body.support_point(u);
}

std::pair<double, double> min_gauge_on_line(const ConvexBody& body, const Lined& line) {
  require_dim(body, line.point(), "line");
  const double t0 = line.parameter_of(body.center());
  const double diam = body.diameter();
  auto g = [&](double t) { return body.gauge(line.at(t)); };
  double half = 2.0 * diam + line.distance_to(body.center());
  const double g0 = g(t0);
  while (g(t0 - half) <= g0 || g(t0 + half) <= g0) half *= 2;
  // Golden-section search; the gauge is convex along the line.
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = t0 - half;
  double b = t0 + half;
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  double gc = g(c);
  double gd = g(d);
  while (b - a > 1e-13 * diam) {
    if (gc < gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - r * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + r * (b - a);
      gd = g(d);
    }
  }
  const double t = 0.5 * (a + b);
  return {g(t), t};
}

std::pair<Vec, Vec> line_boundary_points(const ConvexBody& body, const Lined& line) {
  const auto [gmin, tmin] = min_gauge_on_line(body, line);
  if (gmin >= 1.0) throw GeometryError(ErrorKind::LineMissesBody, "line does not meet the interior");
  const Vec m = line.at(tmin);
  const Vec& d = line.direction();
  return {m - body.ray_exit(m, -d) * d, m + body.ray_exit(m, d) * d};
}

double o_symmetry_residual(const ConvexBody& body, const Vec& center, Eigen::Index count, std::uint64_t seed) {
  require_dim(body, center, "centre");
  const Mat dirs = sphere_directions(body.dim(), count, seed);
  double worst = 0;
  for (Eigen::Index i = 0; i < dirs.cols(); ++i) {
    const Vec u = dirs.col(i);
    const double r = body.support(u) - body.support(-u) - 2.0 * center.dot(u);
    worst = std::max(worst, std::abs(r));
  }
  return worst / body.diameter();
}

bool is_o_symmetric(const ConvexBody& body, const Vec& center, double tol, Eigen::Index count, std::uint64_t seed) {
  return o_symmetry_residual(body, center, count, seed) <= tol;
}

Mat boundary_samples(const ConvexBody& body, Eigen::Index count, std::uint64_t seed) {
  const Mat dirs = sphere_directions(body.dim(), count, seed);
  Mat out(body.dim(), count);
  for (Eigen::Index i = 0; i < count; ++i) out.col(i) = body.boundary_point(dirs.col(i));
  return out;
}

OracleReport validate_oracles(const ConvexBody& body, Eigen::Index count, std::uint64_t seed) {
  OracleReport rep;
  const Mat dirs = sphere_directions(body.dim(), count, seed);
  const double diam = body.diameter();
  for (Eigen::Index i = 0; i < count; ++i) {
    const Vec u = dirs.col(i);
    const Vec v = dirs.col((i * 7 + 3) % count);
    const double hu = body.support(u);
    for (double t : {0.5, 3.0}) {
      rep.homogeneity = std::max(rep.homogeneity, std::abs(body.support(t * u) - t * hu) / (t * diam));
    }
    if ((u + v).norm() > 1e-6) {
      rep.subadditivity = std::max(rep.subadditivity, (body.support(u + v) - hu - body.support(v)) / diam);
    }
    rep.boundary = std::max(rep.boundary, std::abs(body.gauge(body.support_point(u)) - 1.0));
  }
  rep.samples = count;
  return rep;
}

double nesting_gap(const ConvexBody& inner, const ConvexBody& outer, Eigen::Index count, std::uint64_t seed) {
  if (inner.dim() != outer.dim()) throw GeometryError(ErrorKind::InvalidArgument, "bodies differ in dimension");
  const Mat dirs = sphere_directions(outer.dim(), count, seed);
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < count; ++i) {
    const Vec u = dirs.col(i);
    gap = std::min(gap, outer.support(u) - inner.support(u));
  }
  return gap / outer.diameter();
}

}  // namespace eforge
