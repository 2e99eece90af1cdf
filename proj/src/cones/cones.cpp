#include "eforge/cones/cones.hpp"

#include "eforge/core/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace eforge {

namespace {

constexpr double kPi = std::numbers::pi;

void require_dim(const ConvexBody& body, const Vec& v, const char* what) {
  if (v.size() != body.dim()) {
    throw GeometryError(ErrorKind::InvalidArgument, std::string(what) + " has the wrong dimension");
  }
}

void require_smooth(const ConvexBody& body) {
  if (!body.is_smooth()) {
    throw GeometryError(ErrorKind::NonSmoothBody, "operation needs a smooth strictly convex body");
  }
}

void require_outside(const ConvexBody& body, const Vec& apex) {
  if (!(body.gauge(apex) > 1.0 + 1e-9)) throw GeometryError(ErrorKind::ApexInsideBody, "apex is not outside the body");
}

struct Contact {
  Vec point;
  double phi{};
};

// Apex in homogeneous form: a finite point (weight 1) or a direction at infinity (weight 0).
struct Apex {
  Vec coords;
  double weight{};
};

// Walks the boundary curve b(phi) = m + r(phi) (cos(phi) a + sin(phi) w), phi in [0, pi], and
// returns the point where the supporting hyperplane passes through the apex. The apex must lie on
// the ray from m along a, so the sign of <apex - weight b, nu(b)> changes once on the half-curve.
Contact half_plane_contact(const ConvexBody& body, const Vec& m, const Vec& a, const Vec& w, const Apex& apex) {
  auto point = [&](double phi) {
    const Vec dir = std::cos(phi) * a + std::sin(phi) * w;
    return Vec(m + body.ray_exit(m, dir) * dir);
  };
  auto f = [&](const Vec& b) { return (apex.coords - apex.weight * b).dot(body.normal(b)); };
  double lo = 0.0;
  double hi = kPi;
  if (!(f(point(lo)) > 0) || !(f(point(hi)) < 0)) {
    throw GeometryError(ErrorKind::SearchFailed, "no tangency sign change in the half-plane");
  }
  while (hi - lo > 1e-15) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(point(mid)) > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double phi = 0.5 * (lo + hi);
  return {point(phi), phi};
}

double tangency_residual(const ConvexBody& body, const Vec& apex, const Vec& p) {
  const Vec d = apex - p;
  return std::abs(d.dot(body.normal(p))) / d.norm();
}

// Unit vector of `t` orthogonal to the unit vector `a`.
Vec transverse(const Vec& t, const Vec& a) {
  Vec w = t - t.dot(a) * a;
  const double len = w.norm();
  if (!(len > 1e-12 * std::max(1.0, t.norm()))) {
    throw GeometryError(ErrorKind::InvalidArgument, "half-plane direction is parallel to the axis");
  }
  return w / len;
}

// Quasi-uniform directions orthogonal to `a`; for n = 2 the two normals.
Mat transverse_directions(const Vec& a, Eigen::Index count, std::uint64_t seed) {
  const Mat basis = orthonormal_complement<double>(a);
  if (a.size() == 2) {
    Mat out(2, 2);
    out << basis.col(0), -basis.col(0);
    return out;
  }
  return basis * sphere_directions(a.size() - 1, count, seed);
}

FitResultd section_fit(const SupportCone& cone, const Vec& normal, double tolerance) {
  const Vec dots = cone.generators.transpose() * normal;
  if (!(dots.minCoeff() > 1e-6)) {
    throw GeometryError(ErrorKind::DegenerateCone, "section hyperplane is not bounded on the cone");
  }
  Mat q(cone.apex.size(), cone.generators.cols());
  for (Eigen::Index i = 0; i < q.cols(); ++i) q.col(i) = cone.apex + cone.generators.col(i) / dots(i);
  const auto plane = Hyperplaned::through(cone.apex + normal, normal);
  try {
    return fit_planar_conic<double>(q, plane, tolerance);
  } catch (const GeometryError& e) {
    if (e.kind() == ErrorKind::DegenerateCloud) throw GeometryError(ErrorKind::DegenerateCone, e.what());
    throw;
  }
}

Vec mean_generator(const SupportCone& cone) {
  const Vec mean = cone.generators.rowwise().mean();
  if (!(mean.norm() > 1e-9)) throw GeometryError(ErrorKind::DegenerateCone, "generators have no mean direction");
  return mean.normalized();
}

}  // namespace

// ---------------------------------------------------------------------------------------------

CurveSample graze_at(const ConvexBody& body, const Vec& apex, const Mat& toward) {
  require_dim(body, apex, "apex");
  require_smooth(body);
  require_outside(body, apex);
  const Vec m = body.center();
  const Vec a = (apex - m).normalized();
  CurveSample out;
  out.points.resize(body.dim(), toward.cols());
  out.residuals.resize(toward.cols());
  for (Eigen::Index j = 0; j < toward.cols(); ++j) {
    const Contact c = half_plane_contact(body, m, a, transverse(toward.col(j), a), {apex, 1.0});
    out.points.col(j) = c.point;
    out.residuals(j) = tangency_residual(body, apex, c.point);
  }
  out.meta.source = "graze";
  out.meta.body = body.label();
  out.meta.apex = apex;
  out.meta.samples = toward.cols();
  return out;
}

CurveSample graze(const ConvexBody& body, const Vec& apex, Eigen::Index count, std::uint64_t seed) {
  require_dim(body, apex, "apex");
  const Vec a = (apex - body.center()).normalized();
  CurveSample out = graze_at(body, apex, transverse_directions(a, count, seed));
  out.meta.seed = seed;
  return out;
}

CurveSample shadow_boundary(const ConvexBody& body, const Vec& direction, Eigen::Index count, std::uint64_t seed) {
  require_dim(body, direction, "direction");
  require_smooth(body);
  if (!(direction.norm() > 0)) throw GeometryError(ErrorKind::InvalidArgument, "direction must be nonzero");
  const Vec u = direction.normalized();
  const Vec m = body.center();
  const Mat toward = transverse_directions(u, count, seed);
  CurveSample out;
  out.points.resize(body.dim(), toward.cols());
  out.residuals.resize(toward.cols());
  for (Eigen::Index j = 0; j < toward.cols(); ++j) {
    const Contact c = half_plane_contact(body, m, u, transverse(toward.col(j), u), {u, 0.0});
    out.points.col(j) = c.point;
    out.residuals(j) = std::abs(body.normal(c.point).dot(u));
  }
  out.meta.source = "shadow_boundary";
  out.meta.body = body.label();
  out.meta.direction = u;
  out.meta.samples = toward.cols();
  out.meta.seed = seed;
  return out;
}

CurveSample cone_intersection_at(const ConvexBody& body, const Vec& x, const Vec& y, const Mat& toward) {
  require_dim(body, x, "apex");
  require_dim(body, y, "apex");
  if ((x - y).norm() <= 1e-12 * body.diameter()) throw GeometryError(ErrorKind::CoincidentApexes, "x = y");
  require_smooth(body);
  require_outside(body, x);
  require_outside(body, y);
  const Lined line = Lined::through(y, x);
  const auto [gmin, tmin] = min_gauge_on_line(body, line);
  if (!(gmin < 1.0)) throw GeometryError(ErrorKind::ApexLineMissesBody, "line through the apexes misses the interior");
  const double tx = line.parameter_of(x);
  if (!(tx > tmin && 0.0 < tmin)) {
    throw GeometryError(ErrorKind::LineMeetsBody, "apexes lie on the same side of the body along their line");
  }
  const Vec m = line.at(tmin);
  const Vec a = line.direction();

  CurveSample out;
  out.points.resize(body.dim(), toward.cols());
  out.residuals.resize(toward.cols());
  for (Eigen::Index j = 0; j < toward.cols(); ++j) {
    const Vec w = transverse(toward.col(j), a);
    const Vec bx = half_plane_contact(body, m, a, w, {x, 1.0}).point;
    const Vec by = half_plane_contact(body, m, Vec(-a), w, {y, 1.0}).point;
    // Meet of x + s (bx - x) and y + t (by - y) in the (a, w) plane.
    Eigen::Matrix2d sys;
    const Vec dx = bx - x;
    const Vec dy = by - y;
    sys << dx.dot(a), -dy.dot(a), dx.dot(w), -dy.dot(w);
    const Eigen::Vector2d rhs((y - x).dot(a), (y - x).dot(w));
    if (std::abs(sys.determinant()) <= 1e-14 * dx.norm() * dy.norm()) {
      throw GeometryError(ErrorKind::SearchFailed, "tangent lines are parallel");
    }
    const Eigen::Vector2d st = sys.partialPivLu().solve(rhs);
    out.points.col(j) = x + st(0) * dx;
    out.residuals(j) = std::max(tangency_residual(body, x, bx), tangency_residual(body, y, by));
  }
  out.meta.source = "cone_intersection";
  out.meta.body = body.label();
  out.meta.apex = x;
  out.meta.second_apex = y;
  out.meta.samples = toward.cols();
  return out;
}

CurveSample cone_intersection(const ConvexBody& body, const Vec& x, const Vec& y, Eigen::Index count,
                              std::uint64_t seed) {
  require_dim(body, x, "apex");
  require_dim(body, y, "apex");
  if ((x - y).norm() <= 1e-12 * body.diameter()) throw GeometryError(ErrorKind::CoincidentApexes, "x = y");
  const Vec a = (x - y).normalized();
  CurveSample out = cone_intersection_at(body, x, y, transverse_directions(a, count, seed));
  out.meta.seed = seed;
  return out;
}

SupportCone support_cone(const BodyPtr& body, const Vec& apex, Eigen::Index count, std::uint64_t seed) {
  SupportCone cone;
  cone.apex = apex;
  cone.body = body;
  cone.contacts = graze(*body, apex, count, seed);
  cone.generators = (cone.contacts.points.colwise() - apex).colwise().normalized();
  return cone;
}

double cone_gauge(const ConvexBody& body, const Vec& apex, const Vec& z) {
  if ((z - apex).norm() == 0) return body.gauge(apex);
  const Lined line(apex, z - apex);
  const auto [g, t] = min_gauge_on_line(body, line);
  return t >= 0 ? g : body.gauge(apex);
}

FitResultd is_ellipsoidal_cone(const SupportCone& cone, double tolerance, std::uint64_t seed) {
  const auto n = cone.apex.size();
  if (n < 3) throw GeometryError(ErrorKind::DegenerateCone, "cone sections need n >= 3");
  const Vec g = mean_generator(cone);
  FitResultd out = section_fit(cone, g, tolerance);

  std::mt19937_64 rng(seed ^ 0x5eedc0de5eedc0deULL);
  std::normal_distribution<double> gauss;
  const Mat basis = orthonormal_complement<double>(g);
  for (int k = 0; k < 3; ++k) {
    Vec r(n - 1);
    for (Eigen::Index i = 0; i < n - 1; ++i) r(i) = gauss(rng);
    const Vec tilt_dir = basis * r.normalized();
    double tilt = 0.25;
    Vec normal = (g + tilt * tilt_dir).normalized();
    while ((cone.generators.transpose() * normal).minCoeff() < 0.05 && tilt > 1e-3) {
      tilt *= 0.5;
      normal = (g + tilt * tilt_dir).normalized();
    }
    const FitResultd alt = section_fit(cone, normal, tolerance);
    out.rms_residual = std::max(out.rms_residual, alt.rms_residual);
    out.max_residual = std::max(out.max_residual, alt.max_residual);
    out.accepted = out.accepted && alt.accepted;
    if (out.classification == Classification::Ellipse && alt.classification != Classification::Ellipse) {
      out.classification = alt.classification;
    }
  }
  out.accepted = out.accepted && out.classification == Classification::Ellipse && out.rms_residual < tolerance;
  return out;
}

Hyperplaned centered_section(const SupportCone& cone, const Lined& ray, double tolerance) {
  const Vec& x = cone.apex;
  const ConvexBody& body = *cone.body;
  if (ray.distance_to(x) > 1e-9 * body.diameter()) {
    throw GeometryError(ErrorKind::InvalidArgument, "ray must pass through the apex");
  }
  const Vec d = ray.direction();
  if (!(cone_gauge(body, x, x + d) < 1.0)) throw GeometryError(ErrorKind::RayNotInterior, "ray is not interior to the cone");
  if (!is_ellipsoidal_cone(cone, tolerance).accepted) {
    throw GeometryError(ErrorKind::NotEllipsoidal, "cone is not ellipsoidal within tolerance");
  }
  const Vec g = mean_generator(cone);
  const FitResultd fit = section_fit(cone, g, tolerance);
  const double dg = d.dot(g);
  if (!(dg > 0)) throw GeometryError(ErrorKind::RayNotInterior, "ray does not meet the bounded section");
  const Vec p = x + d / dg;
  const Mat& basis = fit.frame;
  const Vec pc = basis.transpose() * (p - fit.center);
  if (!(pc.dot(fit.shape * pc) < 1.0)) throw GeometryError(ErrorKind::RayNotInterior, "ray misses the section ellipse");

  // Polar of p with respect to the section ellipse: {Y : lambda . Y = 1} in centred chart coordinates.
  const Vec lambda = fit.shape * pc;
  if (lambda.norm() <= 1e-12 * fit.shape.norm() * std::max(pc.norm(), 1e-300) || lambda.norm() == 0) {
    return Hyperplaned::through(p, g);
  }
  const Vec z0 = fit.center + basis * (lambda / lambda.squaredNorm());
  const Vec head = basis * lambda;
  const double gamma = -head.dot(z0 - x) / g.dot(z0 - x);
  return Hyperplaned::through(p, Vec(head + gamma * g));
}

double section_center_defect(const SupportCone& cone, const Hyperplaned& plane, const Vec& center, Eigen::Index count,
                             std::uint64_t seed) {
  const ConvexBody& body = *cone.body;
  const double diam = body.diameter();
  const Mat basis = orthonormal_complement<double>(plane.normal());
  const Mat dirs = basis * sphere_directions(basis.cols(), count, seed);
  auto inside = [&](const Vec& z) { return cone_gauge(body, cone.apex, z) <= 1.0; };
  if (!inside(center)) throw GeometryError(ErrorKind::RayNotInterior, "centre is outside the cone");
  auto exit = [&](const Vec& v) {
    double lo = 0.0;
    double hi = diam;
    while (inside(center + hi * v)) {
      lo = hi;
      hi *= 2;
      if (hi > 1e6 * diam) throw GeometryError(ErrorKind::NotFound, "cone section is unbounded");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (inside(center + mid * v)) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
  };
  double worst = 0;
  for (Eigen::Index i = 0; i < dirs.cols(); ++i) {
    const Vec v = dirs.col(i);
    worst = std::max(worst, 0.5 * std::abs(exit(v) - exit(-v)));
  }
  return worst / diam;
}

ConeSymmetry is_symmetric_cone(const SupportCone& cone, const Lined& axis, Eigen::Index planes, double tolerance) {
  const ConvexBody& body = *cone.body;
  const Vec& x = cone.apex;
  if (axis.distance_to(x) > 1e-9 * body.diameter()) {
    throw GeometryError(ErrorKind::InvalidArgument, "axis must pass through the apex");
  }
  require_smooth(body);
  const Vec d = axis.direction();
  const Lined ray(x, d);
  const auto [gmin, tmin] = min_gauge_on_line(body, ray);
  if (!(gmin < 1.0 && tmin > 0)) throw GeometryError(ErrorKind::RayNotInterior, "axis is not interior to the cone");
  const Vec m = ray.at(tmin);
  const Vec a = -d;
  const Mat basis = orthonormal_complement<double>(d);
  Mat toward;
  if (x.size() == 3) {
    toward.resize(3, planes);
    for (Eigen::Index j = 0; j < planes; ++j) {
      const double t = kPi * static_cast<double>(j) / static_cast<double>(planes);
      toward.col(j) = std::cos(t) * basis.col(0) + std::sin(t) * basis.col(1);
    }
  } else {
    toward = transverse_directions(d, planes, 0);
  }
  auto angle_to_axis = [&](const Vec& p) {
    const Vec g = p - x;
    const double along = g.dot(d);
    return std::atan2((g - along * d).norm(), along);
  };
  ConeSymmetry out;
  for (Eigen::Index j = 0; j < toward.cols(); ++j) {
    const Vec w = transverse(toward.col(j), a);
    const Vec left = half_plane_contact(body, m, a, w, {x, 1.0}).point;
    const Vec right = half_plane_contact(body, m, a, Vec(-w), {x, 1.0}).point;
    out.residual = std::max(out.residual, std::abs(angle_to_axis(left) - angle_to_axis(right)));
  }
  out.planes = toward.cols();
  out.symmetric = out.residual <= tolerance;
  return out;
}

CommonSupport common_supporting_planes(const ConvexBody& body, const Vec& x1, const Vec& x2) {
  require_dim(body, x1, "apex");
  require_dim(body, x2, "apex");
  if (body.dim() != 3) throw GeometryError(ErrorKind::InvalidArgument, "common supporting planes need n = 3");
  if ((x1 - x2).norm() <= 1e-12 * body.diameter()) throw GeometryError(ErrorKind::CoincidentApexes, "x1 = x2");
  const Lined line = Lined::through(x1, x2);
  if (min_gauge_on_line(body, line).first <= 1.0) {
    throw GeometryError(ErrorKind::LineMeetsBody, "line through the apexes meets the body");
  }
  const Mat basis = orthonormal_complement<double>(line.direction());
  auto normal = [&](double t) { return Vec(std::cos(t) * basis.col(0) + std::sin(t) * basis.col(1)); };
  auto s = [&](double t) {
    const Vec nu = normal(t);
    return body.support(nu) - x1.dot(nu);
  };
  constexpr int kSamples = 4096;
  std::vector<double> roots;
  double prev = s(0.0);
  for (int i = 1; i <= kSamples; ++i) {
    const double t1 = 2 * kPi * static_cast<double>(i) / kSamples;
    const double cur = s(t1);
    if ((prev < 0) != (cur < 0)) {
      double lo = 2 * kPi * static_cast<double>(i - 1) / kSamples;
      double hi = t1;
      const bool lo_neg = prev < 0;
      for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((s(mid) < 0) == lo_neg) lo = mid; else hi = mid;
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev = cur;
  }
  if (roots.size() != 2) throw GeometryError(ErrorKind::SearchFailed, "expected two supporting planes through the line");
  CommonSupport out;
  out.normal_a = normal(roots[0]);
  out.normal_b = normal(roots[1]);
  out.a = body.support_point(out.normal_a);
  out.b = body.support_point(out.normal_b);
  return out;
}

}  // namespace eforge
