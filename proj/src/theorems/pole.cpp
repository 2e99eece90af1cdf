#include "eforge/theorems/theorems.hpp"

#include "eforge/cones/cones.hpp"
#include "eforge/core/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace eforge {

std::string_view to_string(PoleClass c) {
  switch (c) {
    case PoleClass::ProjectiveCentre: return "projective centre";
    case PoleClass::HyperplaneOfSymmetry: return "projective hyperplane of symmetry";
    case PoleClass::NotAPole: return "not a pole";
  }
  return "unknown";
}

namespace {

// Distance between the graze from an exterior apex and the section of the boundary by its polar,
// compared half-plane by half-plane around the axis through the apex and the centre.
double graze_polar_agreement(const ConvexBody& body, const Vec& apex, const Hyperplaned& polar, Eigen::Index count,
                             std::uint64_t seed) {
  const Vec c = body.center();
  const Vec a = (apex - c).normalized();
  const Mat toward = orthonormal_complement<double>(a) * sphere_directions(body.dim() - 1, count, seed);
  const CurveSample g = graze_at(body, apex, toward);
  const Vec& n = polar.normal();
  const double an = a.dot(n);
  if (std::abs(an) < 1e-12) return std::numeric_limits<double>::infinity();
  const Vec x0 = c + ((polar.offset() - n.dot(c)) / an) * a;
  if (!(body.gauge(x0) < 1.0)) return std::numeric_limits<double>::infinity();
  double worst = 0;
  for (Eigen::Index j = 0; j < toward.cols(); ++j) {
    Vec w = toward.col(j) - toward.col(j).dot(a) * a;
    w.normalize();
    Vec t = w - (w.dot(n) / an) * a;
    t.normalize();
    const Vec z = x0 + body.ray_exit(x0, t) * t;
    worst = std::max(worst, (g.points.col(j) - z).norm());
  }
  return worst / body.diameter();
}

}  // namespace

PoleResult polar_of(const ConvexBody& body, const HPointd& o, Eigen::Index lines, double pole_tol,
                    std::uint64_t seed) {
  const Eigen::Index n = body.dim();
  if (o.dim() != n) throw GeometryError(ErrorKind::InvalidArgument, "pole has the wrong dimension");
  if (lines < n + 1) throw GeometryError(ErrorKind::InvalidArgument, "polar fit needs at least n+1 lines");
  const bool finite = !o.is_at_infinity();
  Vec x;
  bool interior = false;
  if (finite) {
    x = o.affine();
    const double g = body.gauge(x);
    if (std::abs(g - 1.0) <= 1e-9) throw GeometryError(ErrorKind::PointOnBoundary, "pole candidate lies on the boundary");
    interior = g < 1.0;
  }
  const Vec c = body.center();
  const Mat dirs = sphere_directions(n, lines, seed);

  struct Chord {
    HPointd a, b, second;
  };
  std::vector<Chord> chords;
  Mat rows(lines, n + 1);
  for (Eigen::Index i = 0; i < lines; ++i) {
    const Vec u = dirs.col(i);
    Vec point;
    Vec direction;
    if (interior) {
      point = x;
      direction = u;
    } else {
      const Vec target = c + 0.5 * body.ray_exit(c, u) * u;
      point = target;
      direction = finite ? Vec(target - x) : o.spatial();
    }
    const auto [a, b] = line_boundary_points(body, Lined(point, direction));
    const HPointd ha = HPointd::from_affine(a);
    const HPointd hb = HPointd::from_affine(b);
    const HPointd p = harmonic_conjugate(ha, hb, o);
    rows.row(i) = p.normalized().transpose();
    chords.push_back({ha, hb, finite ? HPointd::at_infinity(direction) : HPointd::from_affine(point)});
  }

  Eigen::JacobiSVD<Mat> svd(rows, Eigen::ComputeThinV);
  const Vec& s = svd.singularValues();
  if (s(n - 1) <= 1e-9 * s(0)) {
    throw GeometryError(ErrorKind::DegenerateLines, "harmonic points do not determine a hyperplane");
  }
  PoleResult out{o, ProjectiveHyperplaned(svd.matrixV().col(n)), 0.0, 0.0, 0.0, PoleClass::NotAPole, std::nullopt, 0};
  out.lines = lines;
  out.fit_residual = (rows * out.polar.coeffs()).cwiseAbs().maxCoeff();
  for (const Chord& ch : chords) {
    double r = 1.0;
    try {
      const HPointd meet = out.polar.meet(o, ch.second);
      r = std::abs(cross_ratio(ch.a, ch.b, o, meet) + 1.0);
    } catch (const GeometryError&) {
      r = 1.0;
    }
    out.cross_ratio_residual = std::max(out.cross_ratio_residual, r);
  }
  out.residual = std::max(out.cross_ratio_residual, out.fit_residual);
  if (out.residual > pole_tol) {
    out.classification = PoleClass::NotAPole;
  } else {
    out.classification = interior ? PoleClass::ProjectiveCentre : PoleClass::HyperplaneOfSymmetry;
  }
  if (finite && !interior && out.classification == PoleClass::HyperplaneOfSymmetry && body.is_smooth() &&
      !out.polar.is_at_infinity()) {
    out.graze_agreement = graze_polar_agreement(body, x, out.polar.affine(), std::max<Eigen::Index>(lines, 16), seed);
  }
  return out;
}

}  // namespace eforge
