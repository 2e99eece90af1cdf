#pragma once

#include "eforge/bodies/convex_body.hpp"
#include "eforge/core/fit.hpp"

#include <cstdint>
#include <string>

namespace eforge {

/// Where a sampled curve came from.
struct CurveMeta {
  std::string source;  // "graze", "shadow_boundary", "cone_intersection"
  std::string body;
  Vec apex;            // graze apex, or the first cone apex
  Vec second_apex;     // cone_intersection only
  Vec direction;       // shadow_boundary only
  Eigen::Index samples{};
  std::uint64_t seed{};
};

/// Ordered points (one per column) with a per-point residual.
struct CurveSample {
  Mat points;
  Vec residuals;
  CurveMeta meta;

  Eigen::Index size() const { return points.cols(); }
  double max_residual() const { return residuals.size() == 0 ? 0.0 : residuals.maxCoeff(); }
};

/// Support cone C(L, x) represented by its contact curve and unit generators.
struct SupportCone {
  Vec apex;
  BodyPtr body;
  CurveSample contacts;
  Mat generators;  // unit apex-to-contact directions, one per column
};

/// Graze points of L seen from x, one per half-plane through x and the centroid of L.
/// Residual: |<x - p, nu(p)>| / |x - p|. Ordered by angle about the axis (n = 3).
CurveSample graze(const ConvexBody& body, const Vec& apex, Eigen::Index count, std::uint64_t seed = 0);

/// Graze points in prescribed half-planes: column j of `toward` picks the half-plane through the
/// apex and the centroid that contains centroid + toward_j.
CurveSample graze_at(const ConvexBody& body, const Vec& apex, const Mat& toward);

/// Points of bd K whose outer normal is orthogonal to u. Residual: |<nu(p), u>|.
CurveSample shadow_boundary(const ConvexBody& body, const Vec& direction, Eigen::Index count,
                            std::uint64_t seed = 0);

/// S(L, x) cap S(L, y) for apexes on opposite sides of L along a line through its interior.
/// One point per half-plane bounded by l(x, y), as the meet of the tangent lines from x and y.
/// Residual: the larger tangency residual of the two contact points.
CurveSample cone_intersection(const ConvexBody& body, const Vec& x, const Vec& y, Eigen::Index count,
                              std::uint64_t seed = 0);

CurveSample cone_intersection_at(const ConvexBody& body, const Vec& x, const Vec& y, const Mat& toward);

SupportCone support_cone(const BodyPtr& body, const Vec& apex, Eigen::Index count = 64, std::uint64_t seed = 0);

/// Minimum gauge of L on the ray from the apex through z: <= 1 iff z lies in C(L, apex).
double cone_gauge(const ConvexBody& body, const Vec& apex, const Vec& z);

/// Conic (n = 3) or quadric fit of the section orthogonal to the mean generator at unit distance
/// from the apex, re-tested on three seeded tilted bounded sections. The returned residuals are the
/// maxima over all four sections; `accepted` needs every section to be an ellipse within tolerance.
FitResultd is_ellipsoidal_cone(const SupportCone& cone, double tolerance = 1e-6, std::uint64_t seed = 0);

/// Hyperplane through the point where `ray` meets a bounded section, chosen so that the section of
/// the cone is centred on the ray.
Hyperplaned centered_section(const SupportCone& cone, const Lined& ray, double tolerance = 1e-6);

/// Max over chords of the cone section by `plane` through `center` of |midpoint - center|, relative
/// to the body diameter. Chords follow `count` quasi-uniform in-plane directions.
double section_center_defect(const SupportCone& cone, const Hyperplaned& plane, const Vec& center,
                             Eigen::Index count = 50, std::uint64_t seed = 0);

struct ConeSymmetry {
  bool symmetric{};
  double residual{};  // max |angle(left, axis) - angle(axis, right)|, radians
  Eigen::Index planes{};
};

/// Whether the axis bisects the two boundary rays of the cone in `planes` 2-planes containing it.
ConeSymmetry is_symmetric_cone(const SupportCone& cone, const Lined& axis, Eigen::Index planes = 64,
                               double tolerance = 1e-7);

/// The two hyperplanes through l(x1, x2) supporting L (n = 3), found by rotation about the line.
struct CommonSupport {
  Vec normal_a;
  Vec normal_b;
  Vec a;  // contact points
  Vec b;
};

CommonSupport common_supporting_planes(const ConvexBody& body, const Vec& x1, const Vec& x2);

}  // namespace eforge
