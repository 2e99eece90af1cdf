#pragma once

#include "eforge/bodies/convex_body.hpp"
#include "eforge/core/projective.hpp"
#include "eforge/core/tolerances.hpp"
#include "eforge/theorems/report.hpp"

#include <cstdint>
#include <optional>

namespace eforge {

enum class PoleClass { ProjectiveCentre, HyperplaneOfSymmetry, NotAPole };

std::string_view to_string(PoleClass c);

struct PoleResult {
  HPointd pole;
  ProjectiveHyperplaned polar;
  double cross_ratio_residual{};  // max |[A, B; o, l cap H] + 1| over the sampled lines
  double fit_residual{};          // max algebraic residual of the harmonic points on H
  double residual{};              // max of the two
  PoleClass classification{PoleClass::NotAPole};
  std::optional<double> graze_agreement;  // exterior poles of smooth bodies: |polar cap bd L vs graze| / diam
  Eigen::Index lines{};
};

/// Harmonic conjugates of `o` on `lines` chords through it, and the projective hyperplane that best
/// contains them (possibly the hyperplane at infinity). `o` may be interior, exterior or at
/// infinity but not on the boundary.
PoleResult polar_of(const ConvexBody& body, const HPointd& o, Eigen::Index lines = 64, double pole_tol = 1e-6,
                    std::uint64_t seed = 0);

struct CheckConfig {
  Tolerances tol;
  Eigen::Index apex_samples = 32;
  Eigen::Index curve_samples = 64;
  Eigen::Index plane_samples = 16;
  std::uint64_t seed = 0;
  Vec origin;  // the point playing the role of O; empty means the coordinate origin
};

/// Cones of the inner body from apexes on the outer boundary are ellipsoidal => inner body is an ellipsoid.
CheckReport check_theorem1(const BodyPtr& inner, const BodyPtr& outer, const CheckConfig& cfg = {});

/// Cone-intersection relation with partners on lines through p => concentric homothetic ellipsoids.
CheckReport check_theorem2(const BodyPtr& inner, const BodyPtr& outer, const Vec& p, const CheckConfig& cfg = {});

/// Outer boundary points are poles of the inner body and the double-cone curves stay inside => ellipsoid.
CheckReport check_theorem3(const BodyPtr& inner, const BodyPtr& outer, const CheckConfig& cfg = {});

/// Centrally symmetric sections in slabs about every plane through p => ellipsoid.
CheckReport check_theorem_basico(const BodyPtr& body, const Vec& p, double slab_width, const CheckConfig& cfg = {});

/// Elliptic sections by planes tangent to a centred ball, with the ball inside each two-section hull => ellipsoid.
CheckReport check_theorem4(const BodyPtr& body, double ball_radius, const CheckConfig& cfg = {});

/// Every central planar section is a Radon curve => ellipsoid (n = 3).
CheckReport check_theorem_radon(const BodyPtr& body, const CheckConfig& cfg = {});

/// Pole/polar report for a single point.
CheckReport check_pole(const BodyPtr& body, const HPointd& o, const CheckConfig& cfg = {});

}  // namespace eforge
