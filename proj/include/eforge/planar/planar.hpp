#pragma once

#include "eforge/bodies/convex_body.hpp"

#include <cstdint>
#include <optional>

namespace eforge {

/// Planar figure Pi cap K seen as a two-dimensional convex body in an orthonormal chart of Pi.
///
/// The support function comes from duality, h(v) = min_t h_K(Bv + t n) - t b, with t found by
/// bisection on the side of the plane where the support point of K falls.
class SectionBody final : public ConvexBody {
 public:
  SectionBody(BodyPtr host, const Hyperplaned& plane, std::string name = {});

  BodyKind kind() const override { return BodyKind::Section; }
  Eigen::Index dim() const override { return 2; }
  double support(const Vec& v) const override;
  Vec support_point(const Vec& v) const override;
  double gauge(const Vec& y) const override;
  Vec center() const override { return center_; }
  bool is_smooth() const override { return host_->is_smooth(); }
  Vec normal(const Vec& y) const override;
  double ray_exit(const Vec& origin, const Vec& dir) const override;

  const BodyPtr& host() const { return host_; }
  const Hyperplaned& plane() const { return plane_; }
  const Chartd& chart() const { return chart_; }

 private:
  double dual_parameter(const Vec& direction) const;

  BodyPtr host_;
  Hyperplaned plane_;
  Chartd chart_;
  Vec center_;
};

/// A two-dimensional convex figure with the chart that places it in the host space.
/// Figures built directly from 2-D bodies use the identity chart.
struct PlanarSection {
  BodyPtr figure;                  // dimension 2
  Chartd chart;                    // origin + n x 2 basis
  std::optional<Hyperplaned> plane;  // set for sections of 3-D bodies

  Vec embed(const Vec& y) const { return chart.embed(y); }
  Vec to_chart(const Vec& x) const { return chart.to_chart(x); }
};

/// Section of a 3-D body by a hyperplane meeting its interior. Throws PlaneMissesBody otherwise.
PlanarSection section(const BodyPtr& body, const Hyperplaned& plane);

/// Wraps a 2-D body as a planar figure.
PlanarSection planar_figure(const BodyPtr& figure);

struct CentralSymmetry {
  bool symmetric{};
  Vec center;        // chart coordinates
  double residual{};  // max |h(u) - h(-u) - 2<c, u>| / diameter
};

/// Least-squares centre of h(u) - h(-u) = 2<c, u> over `count` directions.
CentralSymmetry central_symmetry(const PlanarSection& sec, double tol, Eigen::Index count = 512);

/// Whether the chord [a, b] (chart coordinates) has parallel supporting lines at both ends.
/// Smooth figures compare the normals at a and -b; otherwise the minimal support gap
/// h(u) + h(-u) - <a - b, u> over directions is compared with tol * diameter.
bool is_affine_diameter(const PlanarSection& sec, const Vec& a, const Vec& b, double tol,
                        double boundary_tol = 1e-10);

/// Angle between the outer normal at a and minus the outer normal at b (smooth figures), or the
/// minimal relative support gap (others).
double affine_diameter_defect(const PlanarSection& sec, const Vec& a, const Vec& b, double boundary_tol = 1e-10);

struct Conjugate {
  Vec c;                    // endpoints of the conjugate diameter, chart coordinates
  Vec e;
  double defect{};          // closure defect of the circumscribed parallelogram, radians
  double contact_residual{};  // max support-line contact residual over the four sides, relative
};

/// The affine diameter parallel to the supporting lines at a and b, and how far the supporting
/// lines at its ends are from being parallel to [a, b].
Conjugate find_conjugate(const PlanarSection& sec, const Vec& a, const Vec& b);

/// find_conjugate, throwing NotFound when the closure defect exceeds `tol`.
Conjugate conjugate_diameter(const PlanarSection& sec, const Vec& a, const Vec& b, double tol = 1e-7);

/// Norm of the figure about its fitted centre. Throws NotANorm if the figure is not centrally symmetric.
class SectionNorm {
 public:
  SectionNorm(const PlanarSection& sec, double symmetry_tol);
  double operator()(const Vec& v) const;
  const Vec& center() const { return center_; }

 private:
  BodyPtr figure_;
  Vec center_;
};

/// Birkhoff normality x -| y: min over |alpha| <= 10|x|/|y| of |x + alpha y| >= (1 - tol) |x|.
bool birkhoff_normal(const SectionNorm& norm, const Vec& x, const Vec& y, double tol = 1e-9);

/// Relative dip (|x| - min_alpha |x + alpha y|) / |x|, clipped at 0.
double birkhoff_dip(const SectionNorm& norm, const Vec& x, const Vec& y);

bool birkhoff_normal(const PlanarSection& sec, const Vec& x, const Vec& y, double symmetry_tol = 1e-6,
                     double tol = 1e-9);

struct RadonResult {
  bool radon{};
  double worst_defect{};       // conjugate closure defect, radians
  Vec witness;                 // unit direction of the worst diameter, chart coordinates
  double birkhoff_asymmetry{};  // max dip of y -| x over pairs with x -| y
  Vec birkhoff_witness;
  bool cross_check_agrees{};
  Eigen::Index diameters{};
};

/// Sweeps `diameters` diameters through the centre. Radon iff every one has a conjugate within
/// `conjugacy_tol`; the normality-symmetry scan is reported alongside as a cross-check.
RadonResult is_radon_curve(const PlanarSection& sec, Eigen::Index diameters = 128, double conjugacy_tol = 1e-7,
                           double symmetry_tol = 1e-6, double birkhoff_tol = 1e-9);

}  // namespace eforge
