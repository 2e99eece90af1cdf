#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace eforge {

/// Every numeric gate used by a verdict. All of them are echoed into reports.
struct Tolerances {
  double collinearity = 1e-9;     // projective collinearity, relative singular value
  double boundary = 1e-10;        // |gauge - 1| for points claimed on a boundary
  double tangency = 1e-8;         // |<x - p, nu(p)>| / |x - p|
  double planarity = 1e-6;        // relative rms of a hyperplane fit
  double ellipse = 1e-6;          // normalized algebraic rms of a conic/quadric fit
  double symmetry = 1e-6;         // central-symmetry residual relative to diameter
  double pole = 1e-6;             // max |cross ratio + 1| and harmonic-cloud planarity
  double hausdorff = 1e-6;        // curve agreement relative to diameter
  double margin = 1e-6;           // strict containment, relative to diameter
  double angle = 1e-6;            // parallelism of lines and planes, radians
  double affine_diameter = 1e-7;  // antiparallel normals at chord ends, radians
  double conjugacy = 1e-7;        // conjugate-diameter closure defect, radians
  double contact = 1e-8;          // supporting-line contact residual, relative
  double birkhoff = 1e-9;         // relative dip allowed in the normality scan
  double bisector = 1e-7;         // symmetric-cone bisector residual, radians
  double relation = 1e-6;         // cone-intersection vs section defect, relative
  double concentric = 1e-7;       // centre distance relative to diameter
  double homothetic = 1e-6;       // distance of normalized shape matrices
  double claim = 1e-7;            // |<phi(v), u>| / |phi(v)|

  /// Named profiles: "default", "strict" (gates x0.1), "loose" (gates x10).
  static Tolerances profile(std::string_view name);

  /// Profile named by ELLIPSOID_FORGE_PROFILE, or "default" when unset.
  static Tolerances from_environment();

  /// Sets one gate by name; throws GeometryError(InvalidArgument) for unknown names.
  void set(std::string_view name, double value);

  double get(std::string_view name) const;

  /// (name, value) for every gate, in declaration order.
  std::vector<std::pair<std::string, double>> items() const;

  Tolerances scaled(double factor) const;
};

}  // namespace eforge
