#pragma once

#include "eforge/core/flats.hpp"
#include "eforge/core/types.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace eforge {

enum class BodyKind { Ellipsoid, PBall, Polytope, AffineImage, Section };

constexpr std::string_view to_string(BodyKind k) {
  switch (k) {
    case BodyKind::Ellipsoid: return "ellipsoid";
    case BodyKind::PBall: return "pball";
    case BodyKind::Polytope: return "polytope";
    case BodyKind::AffineImage: return "affine_image";
    case BodyKind::Section: return "section";
  }
  return "unknown";
}

/// A convex body seen only through its oracles.
///
/// The gauge is the Minkowski functional about `center()`, an interior reference point:
/// gauge(x) <= 1 iff x is in the body. Higher modules never branch on the concrete kind.
class ConvexBody {
 public:
  virtual ~ConvexBody() = default;

  virtual BodyKind kind() const = 0;
  virtual Eigen::Index dim() const = 0;

  /// h(u) = max over the body of <x, u>; any nonzero u.
  virtual double support(const Vec& u) const = 0;
  virtual Vec support_point(const Vec& u) const = 0;
  virtual double gauge(const Vec& x) const = 0;
  virtual Vec center() const = 0;

  /// Smooth boundary and strictly convex; required by grazes and shadow boundaries.
  virtual bool is_smooth() const = 0;

  /// Outer unit normal at a boundary point. Throws NonSmoothBody for polytopes.
  virtual Vec normal(const Vec& p) const;

  /// s > 0 with origin + s * dir on the boundary, for interior `origin`.
  virtual double ray_exit(const Vec& origin, const Vec& dir) const;

  double diameter() const { return diameter_; }
  const std::string& name() const { return name_; }
  std::string label() const { return name_.empty() ? std::string(to_string(kind())) : name_; }

  bool contains(const Vec& x, double tol = 0.0) const { return gauge(x) <= 1.0 + tol; }

  /// Boundary point on the ray from center() with direction `dir`.
  Vec boundary_point(const Vec& dir) const { return center() + dir / gauge(center() + dir); }

 protected:
  explicit ConvexBody(std::string name) : name_(std::move(name)) {}

  /// Must be called at the end of each concrete constructor; `count` = 0 picks a default sample size.
  void init_diameter(Eigen::Index count = 0);

 private:
  std::string name_;
  double diameter_{1.0};
};

using BodyPtr = std::shared_ptr<const ConvexBody>;

/// {x : (x - c)^T Q (x - c) <= 1}, Q symmetric positive definite.
class Ellipsoid final : public ConvexBody {
 public:
  Ellipsoid(Vec center, Mat shape, std::string name = {});

  BodyKind kind() const override { return BodyKind::Ellipsoid; }
  Eigen::Index dim() const override { return center_.size(); }
  double support(const Vec& u) const override;
  Vec support_point(const Vec& u) const override;
  double gauge(const Vec& x) const override;
  Vec center() const override { return center_; }
  bool is_smooth() const override { return true; }
  Vec normal(const Vec& p) const override;
  double ray_exit(const Vec& origin, const Vec& dir) const override;

  const Mat& shape() const { return shape_; }

 private:
  Vec center_;
  Mat shape_;
  Mat inverse_;
};

/// {x : sum |x_i / a_i|^p <= 1}, p in (1, inf).
class PBall final : public ConvexBody {
 public:
  PBall(double exponent, Vec semi_axes, std::string name = {});

  BodyKind kind() const override { return BodyKind::PBall; }
  Eigen::Index dim() const override { return axes_.size(); }
  double support(const Vec& u) const override;
  Vec support_point(const Vec& u) const override;
  double gauge(const Vec& x) const override;
  Vec center() const override { return Vec::Zero(axes_.size()); }
  bool is_smooth() const override { return true; }
  Vec normal(const Vec& p) const override;

  double exponent() const { return p_; }
  const Vec& semi_axes() const { return axes_; }

 private:
  double p_;
  double q_;  // conjugate exponent
  Vec axes_;
};

/// Convex hull of a vertex list; support-only, with facets derived for the gauge.
class Polytope final : public ConvexBody {
 public:
  explicit Polytope(Mat vertices, std::string name = {});

  BodyKind kind() const override { return BodyKind::Polytope; }
  Eigen::Index dim() const override { return vertices_.rows(); }
  double support(const Vec& u) const override;
  Vec support_point(const Vec& u) const override;
  double gauge(const Vec& x) const override;
  Vec center() const override { return center_; }
  bool is_smooth() const override { return false; }

  const Mat& vertices() const { return vertices_; }
  const std::vector<Hyperplaned>& facets() const { return facets_; }

 private:
  Mat vertices_;
  Vec center_;
  std::vector<Hyperplaned> facets_;
};

/// x -> linear * x + translation applied to an inner body.
class AffineImage final : public ConvexBody {
 public:
  AffineImage(Mat linear, Vec translation, BodyPtr inner, std::string name = {});

  BodyKind kind() const override { return BodyKind::AffineImage; }
  Eigen::Index dim() const override { return translation_.size(); }
  double support(const Vec& u) const override;
  Vec support_point(const Vec& u) const override;
  double gauge(const Vec& x) const override;
  Vec center() const override { return linear_ * inner_->center() + translation_; }
  bool is_smooth() const override { return inner_->is_smooth(); }
  Vec normal(const Vec& p) const override;
  double ray_exit(const Vec& origin, const Vec& dir) const override;

  const Mat& linear() const { return linear_; }
  const Vec& translation() const { return translation_; }
  const BodyPtr& inner() const { return inner_; }

 private:
  Mat linear_;
  Vec translation_;
  BodyPtr inner_;
  Eigen::PartialPivLU<Mat> lu_;
};

BodyPtr make_ellipsoid(Vec center, Mat shape, std::string name = {});
BodyPtr make_ball(Eigen::Index dim, double radius, Vec center = {}, std::string name = {});
BodyPtr make_pball(double exponent, Vec semi_axes, std::string name = {});
BodyPtr make_polytope(Mat vertices, std::string name = {});
BodyPtr make_affine_image(Mat linear, Vec translation, BodyPtr inner, std::string name = {});
/// Uniform scaling about the origin.
BodyPtr scaled(const BodyPtr& body, double factor, std::string name = {});

// ---------------------------------------------------------------------------------------------
// Operations

/// argmax of <x, u> over the body, u of unit length.
Vec support_point(const ConvexBody& body, const Vec& u);

/// Minimum of the gauge along a line and the parameter where it is attained.
std::pair<double, double> min_gauge_on_line(const ConvexBody& body, const Lined& line);

/// The two boundary points of a line through the interior, ordered by the line parameter.
std::pair<Vec, Vec> line_boundary_points(const ConvexBody& body, const Lined& line);

/// max over sampled u of |h_{K-c}(u) - h_{K-c}(-u)|, relative to the diameter.
double o_symmetry_residual(const ConvexBody& body, const Vec& center, Eigen::Index count = 512,
                           std::uint64_t seed = 0);

bool is_o_symmetric(const ConvexBody& body, const Vec& center, double tol, Eigen::Index count = 512,
                    std::uint64_t seed = 0);

/// Boundary samples along quasi-uniform directions from the reference centre (one per column).
Mat boundary_samples(const ConvexBody& body, Eigen::Index count, std::uint64_t seed = 0);

/// Sampled oracle consistency: homogeneity, subadditivity and boundary residuals.
struct OracleReport {
  double homogeneity{};    // max |h(t u) - t h(u)| / (t diam)
  double subadditivity{};  // max (h(u + v) - h(u) - h(v)) / diam, clipped at 0
  double boundary{};       // max |gauge(support_point(u)) - 1|
  Eigen::Index samples{};
};

OracleReport validate_oracles(const ConvexBody& body, Eigen::Index count = 256, std::uint64_t seed = 0);

/// L inside the interior of K by support comparison: min over sampled u of (h_K(u) - h_L(u)) / diam_K.
double nesting_gap(const ConvexBody& inner, const ConvexBody& outer, Eigen::Index count = 512,
                   std::uint64_t seed = 0);

}  // namespace eforge
