#include "eforge/bodies/body_io.hpp"
#include "eforge/bodies/convex_body.hpp"
#include "eforge/core/sampling.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

using namespace eforge;

namespace {

Vec v3(double a, double b, double c) { return (Vec(3) << a, b, c).finished(); }

std::vector<BodyPtr> menu() {
  const Mat a = random_well_conditioned(3, 21);
  return {
      make_ball(3, 1.0),
      make_ellipsoid(v3(0.3, -0.2, 0.1), Vec(v3(1, 0.25, 1.0 / 9)).asDiagonal()),
      make_pball(4.0, v3(1, 1, 1)),
      make_pball(1.5, v3(1, 2, 0.5)),
      make_polytope((Mat(3, 4) << 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1).finished()),
      make_affine_image(a, v3(1, -2, 0.5), make_pball(3.0, v3(1, 1, 1))),
  };
}

// argmax of <x, u> over boundary samples, refined by a shrinking pattern search over directions.
double dense_support(const ConvexBody& body, const Vec& u) {
  const Mat samples = boundary_samples(body, 10000, 0);
  Eigen::Index arg = 0;
  double best = (samples.transpose() * u).maxCoeff(&arg);
  Vec dir = samples.col(arg) - body.center();
  double step = 0.05 * dir.norm();
  const Mat basis = Mat::Identity(3, 3);
  while (step > 1e-12 * dir.norm()) {
    bool improved = false;
    for (int i = 0; i < 3; ++i) {
      for (double s : {step, -step}) {
        const Vec trial = dir + s * basis.col(i);
        const double val = body.boundary_point(trial).dot(u);
        if (val > best) {
          best = val;
          dir = trial;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

}  // namespace

TEST(SupportPoint, UnitBallAlongAxis) {
  const auto ball = make_ball(3, 1.0);
  EXPECT_LT((support_point(*ball, v3(1, 0, 0)) - v3(1, 0, 0)).norm(), 1e-15);
}

TEST(SupportPoint, EllipsoidClosedForm) {
  const auto e = make_ellipsoid(Vec::Zero(3), Vec(v3(1, 0.25, 1.0 / 9)).asDiagonal());
  EXPECT_LT((support_point(*e, v3(0, 1, 0)) - v3(0, 2, 0)).norm(), 1e-15);
}

TEST(SupportPoint, L4BallDiagonal) {
  const auto l4 = make_pball(4.0, v3(1, 1, 1));
  const Vec u = v3(1, 1, 0) / std::sqrt(2.0);
  const Vec p = support_point(*l4, u);
  const double t = std::pow(2.0, -0.25);
  EXPECT_LT((p - v3(t, t, 0)).norm(), 1e-14);
  EXPECT_NEAR(dense_support(*l4, u), p.dot(u), 1e-9);
}

TEST(SupportPoint, RejectsNonUnitDirection) {
  const auto ball = make_ball(3, 1.0);
  EXPECT_THROW(support_point(*ball, v3(2, 0, 0)), GeometryError);
}

TEST(SupportPoint, AgreesWithDenseArgmaxForEveryKind) {
  const Mat dirs = sphere_directions(3, 12, 4);
  for (const auto& body : menu()) {
    for (Eigen::Index i = 0; i < dirs.cols(); ++i) {
      const Vec u = dirs.col(i);
      const double h = body->support(u);
      const double dense = dense_support(*body, u);
      EXPECT_LT(std::abs(h - dense), 1e-6 * body->diameter()) << body->label() << " direction " << i;
      EXPECT_NEAR(body->support_point(u).dot(u), h, 1e-12 * body->diameter());
    }
  }
}

TEST(Oracles, HomogeneousSubadditiveAndOnBoundary) {
  for (const auto& body : menu()) {
    const auto rep = validate_oracles(*body, 256, 2);
    EXPECT_LT(rep.homogeneity, 1e-9) << body->label();
    EXPECT_LT(rep.subadditivity, 1e-9) << body->label();
    EXPECT_LT(rep.boundary, 1e-10) << body->label();
  }
}

TEST(Oracles, AffinePushforwardIdentity) {
  const Mat a = random_well_conditioned(3, 8);
  const auto inner = make_pball(4.0, v3(1, 2, 1));
  const auto img = make_affine_image(a, v3(0.5, 0, -1), inner);
  const Mat dirs = sphere_directions(3, 200, 1);
  for (Eigen::Index i = 0; i < dirs.cols(); ++i) {
    const Vec u = dirs.col(i);
    const Vec w = a.transpose() * u;
    const Vec sp = a * support_point(*inner, w.normalized()) + v3(0.5, 0, -1);
    EXPECT_NEAR(img->support(u), sp.dot(u), 1e-10);
  }
}

TEST(Oracles, QuadraticPBallIsTheBall) {
  const auto p2 = make_pball(2.0, v3(1.5, 1.5, 1.5));
  const auto ball = make_ball(3, 1.5);
  const Mat dirs = sphere_directions(3, 300, 6);
  for (Eigen::Index i = 0; i < dirs.cols(); ++i) {
    const Vec u = dirs.col(i);
    EXPECT_NEAR(p2->support(u), ball->support(u), 1e-12);
    EXPECT_LT((p2->support_point(u) - ball->support_point(u)).norm(), 1e-12);
    EXPECT_NEAR(p2->gauge(0.7 * u), ball->gauge(0.7 * u), 1e-12);
    EXPECT_LT((p2->normal(1.5 * u) - ball->normal(1.5 * u)).norm(), 1e-12);
  }
}

TEST(Oracles, NormalsMatchSupportDirections) {
  const Mat dirs = sphere_directions(3, 50, 3);
  for (const auto& body : menu()) {
    if (!body->is_smooth()) {
      EXPECT_THROW(body->normal(body->support_point(dirs.col(0))), GeometryError);
      continue;
    }
    for (Eigen::Index i = 0; i < dirs.cols(); ++i) {
      const Vec u = dirs.col(i);
      EXPECT_LT((body->normal(body->support_point(u)) - u).norm(), 1e-9) << body->label();
    }
  }
}

TEST(Oracles, RayExitLandsOnBoundary) {
  const Mat dirs = sphere_directions(3, 40, 9);
  for (const auto& body : menu()) {
    const Vec origin = body->center() + 0.1 * body->diameter() * dirs.col(0).cwiseProduct(v3(0.2, 0.1, 0.3));
    for (Eigen::Index i = 0; i < dirs.cols(); ++i) {
      const double s = body->ray_exit(origin, dirs.col(i));
      EXPECT_NEAR(body->gauge(origin + s * dirs.col(i)), 1.0, 1e-12) << body->label();
    }
  }
}

TEST(LineBoundaryPoints, UnitBallAlongXAxis) {
  const auto ball = make_ball(3, 1.0);
  const auto [a, b] = line_boundary_points(*ball, Lined(Vec::Zero(3), v3(1, 0, 0)));
  EXPECT_LT((a - v3(-1, 0, 0)).norm(), 1e-12);
  EXPECT_LT((b - v3(1, 0, 0)).norm(), 1e-12);
}

TEST(LineBoundaryPoints, EllipsoidShortAxis) {
  const auto e = make_ellipsoid(Vec::Zero(3), Vec(v3(1, 4, 9)).asDiagonal());
  const auto [a, b] = line_boundary_points(*e, Lined(v3(0, 3, 0), v3(0, 1, 0)));
  EXPECT_LT((a - v3(0, -0.5, 0)).norm(), 1e-12);
  EXPECT_LT((b - v3(0, 0.5, 0)).norm(), 1e-12);
}

TEST(LineBoundaryPoints, OffCentreChordOfPBall) {
  const auto l4 = make_pball(4.0, v3(1, 1, 1));
  const auto [a, b] = line_boundary_points(*l4, Lined(v3(0.2, 0.5, -0.1), v3(1, 0.3, 0.2)));
  EXPECT_NEAR(l4->gauge(a), 1.0, 1e-10);
  EXPECT_NEAR(l4->gauge(b), 1.0, 1e-10);
  EXPECT_LT(Lined(v3(0.2, 0.5, -0.1), v3(1, 0.3, 0.2)).distance_to(a), 1e-12);
}

TEST(LineBoundaryPoints, MissingLine) {
  const auto ball = make_ball(3, 1.0);
  try {
    line_boundary_points(*ball, Lined(v3(2, 0, 0), v3(0, 1, 0)));
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::LineMissesBody);
  }
}

TEST(OSymmetry, EllipsoidsAndSimplex) {
  const auto e = make_ellipsoid(Vec::Zero(3), Vec(v3(1, 2, 3)).asDiagonal());
  EXPECT_TRUE(is_o_symmetric(*e, Vec::Zero(3), 1e-9));
  const auto shifted = make_ellipsoid(v3(0.3, 0, 0), Vec(v3(1, 2, 3)).asDiagonal());
  EXPECT_TRUE(is_o_symmetric(*shifted, v3(0.3, 0, 0), 1e-9));
  EXPECT_FALSE(is_o_symmetric(*shifted, Vec::Zero(3), 1e-6));

  const Mat verts = (Mat(3, 4) << 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1).finished();
  const auto simplex = make_polytope(verts);
  EXPECT_FALSE(is_o_symmetric(*simplex, simplex->center(), 1e-6));
  const Vec u = -v3(1, 1, 1) / std::sqrt(3.0);
  const Vec c = simplex->center();
  EXPECT_GT(std::abs(simplex->support(u) - simplex->support(-u) - 2 * c.dot(u)), 0.1);
}

TEST(Polytope, GaugeMatchesFacets) {
  const Mat cube = (Mat(3, 8) << -1, 1, -1, 1, -1, 1, -1, 1, -1, -1, 1, 1, -1, -1, 1, 1, -1, -1, -1, -1, 1, 1, 1, 1)
                       .finished();
  const auto k = make_polytope(cube);
  const auto& p = static_cast<const Polytope&>(*k);
  EXPECT_EQ(p.facets().size(), 6u);
  EXPECT_NEAR(k->gauge(v3(0.5, -0.25, 0.1)), 0.5, 1e-14);
  EXPECT_NEAR(k->diameter(), 2 * std::sqrt(3.0), 1e-2);
}

TEST(Nesting, SupportComparison) {
  const auto outer = make_ball(3, 2.0);
  const auto inner = make_pball(4.0, v3(1, 1, 1));
  EXPECT_GT(nesting_gap(*inner, *outer), 0.0);
  EXPECT_LT(nesting_gap(*outer, *inner), 0.0);
}

TEST(Construction, RejectsBadParameters) {
  EXPECT_THROW(make_pball(1.0, v3(1, 1, 1)), GeometryError);
  EXPECT_THROW(make_pball(3.0, v3(1, -1, 1)), GeometryError);
  EXPECT_THROW(make_ellipsoid(Vec::Zero(3), Vec(v3(1, -1, 1)).asDiagonal()), GeometryError);
  Mat nonsym = Mat::Identity(3, 3);
  nonsym(0, 1) = 0.1;
  EXPECT_THROW(make_ellipsoid(Vec::Zero(3), nonsym), GeometryError);
  EXPECT_THROW(make_affine_image(Mat::Zero(3, 3), Vec::Zero(3), make_ball(3, 1)), GeometryError);
  EXPECT_THROW(make_polytope(Mat::Identity(3, 3)), GeometryError);
}

TEST(BodySpec, RoundTripIsIdentity) {
  for (const auto& body : menu()) {
    const std::string once = serialize_body(*body);
    const auto parsed = parse_body(once);
    EXPECT_EQ(serialize_body(*parsed), once) << body->label();
    EXPECT_EQ(body_to_json(*parsed), body_to_json(*body));
  }
}

TEST(BodySpec, ParsesFilesInTestData) {
  const std::filesystem::path dir = EFORGE_TEST_DATA;
  int count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".json") continue;
    const auto body = load_body(entry.path());
    EXPECT_EQ(serialize_body(*parse_body(serialize_body(*body))), serialize_body(*body));
    ++count;
  }
  EXPECT_GE(count, 4);
}

TEST(BodySpec, ReportsParseErrors) {
  for (const char* text : {"{", R"({"kind": "cube", "dimension": 3})", R"({"kind": "pball", "dimension": 3})",
                           R"({"kind": "pball", "dimension": 2, "exponent": 3, "semi_axes": [1, 1, 1]})",
                           R"({"kind": "pball", "dimension": 3, "exponent": 0.5, "semi_axes": [1, 1, 1]})"}) {
    try {
      parse_body(text);
      FAIL() << text;
    } catch (const GeometryError& e) {
      EXPECT_EQ(e.kind(), ErrorKind::ParseError) << text;
    }
  }
}
