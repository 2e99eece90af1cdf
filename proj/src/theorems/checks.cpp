#include "eforge/theorems/theorems.hpp"

#include "eforge/cones/cones.hpp"
#include "eforge/core/fit.hpp"
#include "eforge/core/sampling.hpp"
#include "eforge/planar/planar.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace eforge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

const char* const kEvidenceNote = "verdicts are evidence on the sampled configuration only";

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

std::string fmt(const Vec& v) {
  std::ostringstream s;
  s.precision(6);
  s << "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) s << (i ? ", " : "") << v(i);
  s << ")";
  return s.str();
}

Vec origin_of(const CheckConfig& cfg, Eigen::Index n) {
  if (cfg.origin.size() == 0) return Vec::Zero(n);
  if (cfg.origin.size() != n) throw GeometryError(ErrorKind::InvalidArgument, "origin has the wrong dimension");
  return cfg.origin;
}

Vec cross3(const Vec& a, const Vec& b) { return Eigen::Vector3d(a).cross(Eigen::Vector3d(b)); }

double angle_between_lines(const Vec& a, const Vec& b) {
  const Vec ua = a.normalized();
  const Vec ub = b.normalized();
  const double d = std::abs(ua.dot(ub));
  return std::atan2((ub - ua.dot(ub) * ua).norm(), d);
}

Vec exit_point(const ConvexBody& body, const Vec& from, const Vec& dir) {
  return from + body.ray_exit(from, dir) * dir;
}

// Boundary points of `body` along quasi-uniform directions from `from`, one per column.
Mat boundary_from(const ConvexBody& body, const Vec& from, Eigen::Index count, std::uint64_t seed) {
  const Mat dirs = sphere_directions(body.dim(), count, seed);
  Mat out(body.dim(), count);
  for (Eigen::Index i = 0; i < count; ++i) out.col(i) = exit_point(body, from, dirs.col(i));
  return out;
}

// Quasi-uniform unit vectors orthogonal to the unit vector a.
Mat fan(const Vec& a, Eigen::Index count, std::uint64_t seed) {
  return orthonormal_complement<double>(a) * sphere_directions(a.size() - 1, count, seed);
}

void require_nested(const ConvexBody& inner, const ConvexBody& outer, const Tolerances& tol) {
  const double gap = nesting_gap(inner, outer);
  if (!(gap > tol.margin)) {
    throw GeometryError(ErrorKind::BodiesNotNested,
                        "inner body is not inside the interior of the outer body (gap " + fmt(gap) + ")");
  }
}

void require_symmetric(const ConvexBody& body, const Vec& origin, const Tolerances& tol) {
  const double r = o_symmetry_residual(body, origin);
  if (!(r <= tol.symmetry)) {
    throw GeometryError(ErrorKind::NotOSymmetric, body.label() + " is not symmetric about the origin (residual " +
                                                      fmt(r) + ")");
  }
}

void require_smooth(const ConvexBody& body) {
  if (!body.is_smooth()) throw GeometryError(ErrorKind::NonSmoothBody, body.label() + " is not smooth");
}

Eigen::Index fit_count(const CheckConfig& cfg) { return std::max<Eigen::Index>(4 * cfg.curve_samples, 200); }

FitResultd ellipsoid_fit(const ConvexBody& body, const CheckConfig& cfg) {
  return fit_quadric<double>(boundary_samples(body, fit_count(cfg), cfg.seed), cfg.tol.ellipse);
}

Stage ellipsoid_stage(const std::string& name, const FitResultd& fit) {
  Stage s = make_stage(name, Role::Conclusion, fit.rms_residual, fit.tolerance, Comparison::AtMost, fit.sample_count,
                       std::string("quadric fit: ") + std::string(to_string(fit.classification)));
  s.passed = fit.accepted;
  return s;
}

Stage error_stage(const std::string& name, Role role, double threshold, Comparison cmp, Eigen::Index samples,
                  const std::exception& e) {
  return make_stage(name, role, std::nullopt, threshold, cmp, samples, e.what());
}

CheckReport new_report(std::string theorem, std::vector<std::string> bodies, const CheckConfig& cfg) {
  CheckReport r;
  r.theorem = std::move(theorem);
  r.bodies = std::move(bodies);
  r.seed = cfg.seed;
  r.tolerances = cfg.tol;
  r.sample_counts = {{"apexes", cfg.apex_samples}, {"curve", cfg.curve_samples}, {"planes", cfg.plane_samples}};
  r.notes.push_back(kEvidenceNote);
  return r;
}

void close_report(CheckReport& r, const Timer& timer) {
  r.finalize();
  r.wall_time_ms = timer.ms();
}

// Cone intersection from x and its reflection through the origin, with the fitted plane.
struct DoubleCone {
  CurveSample curve;
  FitResultd plane;
  double origin_distance{};  // distance of the origin to the fitted plane, relative to the cloud diameter
};

DoubleCone double_cone(const ConvexBody& inner, const Vec& x, const Vec& origin, const CheckConfig& cfg) {
  DoubleCone out;
  out.curve = cone_intersection(inner, x, Vec(2 * origin - x), cfg.curve_samples, cfg.seed);
  out.plane = fit_hyperplane<double>(out.curve.points, cfg.tol.planarity);
  const Hyperplaned h = out.plane.hyperplane();
  out.origin_distance = std::abs(h.signed_distance(origin)) / cloud_diameter<double>(out.curve.points);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------------------------

CheckReport check_theorem1(const BodyPtr& inner, const BodyPtr& outer, const CheckConfig& cfg) {
  const Timer timer;
  const ConvexBody& L = *inner;
  const ConvexBody& K = *outer;
  const Eigen::Index n = L.dim();
  const Vec origin = origin_of(cfg, n);
  require_nested(L, K, cfg.tol);
  CheckReport r = new_report("t1", {L.label(), K.label()}, cfg);
  r.parameters = {{"origin", fmt(origin)}};

  r.add(make_stage("inner body symmetric about O", Role::Hypothesis, o_symmetry_residual(L, origin),
                   cfg.tol.symmetry, Comparison::AtMost, 512));

  const Mat apexes = boundary_from(K, K.center(), cfg.apex_samples, cfg.seed);
  {
    double worst = 0;
    bool all_ellipses = true;
    Eigen::Index worst_i = 0;
    std::string note;
    try {
      for (Eigen::Index i = 0; i < apexes.cols(); ++i) {
        const SupportCone cone = support_cone(inner, apexes.col(i), cfg.curve_samples, cfg.seed);
        const FitResultd fit = is_ellipsoidal_cone(cone, cfg.tol.ellipse, cfg.seed);
        if (fit.classification != Classification::Ellipse && all_ellipses) {
          all_ellipses = false;
          note = "section at apex " + std::to_string(i) + " is " + std::string(to_string(fit.classification));
        }
        if (fit.rms_residual >= worst) {
          worst = fit.rms_residual;
          worst_i = i;
        }
      }
      Stage& s = r.add(make_stage("cones are ellipsoidal", Role::Hypothesis, worst, cfg.tol.ellipse,
                                  Comparison::AtMost, apexes.cols(), note));
      s.passed = s.passed && all_ellipses;
      s.witness = apexes.col(worst_i);
    } catch (const GeometryError& e) {
      r.add(error_stage("cones are ellipsoidal", Role::Hypothesis, cfg.tol.ellipse, Comparison::AtMost, apexes.cols(), e));
    }
  }

  std::vector<Vec> normals(static_cast<std::size_t>(apexes.cols()));
  bool planes_ok = true;
  {
    double worst = 0;
    Eigen::Index worst_i = 0;
    try {
      for (Eigen::Index i = 0; i < apexes.cols(); ++i) {
        const DoubleCone dc = double_cone(L, apexes.col(i), origin, cfg);
        normals[static_cast<std::size_t>(i)] = dc.plane.hyperplane().normal();
        const double v = std::max(dc.plane.rms_residual, dc.origin_distance);
        if (v > worst) {
          worst = v;
          worst_i = i;
        }
      }
      Stage& s = r.add(make_stage("double-cone curve is planar through O", Role::Lemma, worst, cfg.tol.planarity,
                                  Comparison::AtMost, apexes.cols()));
      s.witness = apexes.col(worst_i);
    } catch (const GeometryError& e) {
      planes_ok = false;
      r.add(error_stage("double-cone curve is planar through O", Role::Lemma, cfg.tol.planarity, Comparison::AtMost,
                        apexes.cols(), e));
    }
  }

  if (n != 3) {
    r.add(skipped_stage("contact chord parallel to plane meet", Role::Lemma, "needs n = 3"));
  } else if (!planes_ok) {
    r.add(skipped_stage("contact chord parallel to plane meet", Role::Lemma, "double-cone planes unavailable"));
  } else {
    constexpr Eigen::Index kMaxPairs = 32;
    double worst = 0;
    Eigen::Index pairs = 0;
    Vec witness;
    try {
      for (Eigen::Index i = 0; i < apexes.cols() && pairs < kMaxPairs; ++i) {
        for (Eigen::Index j = i + 1; j < apexes.cols() && pairs < kMaxPairs; ++j) {
          const Vec x1 = apexes.col(i);
          const Vec x2 = apexes.col(j);
          if ((x1 - x2).norm() < 1e-6 * K.diameter()) continue;
          if (!(min_gauge_on_line(L, Lined::through(x1, x2)).first > 1.0 + cfg.tol.margin)) continue;
          const Vec meet = cross3(normals[static_cast<std::size_t>(i)], normals[static_cast<std::size_t>(j)]);
          if (meet.norm() < 1e-9) continue;
          const CommonSupport cs = common_supporting_planes(L, x1, x2);
          const double angle = angle_between_lines(Vec(cs.b - cs.a), meet);
          ++pairs;
          if (angle >= worst) {
            worst = angle;
            witness = (Vec(6) << x1, x2).finished();
          }
        }
      }
      if (pairs == 0) {
        r.add(skipped_stage("contact chord parallel to plane meet", Role::Lemma, "no apex pair with a free line"));
      } else {
        Stage& s = r.add(make_stage("contact chord parallel to plane meet", Role::Lemma, worst, cfg.tol.angle,
                                    Comparison::AtMost, pairs));
        s.witness = witness;
      }
    } catch (const GeometryError& e) {
      r.add(error_stage("contact chord parallel to plane meet", Role::Lemma, cfg.tol.angle, Comparison::AtMost, pairs, e));
    }
  }

  r.add(ellipsoid_stage("inner body is an ellipsoid", ellipsoid_fit(L, cfg)));
  close_report(r, timer);
  return r;
}

// ---------------------------------------------------------------------------------------------

namespace {

// max_j |q_j - z_j| where z_j is the boundary point of K on the ray of plane(p, normal) inside the
// j-th half-plane {m + s a + t w_j, t > 0}.
double relation_defect(const ConvexBody& K, const Vec& p, const Vec& a, const Mat& w, const Mat& q, const Vec& normal) {
  const double an = a.dot(normal);
  if (std::abs(an) < 1e-9) return kInf;
  double worst = 0;
  for (Eigen::Index j = 0; j < w.cols(); ++j) {
    Vec t = w.col(j) - (w.col(j).dot(normal) / an) * a;
    t.normalize();
    worst = std::max(worst, (q.col(j) - exit_point(K, p, t)).norm());
  }
  return worst;
}

struct RelationFit {
  double defect{kInf};
  Vec normal;
};

// Plane through p best matching the cone-intersection curve, by pattern search on its normal.
RelationFit best_relation_plane(const ConvexBody& K, const Vec& p, const Vec& a, const Mat& w, const Mat& q,
                                double stop) {
  Mat centred = q.colwise() - p;
  Eigen::SelfAdjointEigenSolver<Mat> eig(centred * centred.transpose());
  Vec normal = eig.eigenvectors().col(0);
  RelationFit best{relation_defect(K, p, a, w, q, normal), normal};
  const Mat basis = orthonormal_complement<double>(normal);
  Vec angles = Vec::Zero(basis.cols());
  auto eval = [&](const Vec& ang) {
    const Vec nn = (normal + basis * ang).normalized();
    return RelationFit{relation_defect(K, p, a, w, q, nn), nn};
  };
  for (double step = 0.05; step > 1e-10 && best.defect > stop; ) {
    bool improved = false;
    for (Eigen::Index k = 0; k < angles.size(); ++k) {
      for (double sign : {1.0, -1.0}) {
        Vec trial = angles;
        trial(k) += sign * step;
        const RelationFit f = eval(trial);
        if (f.defect < best.defect) {
          best = f;
          angles = trial;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

double normal_angle(const ConvexBody& K, const Vec& x, const Vec& normal) {
  if (K.is_smooth()) return angle_between_lines(K.normal(x), normal);
  // Support gap of the plane through x with the given normal, relative to the diameter.
  const double gap = std::min(K.support(normal) - x.dot(normal), K.support(Vec(-normal)) + x.dot(normal));
  return std::abs(gap) / K.diameter();
}

}  // namespace

CheckReport check_theorem2(const BodyPtr& inner, const BodyPtr& outer, const Vec& p, const CheckConfig& cfg) {
  const Timer timer;
  const ConvexBody& L = *inner;
  const ConvexBody& K = *outer;
  const Eigen::Index n = L.dim();
  if (p.size() != n) throw GeometryError(ErrorKind::InvalidArgument, "p has the wrong dimension");
  require_nested(L, K, cfg.tol);
  if (!(K.gauge(p) < 1.0 - cfg.tol.margin)) throw GeometryError(ErrorKind::InvalidArgument, "p is not interior to K");
  CheckReport r = new_report("t2", {L.label(), K.label()}, cfg);
  r.parameters = {{"p", fmt(p)}};
  const double diam = K.diameter();

  const Mat dirs = sphere_directions(n, cfg.apex_samples, cfg.seed);
  std::vector<Vec> xs;
  std::vector<Vec> ys;
  std::vector<Vec> normals;
  {
    double worst = 0;
    Vec witness;
    std::string note;
    for (Eigen::Index i = 0; i < dirs.cols(); ++i) {
      const Vec u = dirs.col(i);
      const Vec x = exit_point(K, p, u);
      const Vec y = exit_point(K, p, Vec(-u));
      RelationFit fit;
      try {
        const Vec a = (x - y).normalized();
        Mat w = fan(a, cfg.curve_samples, cfg.seed);
        const CurveSample omega = cone_intersection_at(L, x, y, w);
        fit = best_relation_plane(K, p, a, w, omega.points, 1e-3 * cfg.tol.relation * diam);
      } catch (const GeometryError& e) {
        if (note.empty()) note = "apex " + std::to_string(i) + ": " + e.what();
      }
      xs.push_back(x);
      ys.push_back(y);
      normals.push_back(fit.normal.size() ? fit.normal : u);
      const double d = fit.defect / diam;
      if (!(d <= worst)) {
        worst = d;
        witness = x;
      }
    }
    Stage& s = r.add(make_stage("cone intersection equals a section through p", Role::Hypothesis, worst,
                                cfg.tol.relation, Comparison::AtMost, dirs.cols(), note));
    s.witness = witness;
    if (s.value && *s.value > 10 * cfg.tol.relation) {
      s.note += (s.note.empty() ? "" : "; ") + std::string("no plane within 10x tolerance (search failed)");
    }
  }

  {
    double worst = 0;
    Vec witness;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double v = std::max(normal_angle(K, xs[i], normals[i]), normal_angle(K, ys[i], normals[i]));
      if (v >= worst) {
        worst = v;
        witness = xs[i];
      }
    }
    Stage& s = r.add(make_stage("supporting planes at x and y parallel to the section", Role::Lemma, worst,
                                cfg.tol.angle, Comparison::AtMost, static_cast<Eigen::Index>(xs.size())));
    s.witness = witness;
  }

  if (n != 3) {
    r.add(skipped_stage("chords through p are affine diameters", Role::Lemma, "needs n = 3"));
    r.add(skipped_stage("sections through p are Radon curves", Role::Lemma, "needs n = 3"));
  } else {
    constexpr std::size_t kPlanes = 4;
    constexpr int kChords = 32;
    double worst = 0;
    Eigen::Index count = 0;
    try {
      for (std::size_t i = 0; i < std::min(kPlanes, xs.size()); ++i) {
        const PlanarSection z = section(outer, Hyperplaned::through(p, normals[i]));
        const Vec c = z.to_chart(p);
        for (int k = 0; k < kChords; ++k) {
          const Vec d = (Vec(2) << std::cos(kPi * k / kChords), std::sin(kPi * k / kChords)).finished();
          const Vec a = c + z.figure->ray_exit(c, d) * d;
          const Vec b = c - z.figure->ray_exit(c, Vec(-d)) * d;
          worst = std::max(worst, affine_diameter_defect(z, a, b, 1e3 * cfg.tol.boundary));
          ++count;
        }
      }
      r.add(make_stage("chords through p are affine diameters", Role::Lemma, worst, cfg.tol.affine_diameter,
                       Comparison::AtMost, count));
    } catch (const GeometryError& e) {
      r.add(error_stage("chords through p are affine diameters", Role::Lemma, cfg.tol.affine_diameter,
                        Comparison::AtMost, count, e));
    }

    const Mat plane_normals = sphere_directions(3, std::min<Eigen::Index>(cfg.plane_samples, 4), cfg.seed + 1);
    worst = 0;
    std::string note;
    bool ok = true;
    for (Eigen::Index i = 0; i < plane_normals.cols(); ++i) {
      try {
        const RadonResult rr = is_radon_curve(section(outer, Hyperplaned::through(p, plane_normals.col(i))),
                                              cfg.curve_samples, cfg.tol.conjugacy, cfg.tol.symmetry, cfg.tol.birkhoff);
        worst = std::max(worst, rr.worst_defect);
      } catch (const GeometryError& e) {
        ok = false;
        if (note.empty()) note = e.what();
      }
    }
    Stage& s = r.add(make_stage("sections through p are Radon curves", Role::Lemma, worst, cfg.tol.conjugacy,
                                Comparison::AtMost, plane_normals.cols(), note));
    s.passed = s.passed && ok;
  }

  const FitResultd fl = ellipsoid_fit(L, cfg);
  const FitResultd fk = ellipsoid_fit(K, cfg);
  r.add(ellipsoid_stage("inner body is an ellipsoid", fl));
  r.add(ellipsoid_stage("outer body is an ellipsoid", fk));
  const bool both = fl.classification == Classification::Ellipse && fk.classification == Classification::Ellipse;
  std::optional<double> concentric;
  std::optional<double> homothetic;
  if (both) {
    concentric = (fl.center - fk.center).norm() / diam;
    homothetic = (fl.shape / fl.shape.norm() - fk.shape / fk.shape.norm()).norm();
  }
  r.add(make_stage("ellipsoids are concentric", Role::Conclusion, concentric, cfg.tol.concentric, Comparison::AtMost, 2,
                   both ? "" : "needs two ellipsoid fits"));
  r.add(make_stage("ellipsoids are homothetic", Role::Conclusion, homothetic, cfg.tol.homothetic, Comparison::AtMost, 2,
                   both ? "" : "needs two ellipsoid fits"));
  close_report(r, timer);
  return r;
}

// ---------------------------------------------------------------------------------------------

CheckReport check_theorem3(const BodyPtr& inner, const BodyPtr& outer, const CheckConfig& cfg) {
  const Timer timer;
  const ConvexBody& L = *inner;
  const ConvexBody& K = *outer;
  const Eigen::Index n = L.dim();
  const Vec origin = origin_of(cfg, n);
  require_symmetric(L, origin, cfg.tol);
  require_symmetric(K, origin, cfg.tol);
  require_nested(L, K, cfg.tol);
  CheckReport r = new_report("t3", {L.label(), K.label()}, cfg);
  r.parameters = {{"origin", fmt(origin)}};

  const Mat apexes = boundary_from(K, origin, cfg.apex_samples, cfg.seed);
  std::vector<std::optional<Vec>> polar_normals(static_cast<std::size_t>(apexes.cols()));
  {
    double worst = 0;
    Vec witness;
    std::string note;
    for (Eigen::Index i = 0; i < apexes.cols(); ++i) {
      const PoleResult pr = polar_of(L, HPointd::from_affine(apexes.col(i)), cfg.curve_samples, cfg.tol.pole, cfg.seed);
      if (!pr.polar.is_at_infinity()) polar_normals[static_cast<std::size_t>(i)] = pr.polar.affine().normal();
      if (pr.residual >= worst) {
        worst = pr.residual;
        witness = apexes.col(i);
      }
    }
    Stage& s = r.add(make_stage("outer boundary points are poles", Role::Hypothesis, worst, cfg.tol.pole,
                                Comparison::AtMost, apexes.cols(), note));
    s.witness = witness;
  }

  std::vector<std::optional<CurveSample>> omegas(static_cast<std::size_t>(apexes.cols()));
  {
    double worst = 0;
    Vec witness;
    try {
      for (Eigen::Index i = 0; i < apexes.cols(); ++i) {
        const Vec x = apexes.col(i);
        CurveSample c = cone_intersection(L, x, Vec(2 * origin - x), cfg.curve_samples, cfg.seed);
        for (Eigen::Index j = 0; j < c.size(); ++j) {
          const double g = K.gauge(c.points.col(j));
          if (g >= worst) {
            worst = g;
            witness = c.points.col(j);
          }
        }
        omegas[static_cast<std::size_t>(i)] = std::move(c);
      }
      Stage& s = r.add(make_stage("double-cone curves inside the outer body", Role::Hypothesis, worst,
                                  1.0 - cfg.tol.margin, Comparison::AtMost, apexes.cols(), "max outer gauge"));
      s.witness = witness;
    } catch (const GeometryError& e) {
      r.add(error_stage("double-cone curves inside the outer body", Role::Hypothesis, 1.0 - cfg.tol.margin,
                        Comparison::AtMost, apexes.cols(), e));
    }
  }

  {
    double worst = 0;
    Eigen::Index count = 0;
    for (std::size_t i = 0; i < omegas.size(); ++i) {
      if (!omegas[i] || !polar_normals[i]) continue;
      const Vec& nrm = *polar_normals[i];
      const Mat& pts = omegas[i]->points;
      const Vec d = (pts.colwise() - origin).transpose() * nrm;
      worst = std::max(worst, std::sqrt(d.squaredNorm() / static_cast<double>(d.size())) / cloud_diameter<double>(pts));
      ++count;
    }
    r.add(make_stage("double-cone curve lies in the central plane parallel to the polar", Role::Lemma,
                     count ? std::optional<double>(worst) : std::nullopt, cfg.tol.planarity, Comparison::AtMost, count));
  }

  {
    constexpr Eigen::Index kApexes = 8;
    constexpr Eigen::Index kPartners = 16;
    double worst = kInf;
    Eigen::Index count = 0;
    Vec witness;
    try {
      for (Eigen::Index i = 0; i < std::min(kApexes, apexes.cols()); ++i) {
        const auto& nrm = polar_normals[static_cast<std::size_t>(i)];
        if (!nrm) continue;
        const Vec z = apexes.col(i);
        const Mat dirs = fan(*nrm, kPartners, cfg.seed);
        for (Eigen::Index k = 0; k < dirs.cols(); ++k) {
          const Vec w = exit_point(K, origin, dirs.col(k));
          if ((w - z).norm() < 1e-9 * K.diameter()) continue;
          const double g = min_gauge_on_line(L, Lined::through(z, w)).first;
          ++count;
          if (g < worst) {
            worst = g;
            witness = (Vec(2 * n) << z, w).finished();
          }
        }
      }
      Stage& s = r.add(make_stage("outer body is almost free", Role::Lemma, count ? std::optional<double>(worst) : std::nullopt,
                                  1.0 + cfg.tol.margin, Comparison::AtLeast, count, "min inner gauge on l(z, w)"));
      if (witness.size()) s.witness = witness;
    } catch (const GeometryError& e) {
      r.add(error_stage("outer body is almost free", Role::Lemma, 1.0 + cfg.tol.margin, Comparison::AtLeast, count, e));
    }
  }

  r.add(ellipsoid_stage("inner body is an ellipsoid", ellipsoid_fit(L, cfg)));
  close_report(r, timer);
  return r;
}

// ---------------------------------------------------------------------------------------------

CheckReport check_theorem_basico(const BodyPtr& body, const Vec& p, double slab_width, const CheckConfig& cfg) {
  const Timer timer;
  const ConvexBody& K = *body;
  require_smooth(K);
  if (K.dim() != 3) throw GeometryError(ErrorKind::InvalidArgument, "slab check needs n = 3");
  if (p.size() != 3) throw GeometryError(ErrorKind::InvalidArgument, "p has the wrong dimension");
  if (!(slab_width > 0)) throw GeometryError(ErrorKind::InvalidArgument, "slab width must be positive");
  CheckReport r = new_report("basico", {K.label()}, cfg);
  r.parameters = {{"p", fmt(p)}, {"slab_width", fmt(slab_width)}};
  r.notes.push_back("one slab width for every plane; per-plane widths are not searched");
  const double diam = K.diameter();
  constexpr int kLayers = 7;
  constexpr Eigen::Index kDirections = 256;

  struct Layer {
    PlanarSection sec;
    Hyperplaned plane;
    int index;
  };
  std::vector<Layer> layers;
  const Mat normals = sphere_directions(3, cfg.plane_samples, cfg.seed);
  double worst = 0;
  Eigen::Index missed = 0;
  Vec witness;
  for (Eigen::Index i = 0; i < normals.cols(); ++i) {
    const Vec nrm = normals.col(i);
    for (int k = 0; k < kLayers; ++k) {
      const double offset = nrm.dot(p) + slab_width * (static_cast<double>(k) / (kLayers - 1) - 0.5);
      const Hyperplaned plane(nrm, offset);
      try {
        PlanarSection sec = section(body, plane);
        const CentralSymmetry cs = central_symmetry(sec, cfg.tol.symmetry, kDirections);
        if (cs.residual >= worst) {
          worst = cs.residual;
          witness = (Vec(4) << nrm, offset).finished();
        }
        layers.push_back({std::move(sec), plane, k});
      } catch (const GeometryError& e) {
        if (e.kind() != ErrorKind::PlaneMissesBody) throw;
        ++missed;
      }
    }
  }
  {
    Stage& s = r.add(make_stage("sections in the slabs are centrally symmetric", Role::Hypothesis, worst,
                                cfg.tol.symmetry, Comparison::AtMost, static_cast<Eigen::Index>(layers.size()),
                                missed ? std::to_string(missed) + " layer planes miss the body" : ""));
    if (witness.size()) s.witness = witness;
  }

  double off_centre = 0;
  for (const Layer& l : layers) {
    if (l.index != kLayers / 2) continue;
    const CentralSymmetry cs = central_symmetry(l.sec, cfg.tol.symmetry, kDirections);
    off_centre = std::max(off_centre, (l.sec.embed(cs.center) - p).norm() / diam);
  }
  const bool centred = off_centre <= cfg.tol.concentric;
  r.branch = centred ? "centre-at-p" : "false-centre";
  r.add(make_stage("sections through p are centred at p", Role::Info, off_centre, cfg.tol.concentric,
                   Comparison::AtMost, normals.cols(),
                   centred ? "K is centred at p" : "p is a false centre; the false-centre theorem covers this case"));

  if (!centred) {
    r.add(skipped_stage("translated sections match", Role::Lemma, "false-centre branch"));
    r.add(skipped_stage("shadow boundary outside the section cylinder", Role::Lemma, "false-centre branch"));
  } else {
    double translation = 0;
    double inclusion = kInf;
    Eigen::Index translated = 0;
    Eigen::Index included = 0;
    for (const Layer& l : layers) {
      if (l.index == kLayers / 2) continue;
      const CentralSymmetry cs = central_symmetry(l.sec, cfg.tol.symmetry, kDirections);
      const Vec c = l.sec.embed(cs.center);
      const Vec u = -2.0 * (c - p);
      // -(S - p) = u + (S - p), tested on support values in in-plane directions.
      for (Eigen::Index k = 0; k < kDirections; ++k) {
        const double t = 2 * kPi * static_cast<double>(k) / kDirections;
        const Vec v2 = (Vec(2) << std::cos(t), std::sin(t)).finished();
        const Vec v = l.sec.chart.embed_direction(v2);
        const double h_plus = l.sec.figure->support(v2) + l.sec.chart.origin.dot(v) - p.dot(v);
        const double h_minus = l.sec.figure->support(Vec(-v2)) - l.sec.chart.origin.dot(v) + p.dot(v);
        translation = std::max(translation, std::abs(h_minus - u.dot(v) - h_plus) / diam);
      }
      ++translated;
      const double un = u.dot(l.plane.normal());
      if (u.norm() < 1e-9 * diam || std::abs(un) < 1e-9 * u.norm()) continue;
      const CurveSample sb = shadow_boundary(K, u, cfg.curve_samples, cfg.seed);
      for (Eigen::Index j = 0; j < sb.size(); ++j) {
        const Vec s = sb.points.col(j);
        const Vec proj = s - (l.plane.signed_distance(s) / un) * u;
        const Vec y = l.sec.to_chart(proj) - cs.center;
        const double len = y.norm();
        const double signed_distance = len < 1e-15 ? -l.sec.figure->ray_exit(cs.center, Vec::Unit(2, 0))
                                                   : len - l.sec.figure->ray_exit(cs.center, Vec(y / len));
        inclusion = std::min(inclusion, signed_distance / diam);
      }
      ++included;
    }
    r.add(make_stage("translated sections match", Role::Lemma, translated ? std::optional<double>(translation) : std::nullopt,
                     cfg.tol.symmetry, Comparison::AtMost, translated));
    if (included == 0) {
      r.add(skipped_stage("shadow boundary outside the section cylinder", Role::Lemma, "no off-centre layers"));
    } else {
      r.add(make_stage("shadow boundary outside the section cylinder", Role::Lemma, inclusion, -cfg.tol.tangency,
                       Comparison::AtLeast, included, "min signed distance to the open cylinder, relative"));
    }
  }

  r.add(ellipsoid_stage("body is an ellipsoid", ellipsoid_fit(K, cfg)));
  close_report(r, timer);
  return r;
}

// ---------------------------------------------------------------------------------------------

namespace {

struct TangentSection {
  PlanarSection sec;
  Vec center;  // ambient
};

TangentSection tangent_section(const BodyPtr& body, const Vec& origin, const Vec& u, double height, double sym_tol) {
  TangentSection out{section(body, Hyperplaned(u, u.dot(origin) + height)), {}};
  out.center = out.sec.embed(central_symmetry(out.sec, sym_tol, 256).center);
  return out;
}

// Support of a planar section in an ambient direction v parallel to its plane.
double ambient_support(const PlanarSection& s, const Vec& v) {
  return s.figure->support(Vec(s.chart.basis.transpose() * v)) + s.chart.origin.dot(v);
}

Vec phi_of(const BodyPtr& body, const Vec& origin, const Vec& u, double r, double sym_tol) {
  return tangent_section(body, origin, u, r, sym_tol).center - tangent_section(body, origin, Vec(-u), r, sym_tol).center;
}

}  // namespace

CheckReport check_theorem4(const BodyPtr& body, double ball_radius, const CheckConfig& cfg) {
  const Timer timer;
  const ConvexBody& K = *body;
  const Eigen::Index n = K.dim();
  if (n != 3) throw GeometryError(ErrorKind::InvalidArgument, "tangent-section check needs n = 3");
  const Vec origin = origin_of(cfg, n);
  require_symmetric(K, origin, cfg.tol);
  require_smooth(K);
  const double r = ball_radius;
  {
    const Mat dirs = sphere_directions(n, 512, cfg.seed);
    double min_support = kInf;
    for (Eigen::Index i = 0; i < dirs.cols(); ++i) {
      min_support = std::min(min_support, K.support(dirs.col(i)) - origin.dot(dirs.col(i)));
    }
    if (!(r > 0) || !(r * (1 + cfg.tol.margin) < min_support)) {
      throw GeometryError(ErrorKind::BallTooLarge, "ball radius " + fmt(r) + " is not below the minimal support " +
                                                       fmt(min_support));
    }
  }
  CheckReport r4 = new_report("t4", {K.label()}, cfg);
  r4.parameters = {{"origin", fmt(origin)}, {"ball_radius", fmt(r)}};
  const double diam = K.diameter();
  const Mat us = sphere_directions(n, cfg.apex_samples, cfg.seed);
  const Eigen::Index m = cfg.curve_samples;

  // (1) tangent sections are ellipses
  {
    double worst = 0;
    bool all = true;
    Vec witness;
    for (Eigen::Index i = 0; i < us.cols(); ++i) {
      const PlanarSection s = section(body, Hyperplaned(us.col(i), us.col(i).dot(origin) + r));
      Mat pts(2, m);
      const Vec c = s.figure->center();
      for (Eigen::Index j = 0; j < m; ++j) {
        const double t = 2 * kPi * static_cast<double>(j) / static_cast<double>(m);
        const Vec d = (Vec(2) << std::cos(t), std::sin(t)).finished();
        pts.col(j) = c + s.figure->ray_exit(c, d) * d;
      }
      const FitResultd fit = fit_quadric<double>(pts, cfg.tol.ellipse);
      all = all && fit.classification == Classification::Ellipse;
      if (fit.rms_residual >= worst) {
        worst = fit.rms_residual;
        witness = us.col(i);
      }
    }
    Stage& s = r4.add(make_stage("tangent sections are ellipses", Role::Hypothesis, worst, cfg.tol.ellipse,
                                 Comparison::AtMost, us.cols()));
    s.passed = s.passed && all;
    s.witness = witness;
  }

  // (2) the ball lies inside the hull of opposite tangent sections, across the lateral directions
  std::vector<TangentSection> plus;
  std::vector<TangentSection> minus;
  {
    double margin = kInf;
    Vec witness;
    for (Eigen::Index i = 0; i < us.cols(); ++i) {
      const Vec u = us.col(i);
      plus.push_back(tangent_section(body, origin, u, r, 1.0));
      minus.push_back(tangent_section(body, origin, Vec(-u), r, 1.0));
      const Mat vs = fan(u, m, cfg.seed);
      for (Eigen::Index k = 0; k < vs.cols(); ++k) {
        const Vec v = vs.col(k);
        const double h = std::max(ambient_support(plus.back().sec, v), ambient_support(minus.back().sec, v)) - origin.dot(v);
        const double value = (h - r) / r;
        if (value < margin) {
          margin = value;
          witness = u;
        }
      }
    }
    Stage& s = r4.add(make_stage("ball inside the two-section hull", Role::Hypothesis, margin, cfg.tol.margin,
                                 Comparison::AtLeast, us.cols(), "lateral margin, relative to the radius"));
    s.witness = witness;
  }

  // (3) opposite tangent sections are translates
  std::vector<Vec> phis;
  {
    double worst = 0;
    for (std::size_t i = 0; i < plus.size(); ++i) {
      const Vec u = us.col(static_cast<Eigen::Index>(i));
      const Vec phi = plus[i].center - minus[i].center;
      phis.push_back(phi);
      const Mat vs = fan(u, m, cfg.seed);
      for (Eigen::Index k = 0; k < vs.cols(); ++k) {
        const Vec v = vs.col(k);
        worst = std::max(worst,
                         std::abs(ambient_support(plus[i].sec, v) - phi.dot(v) - ambient_support(minus[i].sec, v)) / diam);
      }
    }
    r4.add(make_stage("opposite tangent sections are translates", Role::Lemma, worst, cfg.tol.hausdorff,
                      Comparison::AtMost, us.cols()));
    double lipschitz = 0;
    for (Eigen::Index i = 0; i < us.cols(); ++i) {
      double nearest = kInf;
      Eigen::Index arg = i;
      for (Eigen::Index j = 0; j < us.cols(); ++j) {
        const double d = (us.col(i) - us.col(j)).norm();
        if (j != i && d < nearest) {
          nearest = d;
          arg = j;
        }
      }
      if (arg != i) {
        lipschitz = std::max(lipschitz, (phis[static_cast<std::size_t>(i)] - phis[static_cast<std::size_t>(arg)]).norm() / nearest);
      }
    }
    r4.add(make_stage("translation field Lipschitz estimate", Role::Info, lipschitz, 0.0, Comparison::AtLeast, us.cols(),
                      "nearest-neighbour difference quotient"));
  }

  // (4) and (5): for v orthogonal to phi(u), phi(v) is orthogonal to u, and midpoints of chords of
  // K_v parallel to G(u) cap G(v) lie on a line parallel to phi(u).
  {
    constexpr Eigen::Index kBase = 8;
    constexpr Eigen::Index kPartners = 4;
    constexpr int kChords = 9;
    double claim = 0;
    double locus = 0;
    Eigen::Index claims = 0;
    Eigen::Index loci = 0;
    std::string note;
    for (Eigen::Index i = 0; i < std::min(kBase, us.cols()); ++i) {
      const Vec u = us.col(i);
      const Vec phi_u = phis[static_cast<std::size_t>(i)];
      if (phi_u.norm() < 1e-12 * diam) continue;
      const Mat vs = fan(phi_u.normalized(), kPartners, cfg.seed);
      for (Eigen::Index k = 0; k < vs.cols(); ++k) {
        const Vec v = vs.col(k);
        try {
          const Vec phi_v = phi_of(body, origin, v, r, 1.0);
          claim = std::max(claim, std::abs(phi_v.dot(u)) / phi_v.norm());
          ++claims;

          const Vec ell = cross3(u, v);
          if (ell.norm() < 1e-6) continue;
          const Vec dir = ell.normalized();
          const Vec across = cross3(v, dir).normalized();
          const TangentSection kv = tangent_section(body, origin, v, r, 1.0);
          const double hi = ambient_support(kv.sec, across) - kv.center.dot(across);
          const double lo = ambient_support(kv.sec, Vec(-across)) + kv.center.dot(across);
          Mat mids(3, kChords);
          for (int c = 0; c < kChords; ++c) {
            const double s = -0.8 * lo + 0.8 * (lo + hi) * c / (kChords - 1);
            const Vec base = kv.center + s * across;
            const auto [a, b] = line_boundary_points(K, Lined(base, dir));
            mids.col(c) = 0.5 * (a + b);
          }
          const Vec mean = mids.rowwise().mean();
          const Mat centred = mids.colwise() - mean;
          Eigen::SelfAdjointEigenSolver<Mat> eig(centred * centred.transpose());
          const Vec line_dir = eig.eigenvectors().col(2);
          const double spread = std::sqrt(std::max(0.0, eig.eigenvalues()(1)) / kChords);
          locus = std::max({locus, angle_between_lines(line_dir, phi_u), spread / diam});
          ++loci;
        } catch (const GeometryError& e) {
          if (note.empty()) note = e.what();
        }
      }
    }
    Stage& s4 = r4.add(make_stage("translation of a transverse section is orthogonal to u", Role::Lemma, claim,
                                  cfg.tol.claim, Comparison::AtMost, claims, note));
    if (!note.empty()) s4.passed = false;
    r4.add(make_stage("chord midpoints lie on a line parallel to the translation", Role::Lemma,
                      loci ? std::optional<double>(locus) : std::nullopt, cfg.tol.angle, Comparison::AtMost, loci));
  }

  // (6) intermediate parallel sections are centred on the line through O along phi(u)
  {
    constexpr Eigen::Index kBase = 8;
    double worst = 0;
    Eigen::Index count = 0;
    for (Eigen::Index i = 0; i < std::min(kBase, us.cols()); ++i) {
      const Vec u = us.col(i);
      const Vec phi_u = phis[static_cast<std::size_t>(i)];
      const double pu = phi_u.dot(u);
      if (std::abs(pu) < 1e-12 * diam) continue;
      for (double frac : {0.25, 0.5, 0.75}) {
        const PlanarSection s = section(body, Hyperplaned(u, u.dot(origin) + frac * r));
        const CentralSymmetry cs = central_symmetry(s, cfg.tol.symmetry, 256);
        const Vec expected = origin + (frac * r / pu) * phi_u;
        worst = std::max({worst, cs.residual, (s.embed(cs.center) - expected).norm() / diam});
        ++count;
      }
    }
    r4.add(make_stage("inner parallel sections centred on the translation line", Role::Lemma, worst, cfg.tol.symmetry,
                      Comparison::AtMost, count));
  }

  r4.add(ellipsoid_stage("body is an ellipsoid", ellipsoid_fit(K, cfg)));
  close_report(r4, timer);
  return r4;
}

// ---------------------------------------------------------------------------------------------

CheckReport check_theorem_radon(const BodyPtr& body, const CheckConfig& cfg) {
  const Timer timer;
  const ConvexBody& K = *body;
  if (K.dim() != 3) throw GeometryError(ErrorKind::InvalidArgument, "Radon-section check needs n = 3");
  const Vec origin = origin_of(cfg, 3);
  CheckReport r = new_report("radon", {K.label()}, cfg);
  r.parameters = {{"origin", fmt(origin)}};

  r.add(make_stage("body symmetric about O", Role::Hypothesis, o_symmetry_residual(K, origin), cfg.tol.symmetry,
                   Comparison::AtMost, 512));

  const Mat normals = sphere_directions(3, cfg.plane_samples, cfg.seed);
  double worst = 0;
  double asymmetry = 0;
  bool ok = true;
  bool agree = true;
  std::string note;
  Vec witness;
  for (Eigen::Index i = 0; i < normals.cols(); ++i) {
    try {
      const RadonResult rr = is_radon_curve(section(body, Hyperplaned::through(origin, normals.col(i))),
                                            cfg.curve_samples, cfg.tol.conjugacy, cfg.tol.symmetry, cfg.tol.birkhoff);
      if (rr.worst_defect >= worst) {
        worst = rr.worst_defect;
        witness = normals.col(i);
      }
      asymmetry = std::max(asymmetry, rr.birkhoff_asymmetry);
      agree = agree && rr.cross_check_agrees;
    } catch (const GeometryError& e) {
      ok = false;
      if (note.empty()) note = e.what();
    }
  }
  Stage& s = r.add(make_stage("central sections are Radon curves", Role::Hypothesis, worst, cfg.tol.conjugacy,
                              Comparison::AtMost, normals.cols(), note));
  s.passed = s.passed && ok;
  if (witness.size()) s.witness = witness;
  r.add(make_stage("Birkhoff normality is symmetric", Role::Lemma, asymmetry, cfg.tol.birkhoff, Comparison::AtMost,
                   normals.cols(), agree ? "" : "normality scan disagrees with the conjugacy verdict on some section"));
  r.add(ellipsoid_stage("body is an ellipsoid", ellipsoid_fit(K, cfg)));
  close_report(r, timer);
  return r;
}

CheckReport check_pole(const BodyPtr& body, const HPointd& o, const CheckConfig& cfg) {
  const Timer timer;
  CheckReport r = new_report("pole", {body->label()}, cfg);
  std::ostringstream coords;
  coords.precision(17);
  for (Eigen::Index i = 0; i < o.coords().size(); ++i) coords << (i ? "," : "") << o.coords()(i);
  r.parameters = {{"point", coords.str()}};
  const PoleResult pr = polar_of(*body, o, cfg.curve_samples, cfg.tol.pole, cfg.seed);
  std::ostringstream polar;
  polar.precision(17);
  for (Eigen::Index i = 0; i < pr.polar.coeffs().size(); ++i) polar << (i ? "," : "") << pr.polar.coeffs()(i);
  r.parameters.emplace_back("polar", polar.str());
  r.parameters.emplace_back("classification", std::string(to_string(pr.classification)));
  r.add(make_stage("point is a pole", Role::Hypothesis, pr.residual, cfg.tol.pole, Comparison::AtMost, pr.lines,
                   std::string(to_string(pr.classification))));
  if (pr.graze_agreement) {
    r.add(make_stage("polar section equals the graze", Role::Lemma, *pr.graze_agreement, cfg.tol.hausdorff,
                     Comparison::AtMost, std::max<Eigen::Index>(pr.lines, 16)));
  }
  close_report(r, timer);
  return r;
}

}  // namespace eforge
