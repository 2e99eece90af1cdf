// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number of failures.

#include "eforge/cones/cones.hpp"
#include "eforge/core/fit.hpp"
#include "eforge/core/sampling.hpp"
#include "eforge/planar/planar.hpp"
#include "eforge/theorems/theorems.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <array>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace eforge;

namespace {

// Pinned gates.
constexpr double kGrazePlaneRms = 1e-10;
constexpr double kGrazeRadius = 1e-10;
constexpr double kConeCircle = 1e-8;
constexpr double kPolarCrossRatio = 1e-10;
constexpr double kPolarPlane = 1e-10;
constexpr double kPolarGraze = 1e-8;
constexpr Eigen::Index kRadonDiameters = 128;
constexpr double kBirkhoffDip = 1 - 0.826875347984996;  // dense alpha scan of the l4 pair
constexpr double kBirkhoffDipTol = 1e-6;
constexpr double kCheckSeconds = 30.0;
constexpr int kAffineMaps = 16;
constexpr double kCrossRatioTol = 1e-9;
constexpr double kRefineGrowth = 1.10;
constexpr double kRefineFloor = 1e-3;  // fraction of the stage threshold treated as round-off


int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("%s [%d] %s: %s\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Vec v3(double a, double b, double c) { return (Vec(3) << a, b, c).finished(); }

BodyPtr axis_ellipsoid(double a, double b, double c, double scale = 1.0) {
  Mat q = Mat::Zero(3, 3);
  q.diagonal() << a, b, c;
  return make_ellipsoid(Vec::Zero(3), q / (scale * scale), "ellipsoid");
}

BodyPtr l4(double scale = 1.0) { return scaled(make_pball(4, v3(1, 1, 1)), scale, "l4"); }

Mat perturbation() {
  Mat a = Mat::Identity(3, 3);
  a(0, 1) = 0.1;
  a(2, 2) = 1.1;
  return a;
}

struct Run {
  std::string label;
  std::function<CheckReport(const CheckConfig&)> check;
};

std::vector<Run> witnesses() {
  const Mat a = random_well_conditioned(3, 5);
  const Vec t = v3(0.3, -0.2, 0.1);
  const auto img = [a, t](const BodyPtr& b) { return make_affine_image(a, t, b); };
  return {
      {"t1 ellipsoid in ball", [](const CheckConfig& c) { return check_theorem1(axis_ellipsoid(1, 4, 9), make_ball(3, 3.0), c); }},
      {"t1 affine image",
       [=](const CheckConfig& c) {
         CheckConfig m = c;
         m.origin = t;
         return check_theorem1(img(axis_ellipsoid(1, 4, 9)), img(make_ball(3, 3.0)), m);
       }},
      {"t1 ball in l4", [](const CheckConfig& c) { return check_theorem1(make_ball(3, 0.5), l4(2.0), c); }},
      {"t2 bicone", [](const CheckConfig& c) { return check_theorem2(make_ball(3, 1 / std::sqrt(2.0)), make_ball(3, 1.0), Vec::Zero(3), c); }},
      {"t2 affine image", [=](const CheckConfig& c) { return check_theorem2(img(make_ball(3, 1 / std::sqrt(2.0))), img(make_ball(3, 1.0)), t, c); }},
      {"t3 ellipsoid in ball", [](const CheckConfig& c) { return check_theorem3(axis_ellipsoid(1, 2, 4, 0.4), make_ball(3, 2.0), c); }},
      {"t3 affine image",
       [=](const CheckConfig& c) {
         CheckConfig m = c;
         m.origin = t;
         return check_theorem3(img(axis_ellipsoid(1, 2, 4, 0.4)), img(make_ball(3, 2.0)), m);
       }},
      {"t4 sphere", [](const CheckConfig& c) { return check_theorem4(make_ball(3, 2.0), 1.0, c); }},
      {"t4 perturbed sphere",
       [](const CheckConfig& c) { return check_theorem4(make_affine_image(perturbation(), Vec::Zero(3), make_ball(3, 2.0)), 1.0, c); }},
      {"basico ellipsoid", [](const CheckConfig& c) { return check_theorem_basico(axis_ellipsoid(1, 2, 4), Vec::Zero(3), 0.2, c); }},
      {"basico sphere off-centre p", [](const CheckConfig& c) { return check_theorem_basico(make_ball(3, 1.0), v3(0.1, 0, 0), 0.1, c); }},
      {"radon ellipsoid", [](const CheckConfig& c) { return check_theorem_radon(axis_ellipsoid(1, 2, 4), c); }},
      {"radon affine ball", [=](const CheckConfig& c) {
         CheckConfig m = c;
         m.origin = t;
         return check_theorem_radon(img(make_ball(3, 1.0)), m);
       }},
  };
}

std::vector<Run> counterexamples() {
  return {
      {"t1 l4 inner", [](const CheckConfig& c) { return check_theorem1(l4(0.5), make_ball(3, 2.0), c); }},
      {"t2 ball in l4", [](const CheckConfig& c) { return check_theorem2(make_ball(3, 0.5), l4(), Vec::Zero(3), c); }},
      {"t3 l4 inner", [](const CheckConfig& c) { return check_theorem3(l4(0.4), make_ball(3, 2.0), c); }},
      {"t3 balls too close", [](const CheckConfig& c) { return check_theorem3(make_ball(3, 0.9), make_ball(3, 1.0), c); }},
      {"t4 l4", [](const CheckConfig& c) { return check_theorem4(l4(2.0), 1.0, c); }},
      {"basico l4", [](const CheckConfig& c) { return check_theorem_basico(l4(), Vec::Zero(3), 0.2, c); }},
      {"radon l4", [](const CheckConfig& c) { return check_theorem_radon(l4(), c); }},
      {"pole l4", [](const CheckConfig& c) { return check_pole(l4(), HPointd::from_affine(v3(2, 0, 0)), c); }},
  };
}

CheckConfig base_config() {
  CheckConfig c;
  c.apex_samples = 16;
  c.curve_samples = 64;
  c.plane_samples = 16;
  return c;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void graze_analytics() {
  const CurveSample g = graze(*make_ball(3, 1.0), v3(2, 0, 0), 256);
  const FitResultd fit = fit_hyperplane<double>(g.points, 1e-6);
  const Hyperplaned h = fit.hyperplane();
  const double plane_err = std::abs(h.offset() / h.normal()(0) - 0.5) + h.normal().tail(2).norm();
  double radius_err = 0;
  for (Eigen::Index j = 0; j < g.size(); ++j) {
    radius_err = std::max(radius_err, std::abs((g.points.col(j) - v3(0.5, 0, 0)).norm() - std::sqrt(3.0) / 2));
  }
  const bool ok = fit.rms_residual < kGrazePlaneRms && plane_err < kGrazePlaneRms && radius_err < kGrazeRadius;
  report(1, ok, "graze of the unit sphere from (2,0,0)",
         fmt("plane rms %.2e", fit.rms_residual) + fmt(", plane offset error %.2e", plane_err) +
             fmt(", radius error %.2e", radius_err));
}

double circle_error(const CurveSample& c, Eigen::Index axis, double radius) {
  double worst = 0;
  for (Eigen::Index j = 0; j < c.size(); ++j) {
    worst = std::max(worst, std::abs(c.points(axis, j)));
    worst = std::max(worst, std::abs(c.points.col(j).norm() - radius));
  }
  return worst;
}

void cone_intersections() {
  const double a = circle_error(cone_intersection(*make_ball(3, 1.0), v3(2, 0, 0), v3(-2, 0, 0), 256), 0, 2 / std::sqrt(3.0));
  const double b =
      circle_error(cone_intersection(*make_ball(3, 1 / std::sqrt(2.0)), v3(0, 0, 1), v3(0, 0, -1), 256), 2, 1.0);
  report(2, a < kConeCircle && b < kConeCircle, "cone intersections",
         fmt("sphere from (+-2,0,0) off circle r=2/sqrt3 by %.2e", a) +
             fmt("; ball r=1/sqrt2 from (0,0,+-1) off the unit great circle by %.2e", b));
}

void pole_polar() {
  const PoleResult r = polar_of(*make_ball(3, 1.0), HPointd::from_affine(v3(2, 0, 0)), 256);
  const Hyperplaned h = r.polar.affine();
  const double plane_err = std::abs(h.offset() / h.normal()(0) - 0.5) + h.normal().tail(2).norm();
  const double graze_err = r.graze_agreement.value_or(1.0);
  const PoleResult c = polar_of(*make_ball(3, 1.0), HPointd::from_affine(Vec::Zero(3)), 256);
  const bool ok = r.cross_ratio_residual < kPolarCrossRatio && plane_err < kPolarPlane && graze_err < kPolarGraze &&
                  c.polar.is_at_infinity();
  report(3, ok, "pole/polar of the unit ball",
         fmt("(2,0,0): max |cr+1| %.2e", r.cross_ratio_residual) + fmt(", polar offset error %.2e", plane_err) +
             fmt(", graze agreement %.2e", graze_err) + "; centre: polar " +
             (c.polar.is_at_infinity() ? "at infinity" : "finite"));
}

void radon_normality() {
  std::vector<PlanarSection> ellipses{planar_figure(make_ellipsoid(Vec::Zero(2), (Mat(2, 2) << 1, 0.3, 0.3, 4).finished()))};
  const BodyPtr e = axis_ellipsoid(1, 4, 9);
  const Mat normals = sphere_directions(3, 4, 3);
  for (Eigen::Index i = 0; i < normals.cols(); ++i) {
    ellipses.push_back(section(e, Hyperplaned(normals.col(i), 0.0)));
    ellipses.push_back(section(e, Hyperplaned(normals.col(i), 0.15)));
  }
  bool all_radon = true;
  double worst = 0;
  for (const PlanarSection& s : ellipses) {
    const RadonResult r = is_radon_curve(s, kRadonDiameters);
    all_radon = all_radon && r.radon;
    worst = std::max(worst, r.worst_defect);
  }

  const PlanarSection quartic = planar_figure(make_pball(4, (Vec(2) << 1, 1).finished()));
  const SectionNorm norm(quartic, 1e-9);
  Vec x = (Vec(2) << 1, 0.5).finished();
  x /= norm(x);
  Vec y = (Vec(2) << -std::pow(x(1), 3), std::pow(x(0), 3)).finished();
  y /= norm(y);
  const bool forward = birkhoff_normal(norm, x, y);
  const bool backward = birkhoff_normal(norm, y, x);
  const double dip = birkhoff_dip(norm, y, x);
  const RadonResult q = is_radon_curve(quartic, kRadonDiameters);
  const bool ok = all_radon && !q.radon && forward && !backward && std::abs(dip - kBirkhoffDip) < kBirkhoffDipTol;
  char pair[160];
  std::snprintf(pair, sizeof pair, "x=(%.4f,%.4f) -| y=(%.4f,%.4f) holds, y -| x fails with dip %.6f", x(0), x(1),
                y(0), y(1), dip);
  report(4, ok, "Radon curves and Birkhoff normality",
         std::to_string(ellipses.size()) + " ellipse sections Radon at " + std::to_string(kRadonDiameters) +
             fmt(" diameters (worst defect %.2e); l4 plane ", worst) + (q.radon ? "Radon" : "not Radon") + "; " + pair);
}

void soundness() {
  const CheckConfig cfg = base_config();
  int consistent = 0, violated = 0, conclusion = 0, total_w = 0, total_c = 0;
  double slowest = 0;
  std::string odd;
  for (const Run& w : witnesses()) {
    const auto t0 = std::chrono::steady_clock::now();
    const CheckReport r = w.check(cfg);
    slowest = std::max(slowest, seconds_since(t0));
    ++total_w;
    if (r.verdict == Outcome::Consistent) ++consistent;
    else odd += " " + w.label + "=" + std::string(to_string(r.verdict));
    if (r.verdict == Outcome::ConclusionViolated) ++conclusion;
  }
  for (const Run& c : counterexamples()) {
    const auto t0 = std::chrono::steady_clock::now();
    CheckReport r;
    try {
      r = c.check(cfg);
    } catch (const GeometryError& e) {
      odd += " " + c.label + " threw " + std::string(to_string(e.kind()));
      ++total_c;
      continue;
    }
    slowest = std::max(slowest, seconds_since(t0));
    ++total_c;
    if (r.verdict == Outcome::HypothesisViolated) ++violated;
    else odd += " " + c.label + "=" + std::string(to_string(r.verdict));
    if (r.verdict == Outcome::ConclusionViolated) ++conclusion;
  }
  const bool ok = consistent == total_w && violated == total_c && conclusion == 0 && slowest < kCheckSeconds;
  report(5, ok, "theorem harness soundness",
         std::to_string(consistent) + "/" + std::to_string(total_w) + " witnesses consistent, " +
             std::to_string(violated) + "/" + std::to_string(total_c) + " counterexamples hypothesis-violated, " +
             std::to_string(conclusion) + " conclusion-violated" + fmt(", slowest check %.1f s", slowest) + odd);
}

bool same_verdicts(const CheckReport& a, const CheckReport& b) {
  if (a.verdict != b.verdict || a.stages.size() != b.stages.size()) return false;
  for (std::size_t i = 0; i < a.stages.size(); ++i) {
    if (a.stages[i].verdict != b.stages[i].verdict) return false;
  }
  return true;
}

void invariance() {
  CheckConfig cfg = base_config();
  cfg.apex_samples = 8;
  struct Pair {
    std::string check;
    BodyPtr inner, outer;
  };
  const std::vector<Pair> configs{
      {"t1", axis_ellipsoid(1, 4, 9), make_ball(3, 3.0)},
      {"t1", l4(0.5), make_ball(3, 2.0)},
      {"t2", make_ball(3, 1 / std::sqrt(2.0)), make_ball(3, 1.0)},
      {"t2", make_ball(3, 0.5), l4()},
      {"t3", axis_ellipsoid(1, 2, 4, 0.4), make_ball(3, 2.0)},
      {"t3", l4(0.4), make_ball(3, 2.0)},
  };
  const auto run = [](const std::string& check, const BodyPtr& inner, const BodyPtr& outer, const CheckConfig& c) {
    const Vec p = c.origin.size() ? c.origin : Vec::Zero(3);
    if (check == "t1") return check_theorem1(inner, outer, c);
    if (check == "t2") return check_theorem2(inner, outer, p, c);
    return check_theorem3(inner, outer, c);
  };
  int changed = 0, compared = 0;
  std::string odd;
  for (const Pair& cfg_pair : configs) {
    const CheckReport base = run(cfg_pair.check, cfg_pair.inner, cfg_pair.outer, cfg);
    for (int k = 0; k < kAffineMaps; ++k) {
      const std::uint64_t seed = 100 + k;
      const Mat a = random_well_conditioned(3, seed);
      const Vec t = sphere_directions(3, 1, seed).col(0) * 0.5;
      CheckConfig moved = cfg;
      moved.origin = t;
      const CheckReport image = run(cfg_pair.check, make_affine_image(a, t, cfg_pair.inner),
                                    make_affine_image(a, t, cfg_pair.outer), moved);
      ++compared;
      if (!same_verdicts(base, image)) {
        ++changed;
        odd += " " + cfg_pair.check + "/seed" + std::to_string(seed);
      }
    }
  }

  std::mt19937_64 rng(2024);
  std::normal_distribution<double> gauss;
  double worst_cr = 0;
  for (int k = 0; k < 500; ++k) {
    Mat m(4, 4);
    for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = gauss(rng);
    m += 2.0 * Mat::Identity(4, 4);
    const ProjectiveMapd map(m);
    const Vec base = v3(gauss(rng), gauss(rng), gauss(rng));
    const Vec dir = v3(gauss(rng), gauss(rng), gauss(rng)).normalized();
    std::array<HPointd, 4> pts{HPointd::from_affine(base), HPointd::from_affine(base + 0.7 * dir),
                               HPointd::from_affine(base + 1.9 * dir), HPointd::from_affine(base - 1.3 * dir)};
    const double before = cross_ratio(pts[0], pts[1], pts[2], pts[3]);
    const double after = cross_ratio(map(pts[0]), map(pts[1]), map(pts[2]), map(pts[3]));
    worst_cr = std::max(worst_cr, std::abs(after - before) / std::max(1.0, std::abs(before)));
  }
  const bool ok = changed == 0 && worst_cr < kCrossRatioTol;
  report(6, ok, "affine and projective invariance",
         std::to_string(compared - changed) + "/" + std::to_string(compared) + " t1-t3 runs under " +
             std::to_string(kAffineMaps) + fmt(" affine maps keep every stage verdict; cross ratio drift %.2e", worst_cr) +
             odd);
}

void refinement() {
  const CheckConfig coarse = base_config();
  CheckConfig fine = coarse;
  fine.apex_samples *= 2;
  fine.curve_samples *= 2;
  fine.plane_samples *= 2;
  int verdict_changes = 0, growth_violations = 0, stages = 0;
  double worst_ratio = 0;
  std::string odd;
  for (const Run& w : witnesses()) {
    const CheckReport a = w.check(coarse);
    const CheckReport b = w.check(fine);
    if (!same_verdicts(a, b)) {
      ++verdict_changes;
      odd += " " + w.label + " verdicts differ";
      continue;
    }
    for (std::size_t i = 0; i < a.stages.size(); ++i) {
      const Stage& s = a.stages[i];
      const Stage& r = b.stages[i];
      if (s.comparison != Comparison::AtMost || s.role == Role::Info || !s.value || !r.value) continue;
      ++stages;
      const double allowed = kRefineGrowth * *s.value + kRefineFloor * s.threshold;
      if (*s.value > 0) worst_ratio = std::max(worst_ratio, *r.value / std::max(*s.value, kRefineFloor * s.threshold));
      if (*r.value > allowed) {
        ++growth_violations;
        odd += " " + w.label + "/" + s.name + fmt(" %.3e", *s.value) + fmt("->%.3e", *r.value);
      }
    }
  }
  for (const Run& c : counterexamples()) {
    if (!same_verdicts(c.check(coarse), c.check(fine))) {
      ++verdict_changes;
      odd += " " + c.label + " verdicts differ";
    }
  }
  report(7, verdict_changes == 0 && growth_violations == 0, "refinement stability",
         std::to_string(verdict_changes) + " verdict changes, " + std::to_string(growth_violations) + "/" +
             std::to_string(stages) + " witness residuals grew beyond 10%" + fmt(" (worst ratio %.3f)", worst_ratio) +
             odd);
}

void determinism() {
  CheckConfig cfg = base_config();
  cfg.apex_samples = 8;
  cfg.seed = 7;
  int identical = 0, total = 0;
  for (const auto& runs : {witnesses(), counterexamples()}) {
    for (const Run& r : runs) {
      ++total;
      if (serialize_report(r.check(cfg)) == serialize_report(r.check(cfg))) ++identical;
    }
  }
  report(8, identical == total, "determinism",
         std::to_string(identical) + "/" + std::to_string(total) + " configurations serialize byte-identically");
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  graze_analytics();
  cone_intersections();
  pole_polar();
  radon_normality();
  soundness();
  invariance();
  refinement();
  determinism();
  std::printf("%d of 8 criteria failed (%.1f s)\n", failures, seconds_since(t0));
  return failures;
}
