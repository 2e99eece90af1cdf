#include "eforge/planar/planar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace eforge {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

Vec unit2(double theta) { return (Vec(2) << std::cos(theta), std::sin(theta)).finished(); }

Vec rot90(const Vec& v) { return (Vec(2) << -v(1), v(0)).finished(); }

double cross2(const Vec& a, const Vec& b) { return a(0) * b(1) - a(1) * b(0); }

double angle_between(const Vec& a, const Vec& b) { return std::atan2(std::abs(cross2(a, b)), a.dot(b)); }

// Minimum of a unimodal function on [lo, hi] by golden-section search.
template <typename Fn>
std::pair<double, double> golden_min(Fn&& f, double lo, double hi, double width) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - r * (hi - lo);
  double d = lo + r * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > width) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - r * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + r * (hi - lo);
      fd = f(d);
    }
  }
  const double t = 0.5 * (lo + hi);
  return {t, f(t)};
}

void require_on_boundary(const ConvexBody& fig, const Vec& p, double tol) {
  if (p.size() != 2) throw GeometryError(ErrorKind::InvalidArgument, "chord endpoints must be chart coordinates");
  if (std::abs(fig.gauge(p) - 1.0) > tol) {
    throw GeometryError(ErrorKind::EndpointNotOnBoundary, "chord endpoint is not on the boundary");
  }
}

// min over unit u of h(u) + h(-u) - <a - b, u>, relative to the diameter.
double support_gap(const ConvexBody& fig, const Vec& a, const Vec& b) {
  auto gap = [&](double t) {
    const Vec u = unit2(t);
    return fig.support(u) + fig.support(-u) - (a - b).dot(u);
  };
  constexpr int kSamples = 1440;
  double best_t = 0;
  double best = gap(0.0);
  for (int i = 1; i < kSamples; ++i) {
    const double t = 2 * kPi * i / kSamples;
    const double g = gap(t);
    if (g < best) {
      best = g;
      best_t = t;
    }
  }
  const double step = 2 * kPi / kSamples;
  const auto refined = golden_min(gap, best_t - step, best_t + step, 1e-12);
  return std::max(0.0, std::min(best, refined.second)) / fig.diameter();
}

}  // namespace

// ---------------------------------------------------------------------------------------------

SectionBody::SectionBody(BodyPtr host, const Hyperplaned& plane, std::string name)
    : ConvexBody(std::move(name)),
      host_(std::move(host)),
      plane_(plane),
      chart_(Chartd::of(plane, host_ ? host_->center() : Vec::Zero(plane.dim()))) {
  if (host_->dim() != 3 || plane.dim() != 3) {
    throw GeometryError(ErrorKind::InvalidArgument, "planar sections need a 3-D host and plane");
  }
  const Vec& n = plane_.normal();
  const double hi = host_->support(n);
  const double lo = -host_->support(-n);
  const double margin = 1e-12 * host_->diameter();
  if (!(plane_.offset() > lo + margin && plane_.offset() < hi - margin)) {
    throw GeometryError(ErrorKind::PlaneMissesBody, "plane does not meet the interior of the body");
  }
  Vec acc = Vec::Zero(2);
  constexpr int kProbe = 16;
  center_ = Vec::Zero(2);
  for (int i = 0; i < kProbe; ++i) acc += support_point(unit2(2 * kPi * i / kProbe));
  center_ = acc / kProbe;
  init_diameter(360);
}

double SectionBody::dual_parameter(const Vec& w) const {
  const Vec& n = plane_.normal();
  const double b = plane_.offset();
  auto side = [&](double t) { return n.dot(host_->support_point(Vec(w + t * n))) - b; };
  const double scale = std::max(w.norm(), 1e-300);
  double lo = -scale;
  double hi = scale;
  for (int i = 0; side(hi) <= 0; ++i) {
    if (i > 80) throw GeometryError(ErrorKind::SearchFailed, "section support bracket failed");
    lo = hi;
    hi *= 2;
  }
  for (int i = 0; side(lo) >= 0; ++i) {
    if (i > 80) throw GeometryError(ErrorKind::SearchFailed, "section support bracket failed");
    hi = lo;
    lo *= 2;
  }
  for (int it = 0; it < 200 && hi - lo > 4 * kEps * std::max({std::abs(lo), std::abs(hi), scale}); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double s = side(mid);
    if (s == 0) return mid;
    if (s < 0) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double SectionBody::support(const Vec& v) const {
  const Vec w = chart_.embed_direction(v);
  const double t = dual_parameter(w);
  return host_->support(Vec(w + t * plane_.normal())) - t * plane_.offset() - chart_.origin.dot(w);
}

Vec SectionBody::support_point(const Vec& v) const {
  const Vec w = chart_.embed_direction(v);
  const Vec& n = plane_.normal();
  const double t = dual_parameter(w);
  // Support points just below and above the plane; their chord crosses it at the section's
  // support point (they coincide for smooth hosts).
  const double dt = 8 * kEps * std::max(std::abs(t), w.norm());
  const Vec lo = host_->support_point(Vec(w + (t - dt) * n));
  const Vec hi = host_->support_point(Vec(w + (t + dt) * n));
  const double slo = n.dot(lo) - plane_.offset();
  const double shi = n.dot(hi) - plane_.offset();
  Vec x = hi;
  if (slo < 0 && shi > 0) {
    const double lambda = shi / (shi - slo);
    x = lambda * lo + (1 - lambda) * hi;
  }
  return chart_.to_chart(x);
}

double SectionBody::gauge(const Vec& y) const {
  const Vec d = y - center_;
  if (d.norm() == 0) return 0;
  return 1.0 / host_->ray_exit(chart_.embed(center_), chart_.embed_direction(d));
}

Vec SectionBody::normal(const Vec& y) const {
  return chart_.to_chart(Vec(chart_.origin + host_->normal(chart_.embed(y)))).normalized();
}

double SectionBody::ray_exit(const Vec& origin, const Vec& dir) const {
  return host_->ray_exit(chart_.embed(origin), chart_.embed_direction(dir));
}

// ---------------------------------------------------------------------------------------------

PlanarSection section(const BodyPtr& body, const Hyperplaned& plane) {
  auto fig = std::make_shared<SectionBody>(body, plane, body->label() + "-section");
  return {fig, fig->chart(), plane};
}

PlanarSection planar_figure(const BodyPtr& figure) {
  if (figure->dim() != 2) throw GeometryError(ErrorKind::InvalidArgument, "planar figures are 2-D bodies");
  return {figure, Chartd{Vec::Zero(2), Mat::Identity(2, 2)}, std::nullopt};
}

CentralSymmetry central_symmetry(const PlanarSection& sec, double tol, Eigen::Index count) {
  const ConvexBody& fig = *sec.figure;
  Mat u(count, 2);
  Vec diff(count);
  double width = 0;
  for (Eigen::Index i = 0; i < count; ++i) {
    const Vec d = unit2(2 * kPi * static_cast<double>(i) / static_cast<double>(count));
    const double hp = fig.support(d);
    const double hm = fig.support(-d);
    u.row(i) = 2.0 * d.transpose();
    diff(i) = hp - hm;
    width = std::max(width, hp + hm);
  }
  CentralSymmetry out;
  out.center = u.colPivHouseholderQr().solve(diff);
  out.residual = (diff - u * out.center).cwiseAbs().maxCoeff() / width;
  out.symmetric = out.residual <= tol;
  return out;
}

double affine_diameter_defect(const PlanarSection& sec, const Vec& a, const Vec& b, double boundary_tol) {
  const ConvexBody& fig = *sec.figure;
  require_on_boundary(fig, a, boundary_tol);
  require_on_boundary(fig, b, boundary_tol);
  if ((a - b).norm() < 1e-6 * fig.diameter()) {
    throw GeometryError(ErrorKind::InvalidArgument, "chord is shorter than 1e-6 of the diameter");
  }
  if (fig.is_smooth()) return angle_between(fig.normal(a), Vec(-fig.normal(b)));
  return support_gap(fig, a, b);
}

bool is_affine_diameter(const PlanarSection& sec, const Vec& a, const Vec& b, double tol, double boundary_tol) {
  return affine_diameter_defect(sec, a, b, boundary_tol) <= tol;
}

Conjugate find_conjugate(const PlanarSection& sec, const Vec& a, const Vec& b) {
  const ConvexBody& fig = *sec.figure;
  const double diam = fig.diameter();
  const Vec d = (b - a).normalized();
  if ((b - a).norm() < 1e-6 * diam) {
    throw GeometryError(ErrorKind::InvalidArgument, "chord is shorter than 1e-6 of the diameter");
  }
  auto chord = [&](const Vec& u) { return Vec(fig.support_point(u) - fig.support_point(Vec(-u))); };
  auto contact = [&](const Vec& p, const Vec& normal) { return std::abs(fig.support(normal) - p.dot(normal)) / diam; };
  Conjugate out;

  if (fig.is_smooth()) {
    // Rotate u from the normal at a to its opposite; the chord [sp(u), sp(-u)] turns from a - b to
    // b - a and is parallel to the tangent at a exactly once.
    const Vec na = fig.normal(a);
    const Vec tau = rot90(na);
    auto u_of = [&](double t) { return Vec(std::cos(t) * na + std::sin(t) * tau); };
    double lo = 0;
    double hi = kPi;
    if (!(chord(u_of(lo)).dot(na) > 0) || !(chord(u_of(hi)).dot(na) < 0)) {
      throw GeometryError(ErrorKind::SearchFailed, "no parallel chord found in the rotation sweep");
    }
    while (hi - lo > 1e-15) {
      const double mid = 0.5 * (lo + hi);
      if (chord(u_of(mid)).dot(na) > 0) lo = mid; else hi = mid;
    }
    const Vec u = u_of(0.5 * (lo + hi));
    out.c = fig.support_point(u);
    out.e = fig.support_point(Vec(-u));
    out.defect = std::asin(std::min(1.0, std::abs(u.dot(d))));
    const Vec nd = rot90(d).dot(out.c - out.e) >= 0 ? rot90(d) : Vec(-rot90(d));
    out.contact_residual = std::max({contact(a, na), contact(b, -na), contact(out.c, nd), contact(out.e, -nd)});
    return out;
  }

  // Non-smooth figures: sweep the side direction tau; score each candidate parallelogram by the
  // support gaps of its two pairs of sides.
  auto pair_gap = [&](const Vec& p, const Vec& q, const Vec& normal) {
    return (fig.support(normal) + fig.support(Vec(-normal)) - std::abs((p - q).dot(normal))) / diam;
  };
  constexpr int kSweep = 720;
  out.defect = std::numeric_limits<double>::infinity();
  for (int k = 0; k < kSweep; ++k) {
    const Vec tau = unit2(kPi * k / kSweep);
    const Vec nt = rot90(tau);
    const double gab = pair_gap(a, b, nt);
    // Affine diameter in direction tau: bisection on the side of the chord [sp(u), sp(-u)].
    double lo = 0;
    double hi = kPi;
    auto u_of = [&](double t) { return Vec(std::cos(t) * nt + std::sin(t) * tau); };
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (chord(u_of(mid)).dot(nt) > 0) lo = mid; else hi = mid;
    }
    const Vec u = u_of(lo);
    const Vec c = fig.support_point(u);
    const Vec e = fig.support_point(Vec(-u));
    const double score = gab + pair_gap(c, e, rot90(d));
    if (score < out.defect) {
      out.defect = score;
      out.c = c;
      out.e = e;
      out.contact_residual = score;
    }
  }
  return out;
}

Conjugate conjugate_diameter(const PlanarSection& sec, const Vec& a, const Vec& b, double tol) {
  const Conjugate c = find_conjugate(sec, a, b);
  if (c.defect > tol) {
    throw GeometryError(ErrorKind::NotFound, "no circumscribed parallelogram closes; minimal defect " +
                                                 std::to_string(c.defect));
  }
  return c;
}

// ---------------------------------------------------------------------------------------------

SectionNorm::SectionNorm(const PlanarSection& sec, double symmetry_tol) : figure_(sec.figure) {
  const CentralSymmetry cs = central_symmetry(sec, symmetry_tol);
  if (!cs.symmetric) throw GeometryError(ErrorKind::NotANorm, "figure is not centrally symmetric");
  center_ = cs.center;
}

double SectionNorm::operator()(const Vec& v) const {
  if (v.norm() == 0) return 0;
  return 1.0 / figure_->ray_exit(center_, v);
}

double birkhoff_dip(const SectionNorm& norm, const Vec& x, const Vec& y) {
  const double nx = norm(x);
  const double ny = norm(y);
  if (!(nx > 0) || !(ny > 0)) throw GeometryError(ErrorKind::InvalidArgument, "Birkhoff normality needs x, y != 0");
  const double span = 10.0 * nx / ny;
  auto f = [&](double alpha) { return norm(Vec(x + alpha * y)); };
  const auto [alpha, value] = golden_min(f, -span, span, 1e-10 * span);
  const double best = std::min({value, f(-span), f(span)});
  return std::max(0.0, (nx - best) / nx);
}

bool birkhoff_normal(const SectionNorm& norm, const Vec& x, const Vec& y, double tol) {
  return birkhoff_dip(norm, x, y) <= tol;
}

bool birkhoff_normal(const PlanarSection& sec, const Vec& x, const Vec& y, double symmetry_tol, double tol) {
  return birkhoff_normal(SectionNorm(sec, symmetry_tol), x, y, tol);
}

RadonResult is_radon_curve(const PlanarSection& sec, Eigen::Index diameters, double conjugacy_tol,
                           double symmetry_tol, double birkhoff_tol) {
  const SectionNorm norm(sec, symmetry_tol);
  const ConvexBody& fig = *sec.figure;
  const Vec& c = norm.center();
  RadonResult out;
  out.diameters = diameters;
  out.witness = unit2(0);
  out.birkhoff_witness = unit2(0);
  for (Eigen::Index i = 0; i < diameters; ++i) {
    const Vec dir = unit2(kPi * static_cast<double>(i) / static_cast<double>(diameters));
    const Vec a = c - fig.ray_exit(c, Vec(-dir)) * dir;
    const Vec b = c + fig.ray_exit(c, dir) * dir;
    const Conjugate conj = find_conjugate(sec, a, b);
    if (i == 0 || conj.defect > out.worst_defect) {
      out.worst_defect = conj.defect;
      out.witness = dir;
    }
    // x = b - c is normal to the tangent direction at b; check the reverse relation.
    const Vec x = b - c;
    const Vec y = fig.is_smooth() ? rot90(fig.normal(b)) : Vec(conj.e - conj.c);
    const double dip = birkhoff_dip(norm, y, x);
    if (dip > out.birkhoff_asymmetry) {
      out.birkhoff_asymmetry = dip;
      out.birkhoff_witness = dir;
    }
  }
  out.radon = out.worst_defect <= conjugacy_tol;
  out.cross_check_agrees = out.radon == (out.birkhoff_asymmetry <= birkhoff_tol);
  return out;
}

}  // namespace eforge
