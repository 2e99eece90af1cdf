#include "eforge/cli/cli.hpp"

#include "eforge/bodies/body_io.hpp"
#include "eforge/cones/cones.hpp"
#include "eforge/core/fit.hpp"
#include "eforge/core/sampling.hpp"
#include "eforge/planar/planar.hpp"
#include "eforge/theorems/theorems.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

namespace eforge::cli {

namespace {

using json = nlohmann::ordered_json;

// Raised for bad arguments discovered after option parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Vec parse_vector(const std::string& text, const std::string& option) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw UsageError(option + ": '" + item + "' is not a number");
    values.push_back(v);
  }
  if (values.empty()) throw UsageError(option + ": expected comma-separated coordinates");
  return Eigen::Map<const Vec>(values.data(), static_cast<Eigen::Index>(values.size()));
}

Vec parse_point(const std::string& text, const std::string& option, Eigen::Index dim) {
  Vec v = parse_vector(text, option);
  if (v.size() != dim) {
    throw UsageError(option + ": expected " + std::to_string(dim) + " coordinates, got " + std::to_string(v.size()));
  }
  return v;
}

BodyPtr load(const std::string& path) {
  try {
    return load_body(path);
  } catch (const GeometryError& e) {
    if (e.kind() == ErrorKind::ParseError) throw UsageError(path + ": " + e.what());
    throw;
  }
}

struct Common {
  std::string profile;
  std::vector<std::string> tol_overrides;
  std::uint64_t seed = 0;
};

Tolerances resolve_tolerances(const Common& c) {
  Tolerances tol = c.profile.empty() ? Tolerances::from_environment() : Tolerances::profile(c.profile);
  for (const std::string& item : c.tol_overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("--tol expects name=value, got '" + item + "'");
    const std::string name = item.substr(0, eq);
    const Vec v = parse_vector(item.substr(eq + 1), "--tol " + name);
    if (v.size() != 1 || !(v(0) > 0)) throw UsageError("--tol " + name + ": expected one positive number");
    try {
      tol.set(name, v(0));
    } catch (const GeometryError& e) {
      throw UsageError(e.what());
    }
  }
  return tol;
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("--seed", c.seed, "Sampling seed");
  app->add_option("--profile", c.profile, "Tolerance profile (default, strict, loose)")
      ->check(CLI::IsMember({"default", "strict", "loose"}));
  app->add_option("--tol", c.tol_overrides, "Override one gate, e.g. --tol ellipse=1e-5")->take_all();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open " + path + " for writing");
  f << text;
  if (!f) throw UsageError("failed writing " + path);
}

int exit_code(Outcome o) {
  switch (o) {
    case Outcome::Consistent: return kConsistent;
    case Outcome::HypothesisViolated: return kHypothesisViolated;
    case Outcome::ConclusionViolated: return kConclusionViolated;
  }
  return kUsageError;
}

bool is_precondition(ErrorKind k) {
  return k == ErrorKind::BodiesNotNested || k == ErrorKind::NotOSymmetric || k == ErrorKind::NonSmoothBody ||
         k == ErrorKind::BallTooLarge || k == ErrorKind::PointOnBoundary;
}

// ---------------------------------------------------------------------------------------------
// check

struct CheckArgs {
  Common common;
  std::string inner, outer, body;
  std::string point = "0,0,0";
  std::string pole;
  std::string direction;
  double slab = 0.2;
  double ball_radius = 1.0;
  Eigen::Index apexes = 32;
  Eigen::Index curve_samples = 64;
  Eigen::Index planes = 16;
  std::string report;
  bool timing = false;
};

using Runner = std::function<CheckReport(const CheckConfig&)>;

int emit(const CheckReport& report, const CheckArgs& a, std::ostream& out) {
  if (a.report == "-") {
    out << serialize_report(report, a.timing);
  } else {
    out << summarize(report);
    if (!a.report.empty()) write_text(a.report, serialize_report(report, a.timing));
  }
  return exit_code(report.verdict);
}

CheckReport precondition_report(const std::string& theorem, const std::vector<std::string>& bodies,
                                const CheckConfig& cfg, const GeometryError& e) {
  CheckReport r;
  r.theorem = theorem;
  r.bodies = bodies;
  r.seed = cfg.seed;
  r.tolerances = cfg.tol;
  r.add(make_stage("preconditions", Role::Hypothesis, std::nullopt, 0.0, Comparison::AtMost, 0, e.what()));
  r.notes.push_back("precondition failed: " + std::string(to_string(e.kind())));
  r.finalize();
  return r;
}

int run_check(const std::string& theorem, const CheckArgs& a, const std::vector<std::string>& bodies,
              const Runner& runner, std::ostream& out) {
  CheckConfig cfg;
  cfg.tol = resolve_tolerances(a.common);
  cfg.seed = a.common.seed;
  cfg.apex_samples = a.apexes;
  cfg.curve_samples = a.curve_samples;
  cfg.plane_samples = a.planes;
  CheckReport report;
  try {
    report = runner(cfg);
  } catch (const GeometryError& e) {
    if (!is_precondition(e.kind())) throw;
    report = precondition_report(theorem, bodies, cfg, e);
  }
  return emit(report, a, out);
}

// ---------------------------------------------------------------------------------------------
// sample

struct SampleArgs {
  Common common;
  std::string body;
  std::string apex, apex2, direction, normal;
  double offset = 0.0;
  Eigen::Index m = 64;
  std::string out;
};

json fit_json(const FitResultd& fit) {
  json j;
  j["classification"] = to_string(fit.classification);
  j["accepted"] = fit.accepted;
  j["rms_residual"] = fit.rms_residual;
  j["max_residual"] = fit.max_residual;
  j["tolerance"] = fit.tolerance;
  return j;
}

int emit_curve(const std::string& source, const Mat& points, const Vec& residuals, json meta, const SampleArgs& a,
               const Tolerances& tol, std::ostream& out) {
  std::ostringstream csv;
  for (Eigen::Index i = 0; i < points.rows(); ++i) csv << "x" << i + 1 << ",";
  csv << "residual\n";
  char buf[64];
  for (Eigen::Index j = 0; j < points.cols(); ++j) {
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g,", points(i, j));
      csv << buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g\n", residuals(j));
    csv << buf;
  }

  meta["source"] = source;
  meta["samples"] = points.cols();
  meta["seed"] = a.common.seed;
  meta["max_residual"] = residuals.size() ? residuals.maxCoeff() : 0.0;
  std::string line = source + "  samples " + std::to_string(points.cols());
  try {
    const FitResultd plane = fit_hyperplane<double>(points, tol.planarity);
    json pj = fit_json(plane);
    const Hyperplaned h = plane.hyperplane();
    pj["normal"] = to_json(Vec(h.normal()));
    pj["offset"] = h.offset();
    meta["plane_fit"] = pj;
    std::snprintf(buf, sizeof buf, "  plane rms %.3e", plane.rms_residual);
    line += buf;
    if (points.rows() == 3) {
      const FitResultd conic = fit_planar_conic<double>(points, h, tol.ellipse, tol.planarity);
      meta["conic_fit"] = fit_json(conic);
      line += "  conic " + std::string(to_string(conic.classification));
    }
  } catch (const GeometryError& e) {
    meta["fit_error"] = e.what();
  }
  json tj = json::object();
  for (const auto& [name, value] : tol.items()) tj[name] = value;
  meta["tolerances"] = tj;

  if (a.out.empty() || a.out == "-") {
    out << csv.str();
  } else {
    write_text(a.out, csv.str());
    write_text(a.out + ".json", meta.dump(2) + "\n");
    out << line << "\n";
  }
  return kConsistent;
}

int emit_curve(const CurveSample& c, const SampleArgs& a, const Tolerances& tol, std::ostream& out) {
  json meta;
  meta["body"] = c.meta.body;
  if (c.meta.apex.size()) meta["apex"] = to_json(c.meta.apex);
  if (c.meta.second_apex.size()) meta["second_apex"] = to_json(c.meta.second_apex);
  if (c.meta.direction.size()) meta["direction"] = to_json(c.meta.direction);
  return emit_curve(c.meta.source, c.points, c.residuals, meta, a, tol, out);
}

int run_section_sample(const SampleArgs& a, const BodyPtr& body, const Tolerances& tol, std::ostream& out) {
  const Vec n = parse_point(a.normal, "--normal", body->dim());
  if (!(n.norm() > 0)) throw UsageError("--normal must be nonzero");
  const PlanarSection sec = section(body, Hyperplaned(n.normalized(), a.offset / n.norm()));
  const Mat dirs = sphere_directions(2, a.m, a.common.seed);
  Mat pts(body->dim(), a.m);
  Vec res(a.m);
  for (Eigen::Index j = 0; j < a.m; ++j) {
    pts.col(j) = sec.embed(sec.figure->support_point(dirs.col(j)));
    res(j) = std::abs(body->gauge(pts.col(j)) - 1.0);
  }
  json meta;
  meta["body"] = body->label();
  meta["plane"] = {{"normal", to_json(Vec(n.normalized()))}, {"offset", a.offset / n.norm()}};
  return emit_curve("section", pts, res, meta, a, tol, out);
}

// ---------------------------------------------------------------------------------------------
// body validate

int run_validate(const std::string& path, Eigen::Index samples, const Common& c, std::ostream& out) {
  const BodyPtr body = load(path);
  const Tolerances tol = resolve_tolerances(c);
  const OracleReport r = validate_oracles(*body, samples, c.seed);
  const double symmetry = o_symmetry_residual(*body, Vec::Zero(body->dim()), 512, c.seed);
  const bool ok = r.homogeneity <= tol.tangency && r.subadditivity <= tol.tangency && r.boundary <= tol.tangency;
  json doc;
  doc["body"] = body->label();
  doc["kind"] = to_string(body->kind());
  doc["dimension"] = body->dim();
  doc["diameter"] = body->diameter();
  doc["smooth"] = body->is_smooth();
  doc["center"] = to_json(body->center());
  doc["o_symmetry_residual"] = symmetry;
  doc["homogeneity"] = r.homogeneity;
  doc["subadditivity"] = r.subadditivity;
  doc["boundary"] = r.boundary;
  doc["gate"] = tol.tangency;
  doc["samples"] = r.samples;
  doc["seed"] = c.seed;
  doc["valid"] = ok;
  out << doc.dump(2) << "\n";
  return ok ? kConsistent : kHypothesisViolated;
}

// ---------------------------------------------------------------------------------------------
// sweep

struct SweepArgs {
  Common common;
  std::string check = "radon";
  std::string outer;
  std::string axes = "1,1,1";
  double from = 1.5, to = 3.0;
  int steps = 7;
  double scale = 1.0;
  double ball_radius = 1.0;
  double slab = 0.2;
  std::string pole = "2,0,0";
  Eigen::Index apexes = 16;
  Eigen::Index curve_samples = 64;
  std::string out;
};

int run_sweep(const SweepArgs& a, std::ostream& out) {
  if (a.steps < 1) throw UsageError("--steps must be at least 1");
  if (!(a.from > 1.0) || !(a.to > 1.0)) throw UsageError("exponents must exceed 1");
  const bool nested = a.check == "t1" || a.check == "t3";
  if (nested && a.outer.empty()) throw UsageError("--outer is required for sweeps of " + a.check);
  const BodyPtr outer = nested ? load(a.outer) : nullptr;
  const Vec axes = parse_vector(a.axes, "--axes");
  CheckConfig cfg;
  cfg.tol = resolve_tolerances(a.common);
  cfg.seed = a.common.seed;
  cfg.apex_samples = a.apexes;
  cfg.curve_samples = a.curve_samples;

  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  bool alarm = false;
  char buf[64];
  for (int k = 0; k < a.steps; ++k) {
    const double p = a.steps == 1 ? a.from : a.from + (a.to - a.from) * k / (a.steps - 1);
    std::snprintf(buf, sizeof buf, "l%.6g-ball", p);
    const BodyPtr body = scaled(make_pball(p, axes), a.scale, buf);
    CheckReport r;
    try {
      if (a.check == "t1") r = check_theorem1(body, outer, cfg);
      else if (a.check == "t3") r = check_theorem3(body, outer, cfg);
      else if (a.check == "t4") r = check_theorem4(body, a.ball_radius, cfg);
      else if (a.check == "basico") r = check_theorem_basico(body, Vec::Zero(body->dim()), a.slab, cfg);
      else if (a.check == "pole") r = check_pole(body, HPointd::from_affine(parse_point(a.pole, "--pole", body->dim())), cfg);
      else r = check_theorem_radon(body, cfg);
    } catch (const GeometryError& e) {
      if (!is_precondition(e.kind())) throw;
      r = precondition_report(a.check, {body->label()}, cfg, e);
    }
    alarm = alarm || r.verdict == Outcome::ConclusionViolated;
    for (const Stage& s : r.stages) {
      if (std::find(columns.begin(), columns.end(), s.name) == columns.end()) columns.push_back(s.name);
    }
    std::vector<std::string> row;
    std::snprintf(buf, sizeof buf, "%.17g", p);
    row.emplace_back(buf);
    row.emplace_back(to_string(r.verdict));
    for (const std::string& name : columns) {
      const Stage* s = r.find(name);
      if (s && s->value) {
        std::snprintf(buf, sizeof buf, "%.17g", *s->value);
        row.emplace_back(buf);
      } else {
        row.emplace_back("");
      }
    }
    rows.push_back(std::move(row));
    std::snprintf(buf, sizeof buf, "p=%-8.4g ", p);
    out << buf << to_string(r.verdict) << "\n";
  }

  std::ostringstream csv;
  const auto quote = [](const std::string& s) { return "\"" + s + "\""; };
  csv << "exponent,verdict";
  for (const std::string& c : columns) csv << "," << quote(c);
  csv << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) csv << (i ? "," : "") << row[i];
    for (std::size_t i = row.size(); i < columns.size() + 2; ++i) csv << ",";
    csv << "\n";
  }
  if (!a.out.empty()) write_text(a.out, csv.str());
  return alarm ? kConclusionViolated : kConsistent;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical checks of ellipsoid characterizations for convex bodies", "eforge"};
  app.require_subcommand(1);
  std::function<int()> action;

  // body validate
  CLI::App* body_cmd = app.add_subcommand("body", "Body specification tools")->require_subcommand(1);
  CLI::App* validate = body_cmd->add_subcommand("validate", "Check the oracles of a body specification");
  std::string validate_path;
  Eigen::Index validate_samples = 256;
  Common validate_common;
  validate->add_option("--body,body", validate_path, "Body specification file")->required();
  validate->add_option("--samples", validate_samples, "Direction samples")->check(CLI::PositiveNumber);
  add_common(validate, validate_common);
  validate->callback([&] { action = [&] { return run_validate(validate_path, validate_samples, validate_common, out); }; });

  // sample
  CLI::App* sample = app.add_subcommand("sample", "Export sampled curves as CSV with a JSON sidecar")->require_subcommand(1);
  SampleArgs sa;
  const auto sample_base = [&](CLI::App* cmd) {
    cmd->add_option("--body", sa.body, "Body specification file")->required();
    cmd->add_option("--m", sa.m, "Number of curve samples")->check(CLI::PositiveNumber);
    cmd->add_option("--out", sa.out, "CSV output path; the sidecar is <out>.json");
    add_common(cmd, sa.common);
  };
  CLI::App* s_graze = sample->add_subcommand("graze", "Graze seen from an exterior apex");
  sample_base(s_graze);
  s_graze->add_option("--apex", sa.apex, "Apex, comma-separated")->required();
  CLI::App* s_shadow = sample->add_subcommand("shadow", "Shadow boundary for a direction");
  sample_base(s_shadow);
  s_shadow->add_option("--direction", sa.direction, "Direction, comma-separated")->required();
  CLI::App* s_omega = sample->add_subcommand("omega", "Intersection of the support cones from two apexes");
  sample_base(s_omega);
  s_omega->add_option("--apex", sa.apex, "First apex")->required();
  s_omega->add_option("--apex2", sa.apex2, "Second apex")->required();
  CLI::App* s_section = sample->add_subcommand("section", "Boundary of a planar section <normal, x> = offset");
  sample_base(s_section);
  s_section->add_option("--normal", sa.normal, "Plane normal")->required();
  s_section->add_option("--offset", sa.offset, "Plane offset");

  const auto run_sample = [&](const std::string& which) {
    const BodyPtr body = load(sa.body);
    const Tolerances tol = resolve_tolerances(sa.common);
    const Eigen::Index n = body->dim();
    if (which == "graze") return emit_curve(graze(*body, parse_point(sa.apex, "--apex", n), sa.m, sa.common.seed), sa, tol, out);
    if (which == "shadow") {
      return emit_curve(shadow_boundary(*body, parse_point(sa.direction, "--direction", n), sa.m, sa.common.seed), sa,
                        tol, out);
    }
    if (which == "omega") {
      return emit_curve(cone_intersection(*body, parse_point(sa.apex, "--apex", n), parse_point(sa.apex2, "--apex2", n),
                                          sa.m, sa.common.seed),
                        sa, tol, out);
    }
    return run_section_sample(sa, body, tol, out);
  };
  for (CLI::App* cmd : {s_graze, s_shadow, s_omega, s_section}) {
    cmd->callback([&, cmd] {
      const std::string name = cmd->get_name();
      action = [&, name] { return run_sample(name); };
    });
  }

  // check
  CLI::App* check = app.add_subcommand("check", "Run a theorem check and write its report")->require_subcommand(1);
  CheckArgs ca;
  const auto check_base = [&](CLI::App* cmd) {
    cmd->add_option("--apexes", ca.apexes, "Apex or direction samples")->check(CLI::PositiveNumber);
    cmd->add_option("--curve-samples", ca.curve_samples, "Samples per curve")->check(CLI::PositiveNumber);
    cmd->add_option("--planes", ca.planes, "Plane samples")->check(CLI::PositiveNumber);
    cmd->add_option("--report", ca.report, "Report JSON path, or - for standard output");
    cmd->add_flag("--timing", ca.timing, "Include wall time in the report");
    add_common(cmd, ca.common);
  };
  const auto nested = [&](CLI::App* cmd) {
    cmd->add_option("--inner", ca.inner, "Inner body specification")->required();
    cmd->add_option("--outer", ca.outer, "Outer body specification")->required();
  };
  CLI::App* c_t1 = check->add_subcommand("t1", "Ellipsoidal support cones from the outer boundary");
  nested(c_t1);
  CLI::App* c_t2 = check->add_subcommand("t2", "Cone intersections lying in sections through a point");
  nested(c_t2);
  c_t2->add_option("--p", ca.point, "The point p");
  CLI::App* c_t3 = check->add_subcommand("t3", "Outer boundary points as poles of the inner body");
  nested(c_t3);
  CLI::App* c_basico = check->add_subcommand("basico", "Symmetric sections in slabs about planes through p");
  c_basico->add_option("--body", ca.body, "Body specification")->required();
  c_basico->add_option("--p", ca.point, "The point p");
  c_basico->add_option("--slab", ca.slab, "Slab width")->check(CLI::PositiveNumber);
  CLI::App* c_t4 = check->add_subcommand("t4", "Elliptic sections by planes tangent to a centred ball");
  c_t4->add_option("--body", ca.body, "Body specification")->required();
  c_t4->add_option("--ball-radius", ca.ball_radius, "Radius of the ball")->check(CLI::PositiveNumber);
  CLI::App* c_radon = check->add_subcommand("radon", "Central sections are Radon curves");
  c_radon->add_option("--body", ca.body, "Body specification")->required();
  CLI::App* c_pole = check->add_subcommand("pole", "Pole and polar of a point");
  c_pole->add_option("--body", ca.body, "Body specification")->required();
  auto* pole_opt = c_pole->add_option("--point", ca.pole, "Finite point");
  c_pole->add_option("--direction", ca.direction, "Point at infinity in this direction")->excludes(pole_opt);
  for (CLI::App* cmd : {c_t1, c_t2, c_t3, c_basico, c_t4, c_radon, c_pole}) check_base(cmd);

  const auto run_named_check = [&](const std::string& which) -> int {
    if (which == "t1" || which == "t2" || which == "t3") {
      const BodyPtr inner = load(ca.inner);
      const BodyPtr outer = load(ca.outer);
      const std::vector<std::string> names{inner->label(), outer->label()};
      if (which == "t1") return run_check("t1", ca, names, [&](const CheckConfig& c) { return check_theorem1(inner, outer, c); }, out);
      if (which == "t3") return run_check("t3", ca, names, [&](const CheckConfig& c) { return check_theorem3(inner, outer, c); }, out);
      const Vec p = parse_point(ca.point, "--p", outer->dim());
      return run_check("t2", ca, names, [&](const CheckConfig& c) { return check_theorem2(inner, outer, p, c); }, out);
    }
    const BodyPtr body = load(ca.body);
    const std::vector<std::string> names{body->label()};
    if (which == "basico") {
      const Vec p = parse_point(ca.point, "--p", body->dim());
      return run_check("basico", ca, names,
                       [&](const CheckConfig& c) { return check_theorem_basico(body, p, ca.slab, c); }, out);
    }
    if (which == "t4") {
      return run_check("t4", ca, names, [&](const CheckConfig& c) { return check_theorem4(body, ca.ball_radius, c); }, out);
    }
    if (which == "radon") {
      return run_check("radon", ca, names, [&](const CheckConfig& c) { return check_theorem_radon(body, c); }, out);
    }
    if (ca.pole.empty() && ca.direction.empty()) throw UsageError("check pole needs --point or --direction");
    const HPointd o = ca.pole.empty() ? HPointd::at_infinity(parse_point(ca.direction, "--direction", body->dim()))
                                      : HPointd::from_affine(parse_point(ca.pole, "--point", body->dim()));
    return run_check("pole", ca, names, [&](const CheckConfig& c) { return check_pole(body, o, c); }, out);
  };
  for (CLI::App* cmd : {c_t1, c_t2, c_t3, c_basico, c_t4, c_radon, c_pole}) {
    cmd->callback([&, cmd] {
      const std::string name = cmd->get_name();
      action = [&, name] { return run_named_check(name); };
    });
  }

  // sweep
  CLI::App* sweep = app.add_subcommand("sweep", "Run a check over the l_p ball family and tabulate stage values");
  SweepArgs sw;
  sweep->add_option("--check", sw.check, "Check to run")->check(CLI::IsMember({"t1", "t3", "t4", "basico", "radon", "pole"}));
  sweep->add_option("--from", sw.from, "First exponent");
  sweep->add_option("--to", sw.to, "Last exponent");
  sweep->add_option("--steps", sw.steps, "Number of exponents");
  sweep->add_option("--axes", sw.axes, "Semi-axes of the family");
  sweep->add_option("--scale", sw.scale, "Uniform scale of the family")->check(CLI::PositiveNumber);
  sweep->add_option("--outer", sw.outer, "Outer body for t1 and t3 (the family is the inner body)");
  sweep->add_option("--ball-radius", sw.ball_radius, "Ball radius for t4")->check(CLI::PositiveNumber);
  sweep->add_option("--slab", sw.slab, "Slab width for basico")->check(CLI::PositiveNumber);
  sweep->add_option("--point", sw.pole, "Point for pole");
  sweep->add_option("--apexes", sw.apexes, "Apex or direction samples")->check(CLI::PositiveNumber);
  sweep->add_option("--curve-samples", sw.curve_samples, "Samples per curve")->check(CLI::PositiveNumber);
  sweep->add_option("--out", sw.out, "CSV output path");
  add_common(sweep, sw.common);
  sweep->callback([&] { action = [&] { return run_sweep(sw, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kConsistent : kUsageError;
  }
  try {
    return action ? action() : kUsageError;
  } catch (const UsageError& e) {
    err << "eforge: " << e.what() << "\n";
    return kUsageError;
  } catch (const GeometryError& e) {
    err << "eforge: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "eforge: " << e.what() << "\n";
    return kUsageError;
  }
}

}  // namespace eforge::cli
