#include "eforge/core/tolerances.hpp"

#include "eforge/core/types.hpp"

#include <cstdlib>

namespace eforge {

namespace {

template <typename Fn>
void visit(Tolerances& t, Fn&& fn) {
  fn("collinearity", t.collinearity);
  fn("boundary", t.boundary);
  fn("tangency", t.tangency);
  fn("planarity", t.planarity);
  fn("ellipse", t.ellipse);
  fn("symmetry", t.symmetry);
  fn("pole", t.pole);
  fn("hausdorff", t.hausdorff);
  fn("margin", t.margin);
  fn("angle", t.angle);
  fn("affine_diameter", t.affine_diameter);
  fn("conjugacy", t.conjugacy);
  fn("contact", t.contact);
  fn("birkhoff", t.birkhoff);
  fn("bisector", t.bisector);
  fn("relation", t.relation);
  fn("concentric", t.concentric);
  fn("homothetic", t.homothetic);
  fn("claim", t.claim);
}

}  // namespace

Tolerances Tolerances::profile(std::string_view name) {
  if (name.empty() || name == "default") return Tolerances{};
  if (name == "strict") return Tolerances{}.scaled(0.1);
  if (name == "loose") return Tolerances{}.scaled(10.0);
  throw GeometryError(ErrorKind::InvalidArgument, "unknown tolerance profile '" + std::string(name) + "'");
}

Tolerances Tolerances::from_environment() {
  const char* env = std::getenv("ELLIPSOID_FORGE_PROFILE");
  return profile(env == nullptr ? std::string_view{} : std::string_view{env});
}

void Tolerances::set(std::string_view name, double value) {
  if (!(value > 0)) throw GeometryError(ErrorKind::InvalidArgument, "tolerance must be positive");
  bool found = false;
  visit(*this, [&](std::string_view key, double& slot) {
    if (key == name) {
      slot = value;
      found = true;
    }
  });
  if (!found) throw GeometryError(ErrorKind::InvalidArgument, "unknown tolerance '" + std::string(name) + "'");
}

double Tolerances::get(std::string_view name) const {
  double out = 0;
  bool found = false;
  visit(const_cast<Tolerances&>(*this), [&](std::string_view key, double& slot) {
    if (key == name) {
      out = slot;
      found = true;
    }
  });
  if (!found) throw GeometryError(ErrorKind::InvalidArgument, "unknown tolerance '" + std::string(name) + "'");
  return out;
}

std::vector<std::pair<std::string, double>> Tolerances::items() const {
  std::vector<std::pair<std::string, double>> out;
  visit(const_cast<Tolerances&>(*this), [&](std::string_view key, double& slot) { out.emplace_back(key, slot); });
  return out;
}

Tolerances Tolerances::scaled(double factor) const {
  Tolerances t = *this;
  visit(t, [&](std::string_view, double& slot) { slot *= factor; });
  return t;
}

}  // namespace eforge
