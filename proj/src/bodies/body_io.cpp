#include "eforge/bodies/body_io.hpp"

#include <fstream>
#include <sstream>

namespace eforge {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw GeometryError(ErrorKind::ParseError, what); }

const json& field(const json& doc, const char* key) {
  if (!doc.contains(key)) parse_fail(std::string("missing field '") + key + "'");
  return doc.at(key);
}

}  // namespace

json to_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json to_json(const Mat& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(to_json(Vec(m.row(i).transpose())));
  return out;
}

Vec vec_from_json(const json& j) {
  if (!j.is_array()) parse_fail("expected an array of numbers");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) parse_fail("expected a number");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

Mat mat_from_json(const json& j) {
  if (!j.is_array() || j.empty()) parse_fail("expected a non-empty list of rows");
  const auto cols = vec_from_json(j[0]).size();
  Mat m(static_cast<Eigen::Index>(j.size()), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Vec row = vec_from_json(j[i]);
    if (row.size() != cols) parse_fail("ragged matrix rows");
    m.row(static_cast<Eigen::Index>(i)) = row.transpose();
  }
  return m;
}

BodyPtr body_from_json(const json& doc) {
  if (!doc.is_object()) parse_fail("body document must be an object");
  const std::string kind = field(doc, "kind").get<std::string>();
  const json& dim_field = field(doc, "dimension");
  if (!dim_field.is_number_integer()) parse_fail("dimension must be an integer");
  const auto n = dim_field.get<Eigen::Index>();
  std::string name = doc.value("name", std::string{});

  BodyPtr body;
  try {
    if (kind == "ellipsoid") {
      body = make_ellipsoid(vec_from_json(field(doc, "center")), mat_from_json(field(doc, "matrix")), name);
    } else if (kind == "pball") {
      body = make_pball(field(doc, "exponent").get<double>(), vec_from_json(field(doc, "semi_axes")), name);
    } else if (kind == "polytope") {
      body = make_polytope(mat_from_json(field(doc, "vertices")).transpose(), name);
    } else if (kind == "affine_image") {
      BodyPtr inner = body_from_json(field(doc, "inner"));
      body = make_affine_image(mat_from_json(field(doc, "linear")), vec_from_json(field(doc, "translation")), inner, name);
    } else {
      parse_fail("unknown body kind '" + kind + "'");
    }
  } catch (const json::exception& e) {
    parse_fail(e.what());
  } catch (const GeometryError& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    parse_fail(e.what());
  }
  if (body->dim() != n) parse_fail("dimension field does not match the parameters");
  return body;
}

json body_to_json(const ConvexBody& body) {
  json doc;
  doc["kind"] = std::string(to_string(body.kind()));
  doc["dimension"] = body.dim();
  if (!body.name().empty()) doc["name"] = body.name();
  switch (body.kind()) {
    case BodyKind::Ellipsoid: {
      const auto& e = static_cast<const Ellipsoid&>(body);
      doc["center"] = to_json(e.center());
      doc["matrix"] = to_json(e.shape());
      break;
    }
    case BodyKind::PBall: {
      const auto& p = static_cast<const PBall&>(body);
      doc["exponent"] = p.exponent();
      doc["semi_axes"] = to_json(p.semi_axes());
      break;
    }
    case BodyKind::Polytope: {
      const auto& p = static_cast<const Polytope&>(body);
      doc["vertices"] = to_json(Mat(p.vertices().transpose()));
      break;
    }
    case BodyKind::AffineImage: {
      const auto& a = static_cast<const AffineImage&>(body);
      doc["linear"] = to_json(a.linear());
      doc["translation"] = to_json(a.translation());
      doc["inner"] = body_to_json(*a.inner());
      break;
    }
    case BodyKind::Section:
      throw GeometryError(ErrorKind::InvalidArgument, "planar sections have no body document");
  }
  return doc;
}

BodyPtr parse_body(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    parse_fail(e.what());
  }
  return body_from_json(doc);
}

std::string serialize_body(const ConvexBody& body) { return body_to_json(body).dump(2) + "\n"; }

BodyPtr load_body(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_body(ss.str());
}

void save_body(const ConvexBody& body, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw GeometryError(ErrorKind::InvalidArgument, "cannot write " + path.string());
  out << serialize_body(body);
}

}  // namespace eforge
