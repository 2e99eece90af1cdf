#pragma once

#include "eforge/bodies/convex_body.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace eforge {

/// Body specification documents.
///
///   {"kind": "ellipsoid", "dimension": 3, "center": [..], "matrix": [[..], ..]}
///   {"kind": "pball", "dimension": 3, "exponent": 4, "semi_axes": [..]}
///   {"kind": "polytope", "dimension": 3, "vertices": [[..], ..]}
///   {"kind": "affine_image", "dimension": 3, "linear": [[..], ..], "translation": [..], "inner": {..}}
///
/// An optional "name" labels the body in reports. Doubles are written in shortest round-trip
/// form, so parse -> serialize -> parse is the identity.
BodyPtr body_from_json(const nlohmann::json& doc);
nlohmann::json body_to_json(const ConvexBody& body);

BodyPtr parse_body(const std::string& text);
std::string serialize_body(const ConvexBody& body);

BodyPtr load_body(const std::filesystem::path& path);
void save_body(const ConvexBody& body, const std::filesystem::path& path);

nlohmann::json to_json(const Vec& v);
nlohmann::json to_json(const Mat& m);  // list of rows
Vec vec_from_json(const nlohmann::json& j);
Mat mat_from_json(const nlohmann::json& j);  // list of rows

}  // namespace eforge
