#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <string_view>

namespace eforge {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class ErrorKind {
  InvalidArgument,
  NonCollinear,
  DegenerateQuadruple,
  DegenerateCloud,
  NotCoplanar,
  LineMissesBody,
  PlaneMissesBody,
  ApexInsideBody,
  NonSmoothBody,
  LineMeetsBody,
  ApexLineMissesBody,
  CoincidentApexes,
  DegenerateCone,
  RayNotInterior,
  NotEllipsoidal,
  EndpointNotOnBoundary,
  NotFound,
  NotANorm,
  PointOnBoundary,
  DegenerateLines,
  BodiesNotNested,
  NotOSymmetric,
  BallTooLarge,
  SearchFailed,
  ParseError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonCollinear: return "NonCollinear";
    case ErrorKind::DegenerateQuadruple: return "DegenerateQuadruple";
    case ErrorKind::DegenerateCloud: return "DegenerateCloud";
    case ErrorKind::NotCoplanar: return "NotCoplanar";
    case ErrorKind::LineMissesBody: return "LineMissesBody";
    case ErrorKind::PlaneMissesBody: return "PlaneMissesBody";
    case ErrorKind::ApexInsideBody: return "ApexInsideBody";
    case ErrorKind::NonSmoothBody: return "NonSmoothBody";
    case ErrorKind::LineMeetsBody: return "LineMeetsBody";
    case ErrorKind::ApexLineMissesBody: return "ApexLineMissesBody";
    case ErrorKind::CoincidentApexes: return "CoincidentApexes";
    case ErrorKind::DegenerateCone: return "DegenerateCone";
    case ErrorKind::RayNotInterior: return "RayNotInterior";
    case ErrorKind::NotEllipsoidal: return "NotEllipsoidal";
    case ErrorKind::EndpointNotOnBoundary: return "EndpointNotOnBoundary";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::NotANorm: return "NotANorm";
    case ErrorKind::PointOnBoundary: return "PointOnBoundary";
    case ErrorKind::DegenerateLines: return "DegenerateLines";
    case ErrorKind::BodiesNotNested: return "BodiesNotNested";
    case ErrorKind::NotOSymmetric: return "NotOSymmetric";
    case ErrorKind::BallTooLarge: return "BallTooLarge";
    case ErrorKind::SearchFailed: return "SearchFailed";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace eforge
