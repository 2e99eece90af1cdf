#include "eforge/core/sampling.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace eforge {

namespace {

double radical_inverse(std::uint64_t index, std::uint64_t base) {
  double inv = 1.0 / static_cast<double>(base);
  double f = inv;
  double r = 0.0;
  while (index > 0) {
    r += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return r;
}

constexpr std::uint64_t kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

Mat gaussian_matrix(Eigen::Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat g(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) g(i, j) = normal(rng);
  }
  return g;
}

}  // namespace

Mat random_rotation(Eigen::Index dim, std::uint64_t seed) {
  Eigen::HouseholderQR<Mat> qr(gaussian_matrix(dim, seed));
  Mat q = qr.householderQ() * Mat::Identity(dim, dim);
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (r(i, i) < 0) q.col(i) = -q.col(i);
  }
  if (q.determinant() < 0) q.col(0) = -q.col(0);
  return q;
}

Mat random_well_conditioned(Eigen::Index dim, std::uint64_t seed, double spread) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> unif(std::log(1.0 / spread), std::log(spread));
  Vec s(dim);
  for (Eigen::Index i = 0; i < dim; ++i) s(i) = std::exp(unif(rng));
  return random_rotation(dim, seed) * s.asDiagonal() * random_rotation(dim, seed + 1).transpose();
}

Mat sphere_directions(Eigen::Index dim, Eigen::Index count, std::uint64_t seed) {
  if (dim < 2 || count < 1) {
    throw GeometryError(ErrorKind::InvalidArgument, "sphere_directions needs dim >= 2, count >= 1");
  }
  Mat out(dim, count);
  constexpr double pi = std::numbers::pi;
  if (dim == 2) {
    const double phase = seed == 0 ? 0.0 : radical_inverse(seed, 2);
    for (Eigen::Index i = 0; i < count; ++i) {
      const double t = 2.0 * pi * (static_cast<double>(i) + phase) / static_cast<double>(count);
      out.col(i) << std::cos(t), std::sin(t);
    }
    return out;
  }
  if (dim == 3) {
    const double golden = pi * (3.0 - std::sqrt(5.0));
    for (Eigen::Index i = 0; i < count; ++i) {
      const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(count);
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double t = golden * static_cast<double>(i);
      out.col(i) << r * std::cos(t), r * std::sin(t), z;
    }
    if (seed != 0) out = random_rotation(3, seed) * out;
    return out;
  }
  if (dim > 8) {
    throw GeometryError(ErrorKind::InvalidArgument, "sphere_directions supports dim <= 8");
  }
  // Box-Muller needs two uniforms per Gaussian coordinate.
  const std::uint64_t start = 1 + seed * 7919;
  for (Eigen::Index i = 0; i < count; ++i) {
    const std::uint64_t idx = start + static_cast<std::uint64_t>(i);
    Vec g(dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
      const double u1 = std::max(radical_inverse(idx, kPrimes[(2 * k) % 16]), 1e-300);
      const double u2 = radical_inverse(idx, kPrimes[(2 * k + 1) % 16]);
      g(k) = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
    }
    out.col(i) = g.normalized();
  }
  return out;
}

}  // namespace eforge
