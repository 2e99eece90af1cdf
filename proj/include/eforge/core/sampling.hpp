#pragma once

#include "eforge/core/types.hpp"

#include <cstdint>

namespace eforge {

/// Deterministic quasi-uniform unit vectors in R^dim, one per column.
///
/// dim 2: equally spaced angles, offset by a seed-derived phase.
/// dim 3: Fibonacci spiral, rotated by a seed-derived rotation (seed 0 leaves it unrotated).
/// dim >= 4: Halton points pushed through Box-Muller, starting at a seed-derived index.
Mat sphere_directions(Eigen::Index dim, Eigen::Index count, std::uint64_t seed = 0);

/// Random well-conditioned invertible matrix (singular values in [1/spread, spread]).
Mat random_well_conditioned(Eigen::Index dim, std::uint64_t seed, double spread = 2.0);

/// Random rotation (Haar-like via QR of a Gaussian matrix, det = +1).
Mat random_rotation(Eigen::Index dim, std::uint64_t seed);

}  // namespace eforge
