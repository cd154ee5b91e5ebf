#pragma once

namespace mobius::tol {

/// Relative threshold below which a self-product counts as zero.
inline constexpr double zero = 1e-12;
/// Singular values below rank * sigma_max are discarded.
inline constexpr double rank = 1e-10;
/// Singular values in (rank, rank * rank_band) * sigma_max make the rank ambiguous.
inline constexpr double rank_band = 100.0;
inline constexpr double lorentz = 1e-9;
/// Sphere vs half-space decision when unlifting a ball.
inline constexpr double plane = 1e-10;
/// Finite vs infinity decision when unlifting a light ray (relative to |w|).
inline constexpr double point_infinity = 1e-13;
/// Tangency band for ball relations.
inline constexpr double relation = 1e-9;
/// Accepted light-cone defect when unlifting image rays.
inline constexpr double light_cone = 1e-9;

}  // namespace mobius::tol
