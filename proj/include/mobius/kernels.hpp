#pragma once

// Data-parallel inner loops over packed column sets (one Minkowski vector per
// column, time-like coordinate in the last row).
//
// mobius::kernels holds the OpenMP versions used by the library;
// mobius::kernels::serial holds the plain-loop reference versions. Both
// return bit-identical results: every entry is computed by the same scalar
// expression and reductions break ties on the smallest index.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>

namespace mobius::kernels {

using Index = Eigen::Index;

inline double lorentz_dot(const double* a, const double* b, Index dim) {
  double s = 0.0;
  for (Index k = 0; k + 1 < dim; ++k) s += a[k] * b[k];
  return s - a[dim - 1] * b[dim - 1];
}

struct GramComparison {
  /// max |<a_i,a_j> - <b_i,b_j>|
  double max_difference = 0.0;
  /// max |<a_i,a_j>|
  double max_entry = 0.0;
  Index row = -1;
  Index col = -1;
};

struct TupleDiscrepancy {
  double value = 0.0;
  std::array<Index, 4> tuple{-1, -1, -1, -1};
  long long tuples = 0;
};

struct ColumnDistance {
  double max_distance = 0.0;
  Index column = -1;
};

/// Number of threads the parallel kernels will use.
int max_threads();

Eigen::MatrixXd gram(const Eigen::MatrixXd& cols);
GramComparison compare_grams(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);
/// Max over ordered 4-tuples of distinct indices of the relative difference
/// |x - y| / max(1, x, y) of the absolute cross-ratios
/// sqrt(g_ab g_cd / (g_ac g_bd)) built from the two light-ray Grams.
TupleDiscrepancy cross_ratio_scan(const Eigen::MatrixXd& gram_a, const Eigen::MatrixXd& gram_b);
/// max_i |a_i - b_i| (Euclidean).
ColumnDistance max_column_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

namespace serial {

Eigen::MatrixXd gram(const Eigen::MatrixXd& cols);
GramComparison compare_grams(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);
TupleDiscrepancy cross_ratio_scan(const Eigen::MatrixXd& gram_a, const Eigen::MatrixXd& gram_b);
ColumnDistance max_column_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

}  // namespace serial

namespace detail {

inline double cross_ratio_from_gram(const Eigen::MatrixXd& g, Index a, Index b, Index c, Index d) {
  return std::sqrt((g(a, b) * g(c, d)) / (g(a, c) * g(b, d)));
}

inline double relative_gap(double x, double y) {
  const double scale = std::max({1.0, std::abs(x), std::abs(y)});
  return std::abs(x - y) / scale;
}

/// Strict "better" for max-reductions: larger value, ties to the smaller index.
template <typename Key>
inline bool improves(double value, const Key& key, double best, const Key& best_key) {
  if (value > best) return true;
  return value == best && key < best_key;
}

}  // namespace detail

}  // namespace mobius::kernels
