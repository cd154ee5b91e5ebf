#include "mobius/kernels.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace mobius::kernels::serial {

Eigen::MatrixXd gram(const Eigen::MatrixXd& cols) {
  const Index m = cols.cols();
  const Index dim = cols.rows();
  Eigen::MatrixXd g(m, m);
  for (Index i = 0; i < m; ++i) {
    for (Index j = i; j < m; ++j) {
      const double s = lorentz_dot(cols.col(i).data(), cols.col(j).data(), dim);
      g(i, j) = s;
      g(j, i) = s;
    }
  }
  return g;
}

GramComparison compare_grams(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const Index m = a.cols();
  const Index dim = a.rows();
  GramComparison out;
  double best = -1.0;
  std::pair<Index, Index> best_key{m, m};
  for (Index i = 0; i < m; ++i) {
    for (Index j = i; j < m; ++j) {
      const double ga = lorentz_dot(a.col(i).data(), a.col(j).data(), dim);
      const double gb = lorentz_dot(b.col(i).data(), b.col(j).data(), dim);
      double diff = std::abs(ga - gb);
      if (std::isnan(diff)) diff = std::numeric_limits<double>::infinity();
      out.max_entry = std::max(out.max_entry, std::abs(ga));
      if (detail::improves(diff, std::pair{i, j}, best, best_key)) {
        best = diff;
        best_key = {i, j};
      }
    }
  }
  if (m > 0) {
    out.max_difference = best;
    out.row = best_key.first;
    out.col = best_key.second;
  }
  return out;
}

TupleDiscrepancy cross_ratio_scan(const Eigen::MatrixXd& gram_a, const Eigen::MatrixXd& gram_b) {
  const Index m = gram_a.rows();
  TupleDiscrepancy out;
  double best = -1.0;
  std::array<Index, 4> best_key{m, m, m, m};
  long long count = 0;
  for (Index a = 0; a < m; ++a) {
    for (Index b = 0; b < m; ++b) {
      if (b == a) continue;
      for (Index c = 0; c < m; ++c) {
        if (c == a || c == b) continue;
        for (Index d = 0; d < m; ++d) {
          if (d == a || d == b || d == c) continue;
          const double x = detail::cross_ratio_from_gram(gram_a, a, b, c, d);
          const double y = detail::cross_ratio_from_gram(gram_b, a, b, c, d);
          double gap = detail::relative_gap(x, y);
          if (std::isnan(gap)) gap = std::numeric_limits<double>::infinity();
          ++count;
          const std::array<Index, 4> key{a, b, c, d};
          if (detail::improves(gap, key, best, best_key)) {
            best = gap;
            best_key = key;
          }
        }
      }
    }
  }
  out.tuples = count;
  if (count > 0) {
    out.value = best;
    out.tuple = best_key;
  }
  return out;
}

ColumnDistance max_column_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  ColumnDistance out;
  double best = -1.0;
  Index best_key = a.cols();
  for (Index i = 0; i < a.cols(); ++i) {
    double d = (a.col(i) - b.col(i)).norm();
    if (std::isnan(d)) d = std::numeric_limits<double>::infinity();
    if (detail::improves(d, i, best, best_key)) {
      best = d;
      best_key = i;
    }
  }
  if (a.cols() > 0) {
    out.max_distance = best;
    out.column = best_key;
  }
  return out;
}

}  // namespace mobius::kernels::serial
