#pragma once

#include <Eigen/Dense>
#include <random>

#include "haar/matrix.hpp"
#include "haar/sampling.hpp"

namespace testutil {

inline haar::ComplexMat random_mat(std::size_t n, std::uint64_t key, double scale = 1.0) {
  auto rng = haar::sampling::substream(12345, key);
  return haar::sampling::ginibre(n, rng) * scale;
}

inline Eigen::MatrixXcd to_eigen(const haar::ComplexMat& m) {
  const auto n = static_cast<Eigen::Index>(m.dim());
  Eigen::MatrixXcd e(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) e(i, j) = m(i, j);
  return e;
}

inline double max_abs_diff(const haar::ComplexMat& a, const haar::ComplexMat& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
  return d;
}

}  // namespace testutil
