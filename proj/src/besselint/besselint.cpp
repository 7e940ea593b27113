#include "haar/besselint.hpp"

#include <algorithm>
#include <cmath>

#include "haar/bigrat.hpp"
#include "haar/error.hpp"
#include "haar/quadrature.hpp"
#include "haar/schur.hpp"

namespace haar::besselint {

cplx i0_series(cplx x) {
  cplx term = 1.0, sum = 1.0;
  for (int j = 1; j < 10000; ++j) {
    term *= x / (double(j) * double(j));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum) && double(j) * j > std::abs(x)) break;
  }
  return sum;
}

double j0(double x) {
  const double v = std::abs(x) <= 10.0 ? i0_series(-0.25 * x * x).real() : std::cyl_bessel_j(0.0, std::abs(x));
  if (!(std::abs(v) <= 1.0 + 1e-12)) throw Error("j0 out of range");
  return v;
}

cplx fn_rank1(cplx z2, int n) {
  if (n < 2) throw PreconditionError("fn_rank1 requires n >= 2");
  cplx term = 1.0, sum = 1.0;
  for (int j = 0; j < 10000; ++j) {
    term *= z2 / (double(j + 1) * double(j + n));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum) && double(j + 1) * (j + n) > std::abs(z2)) break;
  }
  return sum;
}

cplx fn_rank1_quadrature(cplx z2, int n, std::size_t nodes) {
  if (n < 2) throw PreconditionError("fn_rank1 requires n >= 2");
  const QuadratureRule rule = jacobi01(n - 2, nodes);
  return double(n - 1) * rule.integrate([&](double t) { return i0_series(t * z2); });
}

cplx fn_general(const std::vector<cplx>& z2, int n, std::size_t nodes) {
  const int m = static_cast<int>(z2.size());
  if (m < 1 || m > 3) throw PreconditionError("fn_general supports 1 <= m <= 3");
  if (2 * m > n) throw PreconditionError("fn_general requires 2m <= n");
  double scale = 0.0;
  for (const cplx& v : z2) scale = std::max(scale, std::abs(v));
  for (int i = 0; i < m; ++i) {
    if (z2[i] == cplx(0.0)) throw PreconditionError("fn_general needs nonzero eigenvalues");
    for (int j = 0; j < i; ++j)
      if (std::abs(z2[i] - z2[j]) < kDistinctGap * scale) throw PreconditionError("z^2 values too close");
  }
  cplx vdm = 1.0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) vdm *= z2[i] - z2[j];
  BigRat pref = 1;
  for (int j = 1; j <= m; ++j) pref *= BigRat(factorial(n - j), factorial(n - m - j));

  const QuadratureRule rule = jacobi01(n - 2 * m, nodes);
  const std::size_t K = rule.size();
  // g(t_k z_j^2) for every node and eigenvalue
  std::vector<std::vector<cplx>> g(K, std::vector<cplx>(m));
  for (std::size_t k = 0; k < K; ++k)
    for (int j = 0; j < m; ++j) g[k][j] = i0_series(rule.nodes[k] * z2[j]);
  std::vector<std::size_t> idx(m, 0);
  cplx sum = 0.0;
  ComplexMat mat(m);
  for (;;) {
    double w = 1.0;
    for (int i = 0; i < m; ++i) {
      w *= rule.weights[idx[i]] * std::pow(rule.nodes[idx[i]], m - 1 - i);
      for (int j = 0; j < m; ++j) mat(i, j) = g[idx[i]][j];
    }
    sum += w * det(mat);
    int d = 0;
    while (d < m && ++idx[d] == K) idx[d++] = 0;
    if (d == m) break;
  }
  return pref.get_d() * sum / vdm;
}

cplx fn_schur_series(const std::vector<cplx>& z2, int n, int max_weight) {
  cplx sum = 0.0;
  const int len = std::min<int>(static_cast<int>(z2.size()), n);
  for (int w = 0; w <= max_weight; ++w)
    for (const schur::Partition& lam : schur::partitions(w, len)) {
      const BigRat c = schur::c_lambda_prod(lam);
      const BigRat coef = c * c / BigRat(schur::dim_u(lam, n));
      sum += coef.get_d() * schur::schur_eval(lam, z2);
    }
  return sum;
}

sampling::McEstimate fn_mc(const ComplexMat& a, const ComplexMat& b, const sampling::McOptions& opts) {
  auto f = [&](const ComplexMat& u) { return std::exp((a * u).trace() + std::conj((b * u).trace())); };
  return sampling::mc_average(f, sampling::EnsembleSpec::haar(a.dim()), opts);
}

}  // namespace haar::besselint
