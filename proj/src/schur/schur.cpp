#include "haar/schur.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "haar/error.hpp"
#include "haar/poly.hpp"
#include "haar/sampling.hpp"

namespace haar::schur {

Partition::Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

Partition::Partition(std::vector<int> parts) : p_(std::move(parts)) {
  for (std::size_t i = 0; i < p_.size(); ++i) {
    if (p_[i] < 0) throw PreconditionError("partition parts must be nonnegative");
    if (i > 0 && p_[i] > p_[i - 1]) throw PreconditionError("partition parts must be weakly decreasing");
  }
  while (!p_.empty() && p_.back() == 0) p_.pop_back();
}

int Partition::weight() const {
  int w = 0;
  for (int x : p_) w += x;
  return w;
}

Partition Partition::conjugate() const {
  std::vector<int> c(p_.empty() ? 0 : p_[0], 0);
  for (int x : p_)
    for (int k = 0; k < x; ++k) ++c[k];
  return Partition(std::move(c));
}

std::string Partition::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < p_.size(); ++i) s += (i ? "," : "") + std::to_string(p_[i]);
  return s + ")";
}

std::vector<Partition> partitions(int w, int max_len, int max_part) {
  std::vector<Partition> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int cap) {
    if (left == 0) {
      out.emplace_back(cur);
      return;
    }
    if (static_cast<int>(cur.size()) >= max_len) return;
    for (int k = std::min(left, cap); k >= 1; --k) {
      cur.push_back(k);
      rec(left - k, k);
      cur.pop_back();
    }
  };
  if (w >= 0) rec(w, max_part);
  return out;
}

std::vector<cplx> elementary(std::span<const cplx> x, int deg) {
  std::vector<cplx> e(std::max(deg, 0) + 1, 0.0);
  e[0] = 1.0;
  for (const cplx& xi : x)
    for (int k = std::min<int>(deg, static_cast<int>(x.size())); k >= 1; --k) e[k] += xi * e[k - 1];
  return e;
}

std::vector<cplx> complete(std::span<const cplx> x, int deg) {
  std::vector<cplx> h(std::max(deg, 0) + 1, 0.0);
  h[0] = 1.0;
  // h over x_1..x_i: h_k <- h_k + x_i h_{k-1}, ascending k.
  for (const cplx& xi : x)
    for (int k = 1; k <= deg; ++k) h[k] += xi * h[k - 1];
  return h;
}

std::vector<cplx> complete_from_elementary(std::span<const cplx> e, int deg) {
  std::vector<cplx> h(std::max(deg, 0) + 1, 0.0);
  h[0] = 1.0;
  for (int k = 1; k <= deg; ++k) {
    cplx s = 0.0;
    for (int i = 1; i <= k && i < static_cast<int>(e.size()); ++i) s += (i % 2 ? 1.0 : -1.0) * e[i] * h[k - i];
    h[k] = s;
  }
  return h;
}

HrEr hr_er(std::span<const cplx> x, int r) {
  if (r < 0) return {0.0, 0.0};
  return {complete(x, r)[r], elementary(x, r)[r]};
}

namespace {

cplx jt_det(const Partition& lambda, const std::vector<cplx>& h) {
  const std::size_t l = lambda.length();
  if (l == 0) return 1.0;
  ComplexMat m(l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) {
      const int k = lambda[i] - static_cast<int>(i) + static_cast<int>(j);
      m(i, j) = (k < 0 || k >= static_cast<int>(h.size())) ? cplx(0.0) : h[k];
    }
  return det(m);
}

int jt_degree(const Partition& lambda) { return lambda.empty() ? 0 : lambda[0] + static_cast<int>(lambda.length()); }

}  // namespace

cplx schur_jacobi_trudi(const Partition& lambda, std::span<const cplx> x) {
  if (lambda.length() > x.size()) return 0.0;
  return jt_det(lambda, complete(x, jt_degree(lambda)));
}

cplx schur_eval(const Partition& lambda, std::span<const cplx> x) {
  const std::size_t n = x.size();
  if (lambda.length() > n) return 0.0;
  if (lambda.empty()) return 1.0;
  double scale = 1.0, gap = INFINITY;
  for (std::size_t i = 0; i < n; ++i) {
    scale = std::max(scale, std::abs(x[i]));
    for (std::size_t j = 0; j < i; ++j) gap = std::min(gap, std::abs(x[i] - x[j]));
  }
  if (n == 1) return std::pow(x[0], lambda[0]);
  if (gap / scale < kConfluentSeparation) return schur_jacobi_trudi(lambda, x);
  ComplexMat num(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) num(i, j) = std::pow(x[i], lambda[j] + static_cast<int>(n - 1 - j));
  cplx vdm = 1.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) vdm *= x[i] - x[j];
  return det(num) / vdm;
}

cplx schur_eval(const Partition& lambda, std::initializer_list<cplx> x) {
  return schur_eval(lambda, std::span<const cplx>(x.begin(), x.size()));
}

cplx schur_eval_matrix(const Partition& lambda, const ComplexMat& m) {
  const std::size_t n = m.dim();
  if (lambda.length() > n) return 0.0;
  if (lambda.empty()) return 1.0;
  const double nrm = m.norm();
  if (nrm == 0.0) return 0.0;
  const double radius = 1.0 / nrm;
  const Poly charpoly = Poly::from_circle_samples(
      [&](cplx t) { return det(ComplexMat::identity(n) + t * m); }, static_cast<int>(n), radius);
  std::vector<cplx> e(n + 1);
  for (std::size_t k = 0; k <= n; ++k) e[k] = charpoly[k];
  return jt_det(lambda, complete_from_elementary(e, jt_degree(lambda)));
}

BigInt dim_u(const Partition& lambda, int n) {
  if (static_cast<int>(lambda.length()) > n) return 0;
  if (lambda.empty()) return 1;
  const int m = std::max<int>(1, static_cast<int>(lambda.length()));
  BigInt vdm = 1;
  for (int i = 1; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j) vdm *= lambda[i - 1] - i - lambda[j - 1] + j;
  BigRat r = vdm;
  for (int j = 1; j <= m; ++j)
    r *= BigRat(factorial(n + lambda[j - 1] - j), factorial(m + lambda[j - 1] - j) * factorial(n - j));
  r.canonicalize();
  return r.get_num();
}

BigInt dim_u_conj(const Partition& lambda, int n) {
  if (lambda[0] > n) return 0;
  if (lambda.empty()) return 1;
  const int m = std::max<int>(1, static_cast<int>(lambda.length()));
  BigInt vdm = 1;
  for (int i = 1; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j) vdm *= lambda[i - 1] - i - lambda[j - 1] + j;
  BigRat r = vdm;
  for (int j = 1; j <= m; ++j)
    r *= BigRat(factorial(n + j - 1), factorial(n + j - 1 - lambda[j - 1]) * factorial(m + lambda[j - 1] - j));
  r.canonicalize();
  return r.get_num();
}

BigRat c_lambda_det(const Partition& lambda) {
  const int m = static_cast<int>(lambda.length());
  if (m == 0) return 1;
  RatMatrix a(m, std::vector<BigRat>(m));
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j) {
      const int k = lambda[j - 1] - j + i;
      a[i - 1][j - 1] = k < 0 ? BigRat(0) : BigRat(1, factorial(k));
    }
  return det_exact(std::move(a));
}

BigRat c_lambda_prod(const Partition& lambda) {
  const int m = static_cast<int>(lambda.length());
  if (m == 0) return 1;
  BigRat r = BigRat(dim_u(lambda, m));
  for (int j = 1; j <= m; ++j) r *= BigRat(factorial(m - j), factorial(m + lambda[j - 1] - j));
  r.canonicalize();
  return r;
}

VerificationReport cauchy_check(std::span<const cplx> t, const ComplexMat& x, CauchyKind kind, int max_weight,
                                double tolerance) {
  const std::size_t m = t.size(), n = x.dim();
  const ComplexMat id = ComplexMat::identity(n);
  cplx lhs = 1.0;
  if (kind == CauchyKind::elementary) {
    for (const cplx& ti : t) lhs *= det(id + ti * x);
    if (max_weight < 0) max_weight = static_cast<int>(m * n);
  } else {
    const double xn = spectral_norm(x);
    for (const cplx& ti : t)
      if (!(std::abs(ti) * xn < 1.0)) throw PreconditionError("cauchy series diverges: |t_i| * |X| >= 1");
    for (const cplx& ti : t) lhs /= det(id - ti * x);
    if (max_weight < 0) max_weight = 60;
  }
  cplx rhs = 0.0;
  for (int w = 0; w <= max_weight; ++w) {
    const int len = static_cast<int>(kind == CauchyKind::elementary ? m : std::min(m, n));
    const int part = kind == CauchyKind::elementary ? static_cast<int>(n) : std::numeric_limits<int>::max();
    for (const Partition& lam : partitions(w, len, part)) {
      const cplx st = schur_eval(lam, t);
      if (st == cplx(0.0)) continue;
      rhs += st * schur_eval_matrix(kind == CauchyKind::elementary ? lam.conjugate() : lam, x);
    }
  }
  nlohmann::json params = {{"m", m},
                           {"n", n},
                           {"identity", kind == CauchyKind::elementary ? "elementary" : "complete"},
                           {"max_weight", max_weight}};
  return tolerance_report("cauchy", std::move(params), lhs, rhs, tolerance * std::max(1.0, std::abs(rhs)));
}

VerificationReport orthogonality_check(const Partition& lambda, const Partition& mu, const ComplexMat& a,
                                       const ComplexMat& b, std::size_t samples, std::uint64_t seed,
                                       std::size_t shards, double k_sigma) {
  const std::size_t n = a.dim();
  if (lambda.length() > n || mu.length() > n) throw PreconditionError("partition longer than matrix size");
  auto f = [&](const ComplexMat& u) {
    return schur_eval_matrix(lambda, a * u) * std::conj(schur_eval_matrix(mu, b * u));
  };
  const auto est = sampling::mc_average(f, sampling::EnsembleSpec::haar(n), {samples, seed, shards});
  cplx rhs = 0.0;
  if (lambda == mu) rhs = schur_eval_matrix(lambda, a * b.adjoint()) / dim_u(lambda, static_cast<int>(n)).get_d();
  nlohmann::json params = {{"lambda", lambda.str()}, {"mu", mu.str()}, {"n", n}, {"N", samples}, {"shards", est.shards}};
  return mc_report("orthogonality", std::move(params), est.mean, est.stderr_, rhs, k_sigma, seed, 1e-12);
}

std::vector<double> lagrange_weights(std::span<const double> x, double min_gap) {
  const std::size_t n = x.size();
  double scale = 1.0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  std::vector<double> w(n, 1.0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      const double d = x[k] - x[j];
      if (std::abs(d) < min_gap * scale) throw PreconditionError("lagrange nodes closer than the gap threshold");
      w[j] /= d;
    }
  return w;
}

}  // namespace haar::schur
