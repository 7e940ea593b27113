#include "haar/moments.hpp"

#include <algorithm>
#include <cmath>

#include "haar/betadet.hpp"
#include "haar/error.hpp"
#include "haar/quadrature.hpp"
#include "haar/schur.hpp"

namespace haar::moments {

namespace {

double prefactor(int n, int m, Sign s) {
  const betadet::MeasureKind kind = s == Sign::positive ? betadet::MeasureKind::mu : betadet::MeasureKind::nu;
  BigRat r = BigRat(factorial(m)) / betadet::norm_const({n, m, kind});
  return r.get_d();
}

cplx small_det(const std::vector<cplx>& hankel, int m) {
  // entries depend on i + j only
  ComplexMat e(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) e(i, j) = hankel[i + j];
  return det(e);
}

GaussRatMatrix gr_mul(const GaussRatMatrix& x, const GaussRatMatrix& y) {
  const std::size_t n = x.size();
  GaussRatMatrix r(n, std::vector<GaussRat>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (x[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) r[i][j] = r[i][j] + x[i][k] * y[k][j];
    }
  return r;
}

GaussRatMatrix gr_adjoint(const GaussRatMatrix& x) {
  const std::size_t n = x.size();
  GaussRatMatrix r(n, std::vector<GaussRat>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r[i][j] = x[j][i].conj();
  return r;
}

// Integral of f(t)(1-t)^alpha over [0,1] for f analytic on [0,1]: Gauss-Jacobi
// at K and 2K nodes, adaptive Gauss-Kronrod when they disagree.
template <class F>
auto jacobi_smooth(F&& f, double alpha) {
  using T = decltype(f(0.0));
  std::size_t k = 16;
  T prev = jacobi01(alpha, k).integrate(f);
  for (int round = 0; round < 3; ++round) {
    k *= 2;
    const T cur = jacobi01(alpha, k).integrate(f);
    if (std::abs(cur - prev) <= 1e-14 * std::max(1e-300, std::abs(cur))) return cur;
    prev = cur;
  }
  auto g = [&](double t) { return f(t) * std::pow(1.0 - t, alpha); };
  const double tol = std::max(1e-300, 1e-13 * std::abs(prev));
  return adaptive_integrate(g, 0.0, 1.0, tol).value;
}

double hermitian_min(const ComplexMat& h) { return hermitian_eigvals(h).front(); }
double hermitian_max(const ComplexMat& h) { return hermitian_eigvals(h).back(); }

}  // namespace

void MomentQuery::validate() const {
  const std::size_t n = a.dim();
  if (n == 0 || b.dim() != n || c.dim() != n || d.dim() != n)
    throw PreconditionError("moment query matrices must be square and of equal size");
  if (!a.is_finite() || !b.is_finite() || !c.is_finite() || !d.is_finite())
    throw PreconditionError("moment query matrices must be finite");
  if (m < 1) throw PreconditionError("moment order m must be positive");
  if (sign == Sign::negative && 2 * m > static_cast<int>(n))
    throw PreconditionError("negative moments require 2m <= n");
}

Poly detpoly(const ComplexMat& a, const ComplexMat& b, const ComplexMat& c, const ComplexMat& d) {
  const ComplexMat cd = c * d.adjoint();
  const ComplexMat ab = a * b.adjoint();
  const double nab = ab.norm();
  if (nab == 0.0) return Poly({det(cd)});
  const double radius = std::max(cd.norm(), 1e-3 * nab) / nab;
  return Poly::from_circle_samples([&](cplx t) { return det(cd + t * ab); }, static_cast<int>(a.dim()), radius);
}

cplx moment_pos(const MomentQuery& q) {
  q.validate();
  const int n = static_cast<int>(q.dim()), m = q.m;
  const ComplexMat cd = q.c * q.d.adjoint();
  const ComplexMat ab = q.a * q.b.adjoint();
  const int deg = n + 2 * m - 2;
  const QuadratureRule rule = legendre01(static_cast<std::size_t>(deg / 2 + 1));
  std::vector<cplx> dv(rule.size());
  std::vector<double> tv(rule.size()), jac(rule.size());
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const double u = rule.nodes[k];
    tv[k] = u / (1.0 - u);
    jac[k] = std::pow(1.0 - u, deg);
    dv[k] = det(cd + tv[k] * ab);
  }
  std::vector<cplx> hankel(2 * m - 1);
  for (int p = 0; p < 2 * m - 1; ++p) {
    cplx s = 0.0;
    for (std::size_t k = 0; k < rule.size(); ++k) s += rule.weights[k] * jac[k] * std::pow(tv[k], p) * dv[k];
    hankel[p] = s;
  }
  return prefactor(n, m, Sign::positive) * small_det(hankel, m);
}

cplx moment_pos_beta(const MomentQuery& q) {
  q.validate();
  const int n = static_cast<int>(q.dim()), m = q.m;
  const Poly p = detpoly(q.a, q.b, q.c, q.d);
  std::vector<cplx> hankel(2 * m - 1);
  for (int s = 0; s < 2 * m - 1; ++s) {
    cplx acc = 0.0;
    for (int k = 0; k <= std::min(p.degree(), n); ++k)
      acc += p[k] * beta_rat(k + s + 1, n + 2 * m - k - s - 1).get_d();
    hankel[s] = acc;
  }
  return prefactor(n, m, Sign::positive) * small_det(hankel, m);
}

std::vector<GaussRat> detpoly_exact(const GaussRatMatrix& a, const GaussRatMatrix& b, const GaussRatMatrix& c,
                                    const GaussRatMatrix& d) {
  const std::size_t n = a.size();
  const GaussRatMatrix cd = gr_mul(c, gr_adjoint(d));
  const GaussRatMatrix ab = gr_mul(a, gr_adjoint(b));
  // values at t = 0..n, then Newton divided differences
  std::vector<GaussRat> dd(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    GaussRatMatrix x = cd;
    const GaussRat t(BigRat(static_cast<long>(k)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) x[i][j] = x[i][j] + t * ab[i][j];
    dd[k] = det_exact(std::move(x));
  }
  for (std::size_t lvl = 1; lvl <= n; ++lvl)
    for (std::size_t k = n; k >= lvl; --k)
      dd[k] = (dd[k] - dd[k - 1]) / GaussRat(BigRat(static_cast<long>(lvl)));
  // expand sum_k dd_k prod_{j<k} (t - j) by Horner in Newton form
  std::vector<GaussRat> coeff{dd[n]};
  for (std::size_t k = n; k-- > 0;) {
    std::vector<GaussRat> next(coeff.size() + 1);
    const GaussRat node(BigRat(static_cast<long>(k)));
    for (std::size_t i = 0; i < coeff.size(); ++i) {
      next[i + 1] = next[i + 1] + coeff[i];
      next[i] = next[i] - node * coeff[i];
    }
    next[0] = next[0] + dd[k];
    coeff = std::move(next);
  }
  coeff.resize(n + 1);
  return coeff;
}

GaussRat moment_pos_exact(const GaussRatMatrix& a, const GaussRatMatrix& b, const GaussRatMatrix& c,
                          const GaussRatMatrix& d, int m) {
  const int n = static_cast<int>(a.size());
  if (n == 0 || b.size() != a.size() || c.size() != a.size() || d.size() != a.size())
    throw PreconditionError("moment query matrices must be square and of equal size");
  if (m < 1) throw PreconditionError("moment order m must be positive");
  const std::vector<GaussRat> p = detpoly_exact(a, b, c, d);
  std::vector<GaussRat> hankel(2 * m - 1);
  for (int s = 0; s < 2 * m - 1; ++s)
    for (int k = 0; k <= n; ++k) hankel[s] = hankel[s] + p[k] * GaussRat(beta_rat(k + s + 1, n + 2 * m - k - s - 1));
  GaussRatMatrix e(m, std::vector<GaussRat>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) e[i][j] = hankel[i + j];
  const BigRat pref = BigRat(factorial(m)) / betadet::norm_const({n, m, betadet::MeasureKind::mu});
  return GaussRat(pref) * det_exact(std::move(e));
}

cplx moment_neg(const MomentQuery& q, double margin) {
  if (q.sign != Sign::negative) throw PreconditionError("moment_neg needs a negative-sign query");
  q.validate();
  const int n = static_cast<int>(q.dim()), m = q.m;
  const ComplexMat cc = q.c * q.c.adjoint(), aa = q.a * q.a.adjoint();
  const ComplexMat dd = q.d * q.d.adjoint(), bb = q.b * q.b.adjoint();
  const double s1 = std::max(1.0, hermitian_max(cc)), s2 = std::max(1.0, hermitian_max(dd));
  if (hermitian_min(cc - aa) <= margin * s1 || hermitian_min(dd - bb) <= margin * s2)
    throw PreconditionError("spectrum straddle: use regdet");
  const ComplexMat cd = q.c * q.d.adjoint();
  const ComplexMat ab = q.a * q.b.adjoint();
  auto den = [&](double t) { return det(cd - t * ab); };
  // pole screen on a grid
  double lo = INFINITY, hi = 0.0;
  for (int k = 0; k <= 256; ++k) {
    const double v = std::abs(den(k / 256.0));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(lo > 1e-12 * hi)) throw PreconditionError("det(CD* - tAB*) vanishes on [0, 1]");
  const double alpha = n - 2 * m;
  std::vector<cplx> hankel(2 * m - 1);
  for (int p = 0; p < 2 * m - 1; ++p)
    hankel[p] = jacobi_smooth([&](double t) { return std::pow(t, p) / den(t); }, alpha);
  return prefactor(n, m, Sign::negative) * small_det(hankel, m);
}

double moment_pos_z(const HermSpectrum& aa, cplx z) {
  const std::size_t n = aa.dim();
  std::vector<cplx> x(aa.eigs().begin(), aa.eigs().end());
  const std::vector<cplx> e = schur::elementary(x, static_cast<int>(n));
  const double z2 = std::norm(z);
  double acc = 0.0;
  for (std::size_t k = 0; k <= n; ++k)
    acc += std::pow(z2, static_cast<double>(n - k)) * e[k].real() /
           binomial(static_cast<int>(n), static_cast<int>(k)).get_d();
  return acc;
}

double moment_pos_z(const ComplexMat& a, cplx z, int m) {
  const std::size_t n = a.dim();
  if (m == 1) return moment_pos_z(gram_eigs(a), z);
  MomentQuery q{-1.0 * a, -1.0 * a, ComplexMat::scalar(n, z), ComplexMat::scalar(n, z), m, Sign::positive};
  return moment_pos(q).real();
}

double moment_neg_z(const HermSpectrum& aa, cplx z, double margin) {
  const std::size_t n = aa.dim();
  if (n < 2) throw PreconditionError("moment_neg_z requires n >= 2");
  const double z2 = std::norm(z);
  const double scale = std::max(1.0, aa.max());
  const double alpha = static_cast<double>(n) - 2.0;
  const auto eigs = aa.eigs();
  if (z2 < aa.min() - margin * scale) {
    auto f = [&](double t) {
      double p = 1.0;
      for (double a2 : eigs) p *= a2 - t * z2;
      return 1.0 / p;
    };
    return (static_cast<double>(n) - 1.0) * jacobi_smooth(f, alpha);
  }
  if (z2 > aa.max() + margin * scale) {
    auto f = [&](double t) {
      double p = 1.0;
      for (double a2 : eigs) p *= z2 - t * a2;
      return 1.0 / p;
    };
    return (static_cast<double>(n) - 1.0) * jacobi_smooth(f, alpha);
  }
  throw PreconditionError("|z|^2 inside the spectrum of AA*: use regdet");
}

double moment_neg_z(const ComplexMat& a, cplx z, double margin) { return moment_neg_z(gram_eigs(a), z, margin); }

cplx invariant_ensemble_moment(const Poly& p, cplx z, int n) {
  if (p.degree() > n) throw PreconditionError("polynomial degree exceeds n");
  const double z2 = std::norm(z);
  cplx acc = 0.0;
  for (int k = 0; k <= p.degree(); ++k)
    acc += p[k] * std::pow(z2, k) * beta_rat(k + 1, n + 1 - k).get_d();
  return static_cast<double>(n + 1) * acc;
}

cplx moment_integrand(const MomentQuery& q, const ComplexMat& u) {
  const cplx v = det(q.a * u + q.c) * std::conj(det(q.b * u + q.d));
  const cplx p = std::pow(v, q.m);
  return q.sign == Sign::positive ? p : 1.0 / p;
}

VerificationReport thm1_mc_check(const MomentQuery& q, const sampling::McOptions& opts, double k_sigma) {
  const cplx formula = q.sign == Sign::positive ? moment_pos(q) : moment_neg(q);
  const auto est =
      sampling::mc_average([&](const ComplexMat& u) { return moment_integrand(q, u); },
                           sampling::EnsembleSpec::haar(q.dim()), opts);
  nlohmann::json params = {{"n", q.dim()},
                           {"m", q.m},
                           {"sign", q.sign == Sign::positive ? "positive" : "negative"},
                           {"N", est.samples},
                           {"shards", est.shards}};
  return mc_report("thm1_mc", std::move(params), est.mean, est.stderr_, formula, k_sigma, opts.seed);
}

MomentQuery random_query(sampling::Rng& rng, std::size_t n, int m, Sign sign) {
  using sampling::ginibre;
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  MomentQuery q{ginibre(n, rng) * s, ginibre(n, rng) * s, ginibre(n, rng) * s, ginibre(n, rng) * s, m, sign};
  if (sign == Sign::negative) {
    // C, D near the identity; A, B scaled well inside the smallest singular value.
    q.c = ComplexMat::identity(n) + 0.2 * q.c;
    q.d = ComplexMat::identity(n) + 0.2 * q.d;
    const double sc = std::sqrt(hermitian_min(q.c * q.c.adjoint()));
    const double sd = std::sqrt(hermitian_min(q.d * q.d.adjoint()));
    q.a *= 0.45 * sc / spectral_norm(q.a);
    q.b *= 0.45 * sd / spectral_norm(q.b);
  }
  return q;
}

}  // namespace haar::moments
