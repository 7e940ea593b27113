#include "haar/regdet.hpp"

#include <algorithm>
#include <cmath>

#include "haar/bigrat.hpp"
#include "haar/error.hpp"
#include "haar/schur.hpp"

namespace haar::regdet {

namespace {

using Real = long double;

double harmonic(int k) {
  double s = 0.0;
  for (int j = 1; j <= k; ++j) s += 1.0 / j;
  return s;
}

Real i0_closed(Real eps2, Real a2) {
  const Real b = eps2 - a2;
  const Real x = 1 + b;
  const Real d = 4 * eps2 * a2;
  const Real s1 = std::sqrt(x * x + d);
  // x + sqrt(x^2 + d) loses everything when x << 0; use d / (sqrt(x^2 + d) - x).
  const Real num = x >= 0 ? x + s1 : d / (s1 - x);
  return std::log(num / (2 * eps2));
}

double theta(double x) { return x > 0 ? 1.0 : (x < 0 ? 0.0 : 0.5); }

std::vector<double> normalized(const HermSpectrum& aa, cplx z) {
  const double z2 = std::norm(z);
  if (z2 == 0.0) throw PreconditionError("z must be nonzero");
  std::vector<double> x(aa.eigs().begin(), aa.eigs().end());
  for (double& v : x) v /= z2;
  return x;
}

}  // namespace

IkResult ik_exact(int k, double eps2, double a2) {
  if (k < 0) throw PreconditionError("ik_exact requires k >= 0");
  if (!(eps2 > 0.0)) throw PreconditionError("ik_exact requires eps^2 > 0");
  if (!(a2 >= 0.0)) throw PreconditionError("ik_exact requires a^2 >= 0");
  const Real b = Real(eps2) - a2;
  const Real c = (Real(a2) + eps2) * (Real(a2) + eps2);
  // Coefficient of t^d in Q'S + Q(t + b), S = t^2 + 2bt + c:
  //   d q_{d-1} + (2d+1) b q_d + (d+1) c q_{d+1}  ==  C(k,d)(-1)^d  (+ lambda at d = 0).
  std::vector<Real> q(k + 2, 0);
  if (k > 0) {
    q[k - 1] = (k % 2 ? -1.0L : 1.0L) / k;
    for (int d = k - 1; d >= 1; --d) {
      const Real rhs = binomial(k, d).get_d() * (d % 2 ? -1.0L : 1.0L);
      q[d - 1] = (rhs - (2 * d + 1) * b * q[d] - (d + 1) * c * q[d + 1]) / d;
    }
  }
  const Real lambda = 1 - b * q[0] - c * q[1];
  Real q1 = 0;
  for (int d = k - 1; d >= 0; --d) q1 = q1 + q[d];
  const Real s1 = std::sqrt((1 + b) * (1 + b) + 4 * Real(eps2) * a2);
  const Real value = q1 * s1 - q[0] * (Real(a2) + eps2) + lambda * i0_closed(eps2, a2);
  std::vector<cplx> qc(std::max(k, 1));
  for (int d = 0; d < k; ++d) qc[d] = static_cast<double>(q[d]);
  return {static_cast<double>(value), Poly(std::move(qc)), static_cast<double>(lambda)};
}

double ik_asymptotic(int k, double eps2, double a2) {
  const double one_m = 1.0 - a2;
  double l0;
  if (a2 < 1.0)
    l0 = std::log(one_m / eps2);
  else if (a2 > 1.0)
    l0 = std::log(a2 / (a2 - 1.0));
  else
    l0 = 0.5 * std::log(1.0 / eps2);
  const double sgn = a2 > 1.0 ? 1.0 : (a2 < 1.0 ? -1.0 : 0.0);
  // Q_a(0) = sum_l (-1)^l/l C(k,l) (-a^2)^{l-1} (1-a^2)^{k-l}
  double qa0 = 0.0;
  for (int l = 1; l <= k; ++l)
    qa0 += (l % 2 ? -1.0 : 1.0) / l * binomial(k, l).get_d() * std::pow(-a2, l - 1) * std::pow(one_m, k - l);
  return std::pow(one_m, k) * (harmonic(k) * sgn + l0) - a2 * qa0;
}

double f_eps(double a2, double eps2, int n) {
  if (n < 2) throw PreconditionError("f_eps requires n >= 2");
  return (n - 1) * ik_exact(n - 2, eps2, a2).value;
}

double lagrange_sum(const std::vector<double>& x, const std::function<double(double)>& f, RegOptions opts) {
  const std::size_t n = x.size();
  if (!opts.divided_difference) {
    const std::vector<double> w = schur::lagrange_weights(x, kGap);
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += f(x[j]) * w[j];
    return s;
  }
  // sum_j f(x_j) prod_{k!=j} 1/(x_k - x_j) = (-1)^{n-1} f[x_1, ..., x_n]
  std::vector<double> xs = x;
  std::sort(xs.begin(), xs.end());
  std::vector<double> dd(n);
  for (std::size_t j = 0; j < n; ++j) dd[j] = f(xs[j]);
  for (std::size_t lvl = 1; lvl < n; ++lvl)
    for (std::size_t j = n - 1; j >= lvl; --j) {
      const double h = xs[j] - xs[j - lvl];
      if (h == 0.0) throw PreconditionError("divided difference over coincident nodes");
      dd[j] = (dd[j] - dd[j - 1]) / h;
    }
  return (n % 2 ? 1.0 : -1.0) * dd[n - 1];
}

double r_eps(const HermSpectrum& aa, cplx z, double eps, RegOptions opts) {
  if (!(eps > 0.0)) throw PreconditionError("r_eps requires eps > 0");
  const int n = static_cast<int>(aa.dim());
  if (n < 2) throw PreconditionError("r_eps requires n >= 2");
  const double eps2 = eps * eps;
  return lagrange_sum(normalized(aa, z), [&](double a2) { return f_eps(a2, eps2, n); }, opts);
}

AsymptoticCoeffs asym_coeffs(const HermSpectrum& aa, cplx z) {
  const int n = static_cast<int>(aa.dim());
  if (n < 2) throw PreconditionError("asym_coeffs requires n >= 2");
  const std::vector<double> x = normalized(aa, z);
  const std::vector<double> w = schur::lagrange_weights(x, kGap);
  const double g = harmonic(n - 2);
  AsymptoticCoeffs out;
  for (int j = 0; j < n; ++j) {
    const double one_m = 1.0 - x[j];
    const double base = (n - 1) * std::pow(one_m, n - 2) * w[j];
    double psi;
    if (x[j] > 1.0)
      psi = g + std::log(x[j]) - std::log(x[j] - 1.0);
    else if (x[j] < 1.0)
      psi = -g + std::log(one_m);
    else
      psi = 0.0;
    out.alpha += base * theta(one_m);
    out.beta += base * psi;
  }
  return out;
}

double alpha_unscaled(const HermSpectrum& aa, cplx z) {
  const int n = static_cast<int>(aa.dim());
  if (n < 2) throw PreconditionError("alpha_unscaled requires n >= 2");
  const double z2 = std::norm(z);
  const std::vector<double> w = schur::lagrange_weights(aa.eigs(), kGap);
  double s = 0.0;
  for (int j = 0; j < n; ++j) s += std::pow(z2 - aa[j], n - 2) * theta(z2 - aa[j]) * w[j];
  return (n - 1) * z2 * s;
}

SlopeFit slope_fit(const HermSpectrum& aa, cplx z, double eps_max, int points) {
  if (points < 2) throw PreconditionError("slope fit needs at least two points");
  SlopeFit fit;
  std::vector<double> l(points);
  double eps = eps_max;
  for (int i = 0; i < points; ++i, eps /= 10.0) {
    fit.eps.push_back(eps);
    fit.r.push_back(r_eps(aa, z, eps));
    l[i] = std::log(1.0 / (eps * eps));
  }
  double ml = 0.0, mr = 0.0;
  for (int i = 0; i < points; ++i) {
    ml += l[i] / points;
    mr += fit.r[i] / points;
  }
  double sxy = 0.0, sxx = 0.0;
  for (int i = 0; i < points; ++i) {
    sxy += (l[i] - ml) * (fit.r[i] - mr);
    sxx += (l[i] - ml) * (l[i] - ml);
  }
  fit.slope = sxy / sxx;
  fit.intercept = mr - fit.slope * ml;
  for (int i = 0; i < points; ++i)
    fit.max_residual = std::max(fit.max_residual, std::abs(fit.r[i] - fit.slope * l[i] - fit.intercept));
  return fit;
}

VerificationReport theorem2a_density_ratio(const HermSpectrum& aa, cplx z, double rel_tol) {
  const AsymptoticCoeffs c = asym_coeffs(aa, z);
  const SlopeFit fit = slope_fit(aa, z);
  nlohmann::json params = {{"n", aa.dim()},
                           {"z2", std::norm(z)},
                           {"eps", fit.eps},
                           {"fit_intercept", fit.intercept},
                           {"fit_max_residual", fit.max_residual},
                           {"beta", c.beta},
                           {"alpha_unscaled", alpha_unscaled(aa, z)}};
  const double tol = rel_tol * std::max(std::abs(c.alpha), 0.1 * std::abs(c.beta));
  return tolerance_report("thm2a_slope", std::move(params), fit.slope, c.alpha, tol);
}

sampling::McEstimate r_eps_mc(const ComplexMat& a, cplx z, double eps, const sampling::McOptions& opts) {
  const std::size_t n = a.dim();
  const ComplexMat az = a * (1.0 / z);
  const ComplexMat id = ComplexMat::identity(n);
  const double e2 = eps * eps;
  auto f = [&](const ComplexMat& u) {
    const ComplexMat m = id - az * u;
    ComplexMat g = m * m.adjoint();
    for (std::size_t i = 0; i < n; ++i) g(i, i) += e2;
    return cplx(1.0 / det(g).real(), 0.0);
  };
  return sampling::mc_average(f, sampling::EnsembleSpec::haar(n), opts);
}

}  // namespace haar::regdet
