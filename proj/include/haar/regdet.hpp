#pragma once

#include <cstdint>
#include <vector>

#include "haar/matrix.hpp"
#include "haar/poly.hpp"
#include "haar/report.hpp"
#include "haar/sampling.hpp"

namespace haar::regdet {

/// I_k(eps^2, a^2) = int_0^1 (1-t)^k / sqrt((t - a^2 + eps^2)^2 + 4 eps^2 a^2) dt
/// with its antiderivative data: the integrand equals d/dt[Q(t) sqrt(S(t))] + lambda/sqrt(S(t)).
struct IkResult {
  double value = 0.0;
  Poly q;
  double lambda = 0.0;
};

IkResult ik_exact(int k, double eps2, double a2);

/// Leading behaviour of I_k as eps -> 0 (log term, harmonic constant and the
/// polynomial remainder), accurate to O(eps) away from a^2 = 1.
double ik_asymptotic(int k, double eps2, double a2);

/// F_eps(a) = (n-1) I_{n-2}(eps^2, a^2).
double f_eps(double a2, double eps2, int n);

/// Relative gap below which r_eps refuses the Lagrange-weight sum.
inline constexpr double kGap = 1e-6;

struct RegOptions {
  /// Evaluate the sum as a Newton divided difference instead of with raw
  /// Lagrange weights; accepts gaps below kGap (nonzero).
  bool divided_difference = false;
};

/// <1/det[eps^2 I + (I - AU/z)(I - AU/z)*]> over U(n) from the spectrum of AA*.
double r_eps(const HermSpectrum& aa, cplx z, double eps, RegOptions opts = {});

/// Same sum with an arbitrary kernel F in place of F_eps (normalized a^2/|z|^2 nodes).
double lagrange_sum(const std::vector<double>& a2_normalized, const std::function<double(double)>& f,
                    RegOptions opts = {});

struct AsymptoticCoeffs {
  double alpha = 0.0;
  double beta = 0.0;
};

/// Coefficients of r_eps = alpha ln(1/eps^2) + beta + O(eps).
AsymptoticCoeffs asym_coeffs(const HermSpectrum& aa, cplx z);

/// alpha in unnormalized variables:
/// (n-1)|z|^2 sum (|z|^2 - a_j^2)^{n-2} theta(|z|^2 - a_j^2) prod 1/(a_k^2 - a_j^2).
double alpha_unscaled(const HermSpectrum& aa, cplx z);

struct SlopeFit {
  std::vector<double> eps;
  std::vector<double> r;
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
};

/// Least-squares fit of r_eps against ln(1/eps^2) on a geometric grid
/// (points values from eps_max downward, ratio 10).
SlopeFit slope_fit(const HermSpectrum& aa, cplx z, double eps_max = 1e-3, int points = 6);

/// Fitted slope against alpha; tolerance is 1% of max(|alpha|, |beta|/10).
VerificationReport theorem2a_density_ratio(const HermSpectrum& aa, cplx z, double rel_tol = 0.01);

/// Haar Monte Carlo of the regularized inverse determinant.
sampling::McEstimate r_eps_mc(const ComplexMat& a, cplx z, double eps, const sampling::McOptions& opts);

}  // namespace haar::regdet
