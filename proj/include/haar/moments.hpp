#pragma once

#include <cstdint>

#include "haar/bigrat.hpp"
#include "haar/matrix.hpp"
#include "haar/poly.hpp"
#include "haar/report.hpp"
#include "haar/sampling.hpp"

namespace haar::moments {

enum class Sign { positive, negative };

/// Integral over U(n) of det^{+-m}[(AU + C)(BU + D)*].
struct MomentQuery {
  ComplexMat a, b, c, d;
  int m = 1;
  Sign sign = Sign::positive;

  std::size_t dim() const { return a.dim(); }
  /// Conformability, m >= 1 and, for the negative sign, 2m <= n.
  void validate() const;
};

/// Strictness margin for the spectral preconditions of negative moments,
/// relative to max(1, largest eigenvalue involved).
inline constexpr double kSpectralMargin = 1e-8;

/// Coefficients of det(CD* + t AB*).
Poly detpoly(const ComplexMat& a, const ComplexMat& b, const ComplexMat& c, const ComplexMat& d);

/// Determinant formula for positive moments; entries by Gauss-Legendre after
/// t = u/(1-u), which is exact for the polynomial integrand.
cplx moment_pos(const MomentQuery& q);

/// Same determinant with entries as Beta sums over the detpoly coefficients.
cplx moment_pos_beta(const MomentQuery& q);

using GaussRatMatrix = haar::GaussRatMatrix;

/// Exact positive moment for Gaussian-rational inputs.
GaussRat moment_pos_exact(const GaussRatMatrix& a, const GaussRatMatrix& b, const GaussRatMatrix& c,
                          const GaussRatMatrix& d, int m);

/// Exact coefficients of det(CD* + t AB*).
std::vector<GaussRat> detpoly_exact(const GaussRatMatrix& a, const GaussRatMatrix& b, const GaussRatMatrix& c,
                                    const GaussRatMatrix& d);

/// Negative moments. Throws PreconditionError when AA* < CC*, BB* < DD* fail
/// by less than the margin ("spectrum straddle: use regdet") or when
/// det(CD* - tAB*) vanishes on [0, 1].
cplx moment_neg(const MomentQuery& q, double margin = kSpectralMargin);

/// <|det(zI - AU)|^{2m}>; m = 1 uses the closed Beta sum over e_k(AA*).
double moment_pos_z(const ComplexMat& a, cplx z, int m = 1);
/// m = 1 from the spectrum of AA* alone: sum_k |z|^{2(n-k)} e_k(AA*) / C(n, k).
double moment_pos_z(const HermSpectrum& aa, cplx z);

/// <|det(zI - AU)|^{-2}> for |z|^2 strictly outside [lambda_min, lambda_max] of AA*.
double moment_neg_z(const ComplexMat& a, cplx z, double margin = kSpectralMargin);
double moment_neg_z(const HermSpectrum& aa, cplx z, double margin = kSpectralMargin);

/// (n+1) int_0^inf p(|z|^2 t)(1+t)^{-n-2} dt for p of degree <= n.
cplx invariant_ensemble_moment(const Poly& p, cplx z, int n);

/// Sample of det^{+-m}[(AU + C)(BU + D)*] for one U.
cplx moment_integrand(const MomentQuery& q, const ComplexMat& u);

/// Formula against Haar Monte Carlo.
VerificationReport thm1_mc_check(const MomentQuery& q, const sampling::McOptions& opts, double k_sigma = 4.0);

/// Random test case: for the negative sign, C and D are shifted so that
/// AA* < CC* and BB* < DD* with a comfortable margin.
MomentQuery random_query(sampling::Rng& rng, std::size_t n, int m, Sign sign);

}  // namespace haar::moments
