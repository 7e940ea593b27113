#pragma once

#include <vector>

#include "haar/matrix.hpp"
#include "haar/sampling.hpp"

namespace haar::besselint {

/// I_0(2 sqrt(x)) = sum_j x^j/(j!)^2.
cplx i0_series(cplx x);

/// Bessel J_0: series for |x| <= 10, std::cyl_bessel_j beyond.
double j0(double x);

/// int_{U(n)} exp tr(AU + U*B*) dU for rank-one AB* with eigenvalue z2,
/// as a termwise Beta-integrated series.
cplx fn_rank1(cplx z2, int n);

/// Same quantity by Gauss-Jacobi quadrature of (n-1) int I_0(2 sqrt(t z2))(1-t)^{n-2} dt.
cplx fn_rank1_quadrature(cplx z2, int n, std::size_t nodes = 48);

/// Relative gap for distinct z^2 values.
inline constexpr double kDistinctGap = 1e-4;

/// Determinant formula for m = z2.size() <= 3 distinct nonzero eigenvalues, 2m <= n.
cplx fn_general(const std::vector<cplx>& z2, int n, std::size_t nodes = 32);

/// sum over lambda, |lambda| <= max_weight, of c_lambda^2 / s_lambda(1_n) s_lambda(z2),
/// where z2 lists the eigenvalues of AB* (zeros may be omitted).
cplx fn_schur_series(const std::vector<cplx>& z2, int n, int max_weight = 40);

/// Haar Monte Carlo of exp tr(AU + U*B*).
sampling::McEstimate fn_mc(const ComplexMat& a, const ComplexMat& b, const sampling::McOptions& opts);

}  // namespace haar::besselint
