#pragma once

#include <vector>

#include "haar/bigrat.hpp"
#include "haar/report.hpp"
#include "haar/schur.hpp"

namespace haar::betadet {

enum class MeasureKind { mu, nu };

struct MeasureParams {
  int n = 0;
  int m = 1;
  MeasureKind kind = MeasureKind::mu;

  /// Throws PreconditionError unless m >= 1, n >= 0 and (kind == nu) implies n >= 2m.
  void validate() const;
};

/// c_n (mu) or k_n (nu).
BigRat norm_const(const MeasureParams& p);

/// det(B(p_j - i, q_j + i)) against det(B(p_j - i, q_j + 1)), exact.
VerificationReport prop1_check(const std::vector<int>& p, const std::vector<int>& q);

struct Lemma1Terms {
  /// s_lambda(1_m)^2 / s_lambda'(1_n) (kind a) or / s_lambda(1_n) (kind b).
  BigRat dimension_ratio;
  /// Prefactor times the Beta determinant obtained from the factorials.
  BigRat beta_det_factorial;
  /// Prefactor times the Beta determinant whose entries are the one-variable integrals.
  BigRat beta_det_integral;
};

Lemma1Terms lemma1_terms(const schur::Partition& lambda, int m, int n, MeasureKind kind);

/// Exact check of the Selberg-type Schur average. lhs is the dimension ratio,
/// rhs the integral-form Beta determinant; params.factorial_form_equal records
/// whether the factorial-form determinant agrees as well, and pass requires both.
VerificationReport lemma1_check(const schur::Partition& lambda, int m, int n, MeasureKind kind);

/// f_1! ... f_m! Delta(f) against det((f_j + m - i)!).
VerificationReport factorial_det_check(const std::vector<int>& f);

/// The m-fold integral evaluated by tensor Gauss rules against the exact value.
VerificationReport quadrature_vs_exact(const schur::Partition& lambda, int m, int n, MeasureKind kind,
                                       double rel_tol = 1e-9);

}  // namespace haar::betadet
