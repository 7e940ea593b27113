#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "haar/bigrat.hpp"
#include "haar/matrix.hpp"
#include "haar/report.hpp"

namespace haar::schur {

/// Weakly decreasing sequence of positive integers (zeros are dropped).
class Partition {
 public:
  Partition() = default;
  Partition(std::initializer_list<int> parts);
  explicit Partition(std::vector<int> parts);

  std::span<const int> parts() const { return p_; }
  /// lambda_i (0-based), zero past the length.
  int operator[](std::size_t i) const { return i < p_.size() ? p_[i] : 0; }
  int weight() const;
  std::size_t length() const { return p_.size(); }
  bool empty() const { return p_.empty(); }
  Partition conjugate() const;
  std::string str() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> p_;
};

/// Partitions of weight w, reverse-lexicographic, with at most max_len parts
/// each at most max_part.
std::vector<Partition> partitions(int w, int max_len = std::numeric_limits<int>::max(),
                                  int max_part = std::numeric_limits<int>::max());

/// e_0..e_deg and h_0..h_deg of x.
std::vector<cplx> elementary(std::span<const cplx> x, int deg);
std::vector<cplx> complete(std::span<const cplx> x, int deg);
/// h from e by sum_i (-1)^i e_i h_{k-i} = 0; e beyond its length counts as 0.
std::vector<cplx> complete_from_elementary(std::span<const cplx> e, int deg);

struct HrEr {
  cplx h;
  cplx e;
};
HrEr hr_er(std::span<const cplx> x, int r);

/// Relative separation below which schur_eval switches to Jacobi-Trudi.
inline constexpr double kConfluentSeparation = 1e-6;

/// s_lambda(x). Bialternant when the arguments are well separated,
/// Jacobi-Trudi otherwise; 0 when l(lambda) > x.size().
cplx schur_eval(const Partition& lambda, std::span<const cplx> x);
cplx schur_eval(const Partition& lambda, std::initializer_list<cplx> x);

/// Always Jacobi-Trudi det(h_{lambda_i - i + j}).
cplx schur_jacobi_trudi(const Partition& lambda, std::span<const cplx> x);

/// s_lambda(M): Jacobi-Trudi on the coefficients of det(I + tM).
cplx schur_eval_matrix(const Partition& lambda, const ComplexMat& m);

/// s_lambda(1_n) and s_lambda'(1_n) from the product formulas (exact integers).
BigInt dim_u(const Partition& lambda, int n);
BigInt dim_u_conj(const Partition& lambda, int n);

/// c_lambda in exp(tr A) = sum c_lambda s_lambda(A): determinant form
/// det(1/(lambda_j - j + i)!) and product form s_lambda(1_m) prod (m-j)!/(m+lambda_j-j)!.
BigRat c_lambda_det(const Partition& lambda);
BigRat c_lambda_prod(const Partition& lambda);

enum class CauchyKind { elementary, complete };

/// prod_i det(I + t_i X) vs sum s_lambda(t) s_lambda'(X) (elementary), or
/// prod_i 1/det(I - t_i X) vs sum s_lambda(t) s_lambda(X) truncated at max_weight (complete).
VerificationReport cauchy_check(std::span<const cplx> t, const ComplexMat& x, CauchyKind kind,
                                int max_weight = -1, double tolerance = 1e-10);

/// Monte Carlo of int s_lambda(AU) conj(s_mu(BU)) dU against delta s_lambda(AB*)/d_lambda.
VerificationReport orthogonality_check(const Partition& lambda, const Partition& mu, const ComplexMat& a,
                                       const ComplexMat& b, std::size_t samples, std::uint64_t seed,
                                       std::size_t shards = 1, double k_sigma = 4.0);

/// Relative gap below which lagrange_weights refuses.
inline constexpr double kLagrangeGap = 1e-6;

/// w_j = prod_{k != j} 1/(x_k - x_j). Throws PreconditionError when the
/// minimum gap relative to max(1, max|x|) is below min_gap.
std::vector<double> lagrange_weights(std::span<const double> x, double min_gap = kLagrangeGap);

}  // namespace haar::schur
