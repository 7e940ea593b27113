#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace haar {

using cplx = std::complex<double>;

/// Dense square complex matrix, row-major.
class ComplexMat {
 public:
  ComplexMat() = default;
  explicit ComplexMat(std::size_t n) : n_(n), a_(n * n) {}
  ComplexMat(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMat identity(std::size_t n);
  static ComplexMat diag(std::span<const cplx> d);
  static ComplexMat diag(std::span<const double> d);
  static ComplexMat scalar(std::size_t n, cplx s);

  std::size_t dim() const { return n_; }
  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  std::span<cplx> row(std::size_t i) { return {a_.data() + i * n_, n_}; }
  std::span<const cplx> row(std::size_t i) const { return {a_.data() + i * n_, n_}; }
  std::span<const cplx> data() const { return a_; }

  ComplexMat adjoint() const;
  cplx trace() const;
  bool is_finite() const;
  /// Frobenius norm.
  double norm() const;

  ComplexMat& operator+=(const ComplexMat& o);
  ComplexMat& operator-=(const ComplexMat& o);
  ComplexMat& operator*=(cplx s);

  friend ComplexMat operator+(ComplexMat a, const ComplexMat& b) { return a += b; }
  friend ComplexMat operator-(ComplexMat a, const ComplexMat& b) { return a -= b; }
  friend ComplexMat operator*(ComplexMat a, cplx s) { return a *= s; }
  friend ComplexMat operator*(cplx s, ComplexMat a) { return a *= s; }
  friend ComplexMat operator*(const ComplexMat& a, const ComplexMat& b);

 private:
  std::size_t n_ = 0;
  std::vector<cplx> a_;
};

/// Determinant by LU with partial pivoting. Singular input gives 0.
cplx det(const ComplexMat& m);

/// Q of a Householder QR factorization together with the diagonal of R.
struct QrFactors {
  ComplexMat q;
  std::vector<cplx> r_diag;
};
QrFactors householder_qr(const ComplexMat& m);

/// Eigenvalues of a Hermitian matrix (only the lower triangle is trusted),
/// ascending. Cyclic complex Jacobi.
std::vector<double> hermitian_eigvals(const ComplexMat& h);

/// Eigenvalues of a general complex matrix via Hessenberg reduction and
/// Wilkinson-shifted QR. Unordered.
std::vector<cplx> eigvals(const ComplexMat& m);

/// Sorted, nonnegative eigenvalues of A A*.
class HermSpectrum {
 public:
  explicit HermSpectrum(std::vector<double> eigs);

  std::size_t dim() const { return eigs_.size(); }
  std::span<const double> eigs() const { return eigs_; }
  double operator[](std::size_t i) const { return eigs_[i]; }
  double min() const { return eigs_.front(); }
  double max() const { return eigs_.back(); }

 private:
  std::vector<double> eigs_;
};

/// Eigenvalues of A A* ascending; values in (-1e-12 scale, 0) are clamped to 0.
HermSpectrum gram_eigs(const ComplexMat& a);

/// Largest singular value.
double spectral_norm(const ComplexMat& a);

}  // namespace haar
