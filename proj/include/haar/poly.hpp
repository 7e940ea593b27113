#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace haar {

using cplx = std::complex<double>;

/// Polynomial with complex coefficients, ascending degree.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<cplx> coeffs);

  /// Degree of the trimmed polynomial; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  std::span<const cplx> coeffs() const { return c_; }
  cplx operator[](std::size_t k) const { return k < c_.size() ? c_[k] : cplx(0.0); }

  cplx operator()(cplx t) const;
  Poly derivative() const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);

  /// Recover the coefficients of a polynomial of degree <= deg from its values
  /// at deg+1 equispaced points on the circle |t| = radius (discrete Fourier
  /// inversion; well conditioned when the coefficients are balanced on that circle).
  static Poly from_circle_samples(const std::function<cplx(cplx)>& f, int deg, double radius = 1.0);

 private:
  void trim();
  std::vector<cplx> c_;
};

}  // namespace haar
