#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace haar {

using BigInt = mpz_class;
/// Exact rational, always in lowest terms with positive denominator.
using BigRat = mpq_class;

/// n! for 0 <= n <= 500, memoized.
const BigInt& factorial(int n);

BigInt binomial(int n, int k);

/// B(p, q) = (p-1)!(q-1)!/(p+q-1)! for positive integers p, q.
BigRat beta_rat(int p, int q);

/// Square matrix of exact rationals, row-major.
using RatMatrix = std::vector<std::vector<BigRat>>;

/// Exact determinant by fraction Gaussian elimination.
BigRat det_exact(RatMatrix m);

/// Gaussian rational: re + i*im with exact rational parts.
struct GaussRat {
  BigRat re = 0;
  BigRat im = 0;

  GaussRat() = default;
  GaussRat(BigRat r, BigRat i = 0) : re(std::move(r)), im(std::move(i)) {}

  GaussRat conj() const { return {re, -im}; }
  bool is_zero() const { return re == 0 && im == 0; }
  friend GaussRat operator+(const GaussRat& a, const GaussRat& b) { return {a.re + b.re, a.im + b.im}; }
  friend GaussRat operator-(const GaussRat& a, const GaussRat& b) { return {a.re - b.re, a.im - b.im}; }
  friend GaussRat operator-(const GaussRat& a) { return {-a.re, -a.im}; }
  friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussRat operator/(const GaussRat& a, const GaussRat& b);
  friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }
};

using GaussRatMatrix = std::vector<std::vector<GaussRat>>;

GaussRat det_exact(GaussRatMatrix m);

std::string to_string(const BigRat& q);

}  // namespace haar
