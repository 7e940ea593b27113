#include "haar/bigrat.hpp"

#include "haar/error.hpp"

namespace haar {

namespace {
constexpr int kMaxFactorial = 500;
}

const BigInt& factorial(int n) {
  static const std::vector<BigInt> table = [] {
    std::vector<BigInt> t(kMaxFactorial + 1);
    t[0] = 1;
    for (int k = 1; k <= kMaxFactorial; ++k) t[k] = t[k - 1] * k;
    return t;
  }();
  if (n < 0 || n > kMaxFactorial)
    throw PreconditionError("factorial: argument " + std::to_string(n) + " outside [0, 500]");
  return table[static_cast<std::size_t>(n)];
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

BigRat beta_rat(int p, int q) {
  if (p < 1 || q < 1) throw PreconditionError("beta_rat: arguments must be positive integers");
  BigRat r(factorial(p - 1) * factorial(q - 1), factorial(p + q - 1));
  r.canonicalize();
  return r;
}

namespace {

template <class T, class IsZero>
T eliminate(std::vector<std::vector<T>>& m, T one, IsZero is_zero) {
  const std::size_t n = m.size();
  T d = one;
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k].size() != n) throw PreconditionError("det_exact: matrix must be square");
    std::size_t piv = k;
    while (piv < n && is_zero(m[piv][k])) ++piv;
    if (piv == n) return T{};
    if (piv != k) {
      std::swap(m[piv], m[k]);
      d = -d;
    }
    d = d * m[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (is_zero(m[i][k])) continue;
      const T l = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] = m[i][j] - l * m[k][j];
    }
  }
  return d;
}

}  // namespace

BigRat det_exact(RatMatrix m) {
  return eliminate<BigRat>(m, BigRat(1), [](const BigRat& x) { return x == 0; });
}

GaussRat operator/(const GaussRat& a, const GaussRat& b) {
  const BigRat den = b.re * b.re + b.im * b.im;
  if (den == 0) throw PreconditionError("GaussRat: division by zero");
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}

GaussRat det_exact(GaussRatMatrix m) {
  return eliminate<GaussRat>(m, GaussRat(1), [](const GaussRat& x) { return x.is_zero(); });
}

std::string to_string(const BigRat& q) { return q.get_str(); }

}  // namespace haar
