#include "haar/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "haar/error.hpp"

namespace haar {

Poly::Poly(std::vector<cplx> coeffs) : c_(std::move(coeffs)) { trim(); }

void Poly::trim() {
  while (!c_.empty() && c_.back() == cplx(0.0)) c_.pop_back();
}

cplx Poly::operator()(cplx t) const {
  cplx s = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * t + *it;
  return s;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly{};
  std::vector<cplx> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
  return Poly(std::move(d));
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<cplx> s(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = a[k] + b[k];
  return Poly(std::move(s));
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.c_.empty() || b.c_.empty()) return Poly{};
  std::vector<cplx> p(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) p[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(p));
}

Poly Poly::from_circle_samples(const std::function<cplx(cplx)>& f, int deg, double radius) {
  if (deg < 0) return Poly{};
  if (!(radius > 0.0)) throw PreconditionError("from_circle_samples: radius must be positive");
  const std::size_t n = static_cast<std::size_t>(deg) + 1;
  std::vector<cplx> roots(n), vals(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double ang = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    roots[j] = std::polar(1.0, ang);
    vals[j] = f(radius * roots[j]);
  }
  std::vector<cplx> c(n);
  double rk = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += vals[j] * std::conj(roots[(j * k) % n]);
    c[k] = s / (static_cast<double>(n) * rk);
    rk *= radius;
  }
  return Poly(std::move(c));
}

}  // namespace haar
