#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "haar/error.hpp"
#include "haar/kernels.hpp"

namespace haar {

enum class RuleKind { legendre01, jacobi };

/// Gauss rule on [0, 1] for the weight 1 (legendre01) or (1-t)^alpha (jacobi).
/// A K-node rule integrates polynomials of degree <= 2K-1 exactly.
struct QuadratureRule {
  RuleKind kind = RuleKind::legendre01;
  double alpha = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }

  template <class F>
  auto integrate(F&& f) const {
    using T = decltype(f(0.0));
    std::vector<T> vals(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) vals[k] = f(nodes[k]);
    if constexpr (std::is_same_v<T, double>) {
      return kernels::ddot(weights, vals);
    } else {
      return kernels::wdot(weights, vals);
    }
  }
};

QuadratureRule quad_rule(RuleKind kind, std::size_t nodes, double alpha = 0.0);
inline QuadratureRule legendre01(std::size_t nodes) { return quad_rule(RuleKind::legendre01, nodes); }
inline QuadratureRule jacobi01(double alpha, std::size_t nodes) {
  return quad_rule(RuleKind::jacobi, nodes, alpha);
}

/// Eigenvalues and first eigenvector components of a symmetric tridiagonal
/// matrix (implicit QL). Used by the Golub-Welsch construction.
void tridiagonal_eigen(std::vector<double>& diag, std::vector<double> offdiag,
                       std::vector<double>& first_components);

template <class T>
struct Integral {
  T value{};
  double error = 0.0;
  std::size_t intervals = 0;
};

/// Raised when adaptive integration hits its interval cap; carries the partial result.
class IntegrationError : public ConvergenceError {
 public:
  IntegrationError(const std::string& what, double partial, double err)
      : ConvergenceError(what), partial_value(partial), error_estimate(err) {}
  double partial_value;
  double error_estimate;
};

namespace detail {

// 15-point Kronrod nodes/weights and the embedded 7-point Gauss weights on [-1, 1].
inline constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                   0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                   0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                   0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                   0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                   0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                   0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                  0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const std::complex<double>& z) { return std::abs(z); }

template <class T, class F>
void gk15(F& f, double a, double b, T& result, double& err) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const T fc = f(c);
  T rk = fc * kWgk[7];
  T rg = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const T f1 = f(c - dx);
    const T f2 = f(c + dx);
    rk += (f1 + f2) * kWgk[j];
    if (j % 2 == 1) rg += (f1 + f2) * kWg[j / 2];
  }
  result = rk * h;
  err = magnitude((rk - rg) * h);
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
/// Stops once the summed error estimate is <= tol; throws IntegrationError
/// after max_intervals subintervals.
template <class F>
auto adaptive_integrate(F&& f, double a, double b, double tol = 1e-10,
                        std::size_t max_intervals = 1'000'000) {
  using T = decltype(f(a));
  if (!(tol > 0.0)) throw PreconditionError("adaptive_integrate: tol must be positive");
  struct Piece {
    double a, b;
    T value;
    double err;
    bool operator<(const Piece& o) const { return err < o.err; }
  };
  std::priority_queue<Piece> heap;
  Piece first{a, b, T{}, 0.0};
  detail::gk15<T>(f, a, b, first.value, first.err);
  T total = first.value;
  double total_err = first.err;
  heap.push(first);
  std::size_t count = 1;
  while (total_err > tol) {
    if (count >= max_intervals) {
      double partial = 0.0;
      if constexpr (std::is_same_v<T, double>) partial = total;
      else partial = std::real(total);
      throw IntegrationError("adaptive_integrate: subdivision limit reached", partial, total_err);
    }
    Piece worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      double partial = 0.0;
      if constexpr (std::is_same_v<T, double>) partial = total;
      else partial = std::real(total);
      throw IntegrationError("adaptive_integrate: interval below machine resolution", partial, total_err);
    }
    Piece left{worst.a, mid, T{}, 0.0};
    Piece right{mid, worst.b, T{}, 0.0};
    detail::gk15<T>(f, left.a, left.b, left.value, left.err);
    detail::gk15<T>(f, right.a, right.b, right.value, right.err);
    total += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    heap.push(left);
    heap.push(right);
    ++count;
    if (count >= 64 && (count & (count - 1)) == 0) {
      // refresh the running sums to stop drift
      std::vector<Piece> all;
      all.reserve(heap.size());
      T s{};
      double e = 0.0;
      while (!heap.empty()) {
        all.push_back(heap.top());
        heap.pop();
      }
      for (const auto& p : all) {
        s += p.value;
        e += p.err;
      }
      for (auto& p : all) heap.push(std::move(p));
      total = s;
      total_err = e;
    }
  }
  return Integral<T>{total, total_err, count};
}

/// Root of a continuous, strictly monotone g on [lo, hi] with a sign change,
/// by Illinois false position safeguarded with bisection. Returns t with
/// |g(t)| <= tol, or the bracket midpoint once the bracket reaches machine width.
double find_root_monotone(const std::function<double(double)>& g, double lo, double hi,
                          double tol = 1e-12);

}  // namespace haar
