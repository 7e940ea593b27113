#include "haar/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace haar {

void tridiagonal_eigen(std::vector<double>& d, std::vector<double> offdiag,
                       std::vector<double>& z) {
  const std::size_t n = d.size();
  std::vector<double> e(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) e[i] = offdiag[i];
  z.assign(n, 0.0);
  if (n == 0) return;
  z[0] = 1.0;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == 60) throw ConvergenceError("tridiagonal_eigen: QL iteration did not converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (std::size_t ii = m; ii-- > l;) {
          double f = s * e[ii];
          const double b = c * e[ii];
          r = std::hypot(f, g);
          e[ii + 1] = r;
          if (r == 0.0) {
            d[ii + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[ii + 1] - p;
          r = (d[ii] - g) * s + 2.0 * c * b;
          p = s * r;
          d[ii + 1] = g + p;
          g = c * r - b;
          f = z[ii + 1];
          z[ii + 1] = s * z[ii] + c * f;
          z[ii] = c * z[ii] - s * f;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

QuadratureRule quad_rule(RuleKind kind, std::size_t nodes, double alpha) {
  if (nodes < 1) throw PreconditionError("quad_rule: need at least one node");
  if (kind == RuleKind::legendre01) alpha = 0.0;
  if (!(alpha > -1.0) || !std::isfinite(alpha))
    throw PreconditionError("quad_rule: jacobi weight requires alpha > -1");

  // Monic Jacobi recurrence on [-1, 1] for (1-x)^alpha (1+x)^0.
  const double beta = 0.0;
  const double ab = alpha + beta;
  std::vector<double> diag(nodes), off(nodes > 0 ? nodes - 1 : 0);
  diag[0] = (beta - alpha) / (ab + 2.0);
  for (std::size_t k = 1; k < nodes; ++k) {
    const double kk = static_cast<double>(k);
    const double s = 2.0 * kk + ab;
    diag[k] = (beta * beta - alpha * alpha) / (s * (s + 2.0));
    const double b = 4.0 * kk * (kk + alpha) * (kk + beta) * (kk + ab) / (s * s * (s + 1.0) * (s - 1.0));
    off[k - 1] = std::sqrt(b);
  }
  std::vector<double> first;
  tridiagonal_eigen(diag, off, first);

  std::vector<std::size_t> order(nodes);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return diag[i] < diag[j]; });

  QuadratureRule rule;
  rule.kind = kind;
  rule.alpha = alpha;
  rule.nodes.resize(nodes);
  rule.weights.resize(nodes);
  const double mass = 1.0 / (alpha + 1.0);  // integral of (1-t)^alpha over [0, 1]
  for (std::size_t k = 0; k < nodes; ++k) {
    const std::size_t i = order[k];
    rule.nodes[k] = 0.5 * (1.0 + diag[i]);
    rule.weights[k] = mass * first[i] * first[i];
  }
  return rule;
}

double find_root_monotone(const std::function<double(double)>& g, double lo, double hi, double tol) {
  if (!(lo < hi)) throw PreconditionError("find_root_monotone: need lo < hi");
  double glo = g(lo);
  double ghi = g(hi);
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  if (!std::isfinite(glo) || !std::isfinite(ghi) || std::signbit(glo) == std::signbit(ghi))
    throw PreconditionError("find_root_monotone: no sign change on the bracket");
  int side = 0;
  double t = 0.5 * (lo + hi);
  for (int it = 0; it < 400; ++it) {
    const double width = hi - lo;
    t = hi - ghi * (hi - lo) / (ghi - glo);
    if (!(t > lo && t < hi) || it % 4 == 3) t = 0.5 * (lo + hi);
    const double gt = g(t);
    if (std::abs(gt) <= tol) return t;
    if (std::signbit(gt) == std::signbit(ghi)) {
      hi = t;
      ghi = gt;
      if (side == 1) glo *= 0.5;
      side = 1;
    } else {
      lo = t;
      glo = gt;
      if (side == -1) ghi *= 0.5;
      side = -1;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max({std::abs(lo), std::abs(hi), 1e-300}) ||
        !(hi - lo < width))
      return 0.5 * (lo + hi);
  }
  return t;
}

}  // namespace haar
