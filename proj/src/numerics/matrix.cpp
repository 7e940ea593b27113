#include "haar/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "haar/error.hpp"
#include "haar/kernels.hpp"

namespace haar {

ComplexMat::ComplexMat(std::initializer_list<std::initializer_list<cplx>> rows)
    : n_(rows.size()), a_(n_ * n_) {
  std::size_t i = 0;
  for (const auto& r : rows) {
    if (r.size() != n_) throw PreconditionError("ComplexMat: rows must form a square matrix");
    std::copy(r.begin(), r.end(), a_.begin() + static_cast<std::ptrdiff_t>(i * n_));
    ++i;
  }
}

ComplexMat ComplexMat::identity(std::size_t n) { return scalar(n, 1.0); }

ComplexMat ComplexMat::scalar(std::size_t n, cplx s) {
  ComplexMat m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = s;
  return m;
}

ComplexMat ComplexMat::diag(std::span<const cplx> d) {
  ComplexMat m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMat ComplexMat::diag(std::span<const double> d) {
  ComplexMat m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMat ComplexMat::adjoint() const {
  ComplexMat t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = std::conj((*this)(i, j));
  return t;
}

cplx ComplexMat::trace() const {
  cplx s = 0.0;
  for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, i);
  return s;
}

bool ComplexMat::is_finite() const {
  return std::all_of(a_.begin(), a_.end(), [](const cplx& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

double ComplexMat::norm() const {
  double s = 0.0;
  for (const auto& z : a_) s += std::norm(z);
  return std::sqrt(s);
}

ComplexMat& ComplexMat::operator+=(const ComplexMat& o) {
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

ComplexMat& ComplexMat::operator-=(const ComplexMat& o) {
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

ComplexMat& ComplexMat::operator*=(cplx s) {
  for (auto& z : a_) z *= s;
  return *this;
}

ComplexMat operator*(const ComplexMat& a, const ComplexMat& b) {
  const std::size_t n = a.dim();
  ComplexMat c(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto ci = c.row(i);
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = a(i, k);
      if (aik != cplx(0.0)) kernels::caxpy(aik, b.row(k), ci);
    }
  }
  return c;
}

cplx det(const ComplexMat& m) {
  const std::size_t n = m.dim();
  ComplexMat lu = m;
  cplx d = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      double v = std::abs(lu(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0) return 0.0;
    if (piv != k) {
      std::swap_ranges(lu.row(k).begin(), lu.row(k).end(), lu.row(piv).begin());
      d = -d;
    }
    const cplx pivot = lu(k, k);
    d *= pivot;
    auto rk = lu.row(k).subspan(k + 1);
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx l = lu(i, k) / pivot;
      if (l != cplx(0.0)) kernels::caxpy(-l, rk, lu.row(i).subspan(k + 1));
    }
  }
  return d;
}

QrFactors householder_qr(const ComplexMat& m) {
  const std::size_t n = m.dim();
  // Work column-wise on the transpose so that columns are contiguous.
  ComplexMat cols(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cols(j, i) = m(i, j);

  std::vector<std::vector<cplx>> reflectors;
  reflectors.reserve(n);
  std::vector<cplx> r_diag(n);
  for (std::size_t k = 0; k < n; ++k) {
    auto x = cols.row(k).subspan(k);
    const double xnorm = std::sqrt(std::real(kernels::cdotc(x, x)));
    std::vector<cplx> v(x.begin(), x.end());
    if (xnorm == 0.0) {
      r_diag[k] = 0.0;
      reflectors.emplace_back();
      continue;
    }
    const cplx phase = std::abs(x[0]) > 0.0 ? x[0] / std::abs(x[0]) : cplx(1.0);
    const cplx alpha = -phase * xnorm;
    v[0] -= alpha;
    const double vnorm2 = std::real(kernels::cdotc(v, v));
    r_diag[k] = alpha;
    // apply H = I - 2 v v* / (v* v) to the remaining columns
    for (std::size_t j = k + 1; j < n; ++j) {
      auto c = cols.row(j).subspan(k);
      const cplx s = 2.0 * kernels::cdotc(v, c) / vnorm2;
      kernels::caxpy(-s, v, c);
    }
    for (auto& z : v) z /= std::sqrt(vnorm2 / 2.0);  // now H = I - v v*
    reflectors.push_back(std::move(v));
  }

  // Q = H_0 H_1 ... H_{n-1}; build Q^T row-wise by applying to identity columns.
  ComplexMat qt = ComplexMat::identity(n);  // row j of qt = column j of Q
  for (std::size_t kk = n; kk-- > 0;) {
    const auto& v = reflectors[kk];
    if (v.empty()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      auto c = qt.row(j).subspan(kk);
      const cplx s = kernels::cdotc(v, c);
      if (s != cplx(0.0)) kernels::caxpy(-s, v, c);
    }
  }
  QrFactors out{ComplexMat(n), std::move(r_diag)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.q(i, j) = qt(j, i);
  return out;
}

std::vector<double> hermitian_eigvals(const ComplexMat& h) {
  const std::size_t n = h.dim();
  ComplexMat a(n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = h(i, i).real();
    for (std::size_t j = 0; j < i; ++j) {
      a(i, j) = h(i, j);
      a(j, i) = std::conj(h(i, j));
    }
  }
  const double scale = std::max(a.norm(), std::numeric_limits<double>::min());
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += std::norm(a(i, j));
    if (std::sqrt(off) <= 1e-16 * scale) {
      std::vector<double> ev(n);
      for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i).real();
      std::sort(ev.begin(), ev.end());
      return ev;
    }
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx hpq = a(p, q);
        const double g = std::abs(hpq);
        if (g <= 1e-300) continue;
        const cplx ph = hpq / g;  // a_pq = g * ph
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * g);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const cplx x = a(k, p);
          const cplx y = a(k, q) * std::conj(ph);
          a(k, p) = c * x - s * y;
          a(k, q) = s * x + c * y;
          a(p, k) = std::conj(a(k, p));
          a(q, k) = std::conj(a(k, q));
        }
        a(p, p) = app - t * g;
        a(q, q) = aqq + t * g;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }
  throw ConvergenceError("hermitian_eigvals: Jacobi sweeps did not converge");
}

namespace {

// Reduce to upper Hessenberg form in place with Householder reflections.
void hessenberg(ComplexMat& h) {
  const std::size_t n = h.dim();
  for (std::size_t k = 0; k + 2 < n; ++k) {
    std::vector<cplx> v(n - k - 1);
    for (std::size_t i = k + 1; i < n; ++i) v[i - k - 1] = h(i, k);
    const double xnorm = std::sqrt(std::real(kernels::cdotc(v, v)));
    if (xnorm == 0.0) continue;
    const cplx phase = std::abs(v[0]) > 0.0 ? v[0] / std::abs(v[0]) : cplx(1.0);
    v[0] += phase * xnorm;
    const double vnorm2 = std::real(kernels::cdotc(v, v));
    // left: rows k+1..n-1
    for (std::size_t j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i - k - 1]) * h(i, j);
      s *= 2.0 / vnorm2;
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= s * v[i - k - 1];
    }
    // right: columns k+1..n-1
    for (std::size_t i = 0; i < n; ++i) {
      auto r = h.row(i).subspan(k + 1);
      const cplx s = 2.0 * kernels::cdotu(r, v) / vnorm2;
      for (std::size_t j = 0; j < v.size(); ++j) r[j] -= s * std::conj(v[j]);
    }
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
}

cplx wilkinson_shift(cplx a, cplx b, cplx c, cplx d) {
  // eigenvalue of [[a, b], [c, d]] closest to d
  const cplx tr = a + d;
  const cplx dt = a * d - b * c;
  const cplx disc = std::sqrt(tr * tr / 4.0 - dt);
  const cplx l1 = tr / 2.0 + disc;
  const cplx l2 = tr / 2.0 - disc;
  return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

}  // namespace

std::vector<cplx> eigvals(const ComplexMat& m) {
  const std::size_t n = m.dim();
  if (n == 0) return {};
  if (!m.is_finite()) throw PreconditionError("eigvals: non-finite entries");
  ComplexMat h = m;
  hessenberg(h);
  std::vector<cplx> ev(n);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double anorm = std::max(h.norm(), std::numeric_limits<double>::min());

  std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;
  int iter = 0;
  int total = 0;
  while (hi >= 0) {
    // find the start of the active unreduced block
    std::ptrdiff_t lo = hi;
    while (lo > 0) {
      const double sub = std::abs(h(lo, lo - 1));
      const double diag = std::abs(h(lo, lo)) + std::abs(h(lo - 1, lo - 1));
      if (sub <= eps * (diag > 0.0 ? diag : anorm)) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      ev[hi] = h(hi, hi);
      --hi;
      iter = 0;
      continue;
    }
    if (++iter > 60 || ++total > 60 * static_cast<int>(n) + 100)
      throw ConvergenceError("eigvals: shifted QR did not converge");

    cplx mu;
    if (iter % 11 == 10) {
      // exceptional shift
      mu = h(hi, hi) + cplx(0.75 * std::abs(h(hi, hi - 1)), 0.0);
    } else {
      mu = wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
    }
    for (std::ptrdiff_t k = lo; k <= hi; ++k) h(k, k) -= mu;

    std::vector<cplx> cs(static_cast<std::size_t>(hi - lo));
    std::vector<cplx> sn(cs.size());
    for (std::ptrdiff_t k = lo; k < hi; ++k) {
      const cplx x = h(k, k);
      const cplx y = h(k + 1, k);
      const double r = std::hypot(std::abs(x), std::abs(y));
      cplx c = 1.0, s = 0.0;
      if (r > 0.0) {
        c = x / r;
        s = y / r;
      }
      cs[k - lo] = c;
      sn[k - lo] = s;
      for (std::ptrdiff_t j = k; j <= hi; ++j) {
        const cplx u = h(k, j);
        const cplx v = h(k + 1, j);
        h(k, j) = std::conj(c) * u + std::conj(s) * v;
        h(k + 1, j) = -s * u + c * v;
      }
    }
    for (std::ptrdiff_t k = lo; k < hi; ++k) {
      const cplx c = cs[k - lo];
      const cplx s = sn[k - lo];
      const std::ptrdiff_t top = std::min(k + 2, hi);
      for (std::ptrdiff_t i = lo; i <= top; ++i) {
        const cplx u = h(i, k);
        const cplx v = h(i, k + 1);
        h(i, k) = c * u + s * v;
        h(i, k + 1) = -std::conj(s) * u + std::conj(c) * v;
      }
    }
    for (std::ptrdiff_t k = lo; k <= hi; ++k) h(k, k) += mu;
  }
  return ev;
}

HermSpectrum::HermSpectrum(std::vector<double> eigs) : eigs_(std::move(eigs)) {
  if (eigs_.empty()) throw PreconditionError("HermSpectrum: empty spectrum");
  for (double e : eigs_)
    if (!(e >= 0.0) || !std::isfinite(e))
      throw PreconditionError("HermSpectrum: eigenvalues must be finite and nonnegative");
  if (!std::is_sorted(eigs_.begin(), eigs_.end()))
    throw PreconditionError("HermSpectrum: eigenvalues must be ascending");
}

HermSpectrum gram_eigs(const ComplexMat& a) {
  const ComplexMat g = a * a.adjoint();
  std::vector<double> ev = hermitian_eigvals(g);
  const double clamp = 1e-12 * std::max(1.0, ev.back());
  for (double& e : ev) {
    if (e < 0.0) {
      if (e > -clamp) {
        e = 0.0;
      } else {
        throw ConvergenceError("gram_eigs: negative eigenvalue " + std::to_string(e) +
                               " of A A* (eigensolver failure)");
      }
    }
  }
  return HermSpectrum(std::move(ev));
}

double spectral_norm(const ComplexMat& a) { return std::sqrt(gram_eigs(a).max()); }

}  // namespace haar
