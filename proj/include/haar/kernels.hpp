#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

// Data-parallel inner loops shared by the dense linear algebra and the
// quadrature sums. Each routine has a scalar reference implementation and,
// where the CPU supports it, a vectorized variant selected once at startup.
// HAARMOMENTS_SIMD=scalar forces the reference path.

namespace haar::kernels {

using cplx = std::complex<double>;

struct Table {
  std::string_view name;
  // y += a * x
  void (*caxpy)(cplx a, const cplx* x, cplx* y, std::size_t n);
  // sum x_i * y_i
  cplx (*cdotu)(const cplx* x, const cplx* y, std::size_t n);
  // sum conj(x_i) * y_i
  cplx (*cdotc)(const cplx* x, const cplx* y, std::size_t n);
  // sum w_i * x_i
  double (*ddot)(const double* w, const double* x, std::size_t n);
  // sum w_i * x_i with real weights, complex values
  cplx (*wdot)(const double* w, const cplx* x, std::size_t n);
};

const Table& scalar_table();

/// Vectorized table for this CPU, or nullptr if none is available.
const Table* simd_table();

/// The table used by the library (resolved once, thread-safe).
const Table& active();

inline void caxpy(cplx a, std::span<const cplx> x, std::span<cplx> y) {
  active().caxpy(a, x.data(), y.data(), x.size());
}
inline cplx cdotu(std::span<const cplx> x, std::span<const cplx> y) {
  return active().cdotu(x.data(), y.data(), x.size());
}
inline cplx cdotc(std::span<const cplx> x, std::span<const cplx> y) {
  return active().cdotc(x.data(), y.data(), x.size());
}
inline double ddot(std::span<const double> w, std::span<const double> x) {
  return active().ddot(w.data(), x.data(), x.size());
}
inline cplx wdot(std::span<const double> w, std::span<const cplx> x) {
  return active().wdot(w.data(), x.data(), x.size());
}

}  // namespace haar::kernels
