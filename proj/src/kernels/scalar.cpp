#include "haar/kernels.hpp"

namespace haar::kernels {
namespace {

void caxpy_ref(cplx a, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

cplx cdotu_ref(const cplx* x, const cplx* y, std::size_t n) {
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

cplx cdotc_ref(const cplx* x, const cplx* y, std::size_t n) {
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) s += std::conj(x[i]) * y[i];
  return s;
}

double ddot_ref(const double* w, const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += w[i] * x[i];
  return s;
}

cplx wdot_ref(const double* w, const cplx* x, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += w[i] * x[i].real();
    im += w[i] * x[i].imag();
  }
  return {re, im};
}

}  // namespace

const Table& scalar_table() {
  static const Table t{"scalar", caxpy_ref, cdotu_ref, cdotc_ref, ddot_ref, wdot_ref};
  return t;
}

}  // namespace haar::kernels
