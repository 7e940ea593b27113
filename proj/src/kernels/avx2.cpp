#include "haar/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

// std::complex<double> is layout-compatible with double[2], so a __m256d
// holds two complex numbers as [re0, im0, re1, im1].

namespace haar::kernels {
namespace {

#define HAAR_AVX2 __attribute__((target("avx2,fma")))

HAAR_AVX2 inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// [a0, a1, a2, a3] -> even and odd lane sums
HAAR_AVX2 inline void hsum_parity(__m256d v, double& even, double& odd) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  even = t[0] + t[2];
  odd = t[1] + t[3];
}

HAAR_AVX2 void caxpy_avx2(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  auto* px = reinterpret_cast<const double*>(x);
  auto* py = reinterpret_cast<double*>(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(px + 2 * i);
    __m256d yv = _mm256_loadu_pd(py + 2 * i);
    __m256d xs = _mm256_permute_pd(xv, 0b0101);
    __m256d prod = _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, xs));
    _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(yv, prod));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

HAAR_AVX2 void dot_accumulate(const cplx* x, const cplx* y, std::size_t n, __m256d& straight,
                              __m256d& crossed) {
  auto* px = reinterpret_cast<const double*>(x);
  auto* py = reinterpret_cast<const double*>(y);
  straight = _mm256_setzero_pd();
  crossed = _mm256_setzero_pd();
  for (std::size_t i = 0; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(px + 2 * i);
    __m256d yv = _mm256_loadu_pd(py + 2 * i);
    straight = _mm256_fmadd_pd(xv, yv, straight);
    crossed = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), crossed);
  }
}

HAAR_AVX2 cplx cdotu_avx2(const cplx* x, const cplx* y, std::size_t n) {
  __m256d s, c;
  dot_accumulate(x, y, n, s, c);
  double se, so, ce, co;
  hsum_parity(s, se, so);
  hsum_parity(c, ce, co);
  cplx r{se - so, ce + co};
  if (n % 2) r += x[n - 1] * y[n - 1];
  return r;
}

HAAR_AVX2 cplx cdotc_avx2(const cplx* x, const cplx* y, std::size_t n) {
  __m256d s, c;
  dot_accumulate(x, y, n, s, c);
  double se, so, ce, co;
  hsum_parity(s, se, so);
  hsum_parity(c, ce, co);
  cplx r{se + so, ce - co};
  if (n % 2) r += std::conj(x[n - 1]) * y[n - 1];
  return r;
}

HAAR_AVX2 double ddot_avx2(const double* w, const double* x, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(x + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(w + i + 4), _mm256_loadu_pd(x + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(x + i), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += w[i] * x[i];
  return s;
}

HAAR_AVX2 cplx wdot_avx2(const double* w, const cplx* x, std::size_t n) {
  auto* px = reinterpret_cast<const double*>(x);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    // [w0, w0, w1, w1]
    __m128d wv = _mm_loadu_pd(w + i);
    __m256d ww = _mm256_permute4x64_pd(_mm256_castpd128_pd256(wv), 0b01010000);
    acc = _mm256_fmadd_pd(ww, _mm256_loadu_pd(px + 2 * i), acc);
  }
  double re, im;
  hsum_parity(acc, re, im);
  for (; i < n; ++i) {
    re += w[i] * x[i].real();
    im += w[i] * x[i].imag();
  }
  return {re, im};
}

#undef HAAR_AVX2

}  // namespace

const Table* simd_table() {
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  static const Table t{"avx2", caxpy_avx2, cdotu_avx2, cdotc_avx2, ddot_avx2, wdot_avx2};
  return ok ? &t : nullptr;
}

}  // namespace haar::kernels

#elif defined(__aarch64__)
#include <arm_neon.h>

// One complex<double> per float64x2_t lane pair.

namespace haar::kernels {
namespace {

void caxpy_neon(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const float64x2_t ar = vdupq_n_f64(a.real());
  // [-ai, ai] so that swap(x) * aim gives [-ai*xi, ai*xr]
  const float64x2_t aim = {-a.imag(), a.imag()};
  auto* px = reinterpret_cast<const double*>(x);
  auto* py = reinterpret_cast<double*>(y);
  for (std::size_t i = 0; i < n; ++i) {
    float64x2_t xv = vld1q_f64(px + 2 * i);
    float64x2_t yv = vld1q_f64(py + 2 * i);
    float64x2_t xs = vextq_f64(xv, xv, 1);
    yv = vfmaq_f64(yv, ar, xv);
    yv = vfmaq_f64(yv, aim, xs);
    vst1q_f64(py + 2 * i, yv);
  }
}

void dot_accumulate(const cplx* x, const cplx* y, std::size_t n, float64x2_t& straight,
                    float64x2_t& crossed) {
  auto* px = reinterpret_cast<const double*>(x);
  auto* py = reinterpret_cast<const double*>(y);
  straight = vdupq_n_f64(0.0);
  crossed = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    float64x2_t xv = vld1q_f64(px + 2 * i);
    float64x2_t yv = vld1q_f64(py + 2 * i);
    straight = vfmaq_f64(straight, xv, yv);
    crossed = vfmaq_f64(crossed, xv, vextq_f64(yv, yv, 1));
  }
}

cplx cdotu_neon(const cplx* x, const cplx* y, std::size_t n) {
  float64x2_t s, c;
  dot_accumulate(x, y, n, s, c);
  return {vgetq_lane_f64(s, 0) - vgetq_lane_f64(s, 1), vgetq_lane_f64(c, 0) + vgetq_lane_f64(c, 1)};
}

cplx cdotc_neon(const cplx* x, const cplx* y, std::size_t n) {
  float64x2_t s, c;
  dot_accumulate(x, y, n, s, c);
  return {vgetq_lane_f64(s, 0) + vgetq_lane_f64(s, 1), vgetq_lane_f64(c, 0) - vgetq_lane_f64(c, 1)};
}

double ddot_neon(const double* w, const double* x, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vfmaq_f64(acc, vld1q_f64(w + i), vld1q_f64(x + i));
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) s += w[i] * x[i];
  return s;
}

cplx wdot_neon(const double* w, const cplx* x, std::size_t n) {
  auto* px = reinterpret_cast<const double*>(x);
  float64x2_t acc = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n; ++i) acc = vfmaq_n_f64(acc, vld1q_f64(px + 2 * i), w[i]);
  return {vgetq_lane_f64(acc, 0), vgetq_lane_f64(acc, 1)};
}

}  // namespace

const Table* simd_table() {
  static const Table t{"neon", caxpy_neon, cdotu_neon, cdotc_neon, ddot_neon, wdot_neon};
  return &t;
}

}  // namespace haar::kernels

#else

namespace haar::kernels {
const Table* simd_table() { return nullptr; }
}  // namespace haar::kernels

#endif
