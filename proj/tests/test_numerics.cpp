#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "haar/bigrat.hpp"
#include "haar/kernels.hpp"
#include "haar/matrix.hpp"
#include "haar/poly.hpp"
#include "haar/quadrature.hpp"
#include "helpers.hpp"

using namespace haar;
using testutil::random_mat;
using testutil::to_eigen;

TEST_SUITE("numerics") {
  TEST_CASE("det agrees with Eigen LU") {
    for (std::size_t n : {1u, 2u, 3u, 5u, 8u}) {
      const ComplexMat m = random_mat(n, 10 + n);
      const cplx ours = det(m);
      const cplx ref = to_eigen(m).determinant();
      CHECK(std::abs(ours - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
    }
    CHECK(det(ComplexMat(3)) == cplx(0.0));
  }

  TEST_CASE("householder_qr gives a unitary Q and triangular Q*M") {
    const ComplexMat m = random_mat(6, 20);
    const auto qr = householder_qr(m);
    CHECK(testutil::max_abs_diff(qr.q.adjoint() * qr.q, ComplexMat::identity(6)) < 1e-13);
    const ComplexMat r = qr.q.adjoint() * m;
    for (std::size_t i = 0; i < 6; ++i) {
      CHECK(std::abs(r(i, i) - qr.r_diag[i]) < 1e-12);
      for (std::size_t j = 0; j < i; ++j) CHECK(std::abs(r(i, j)) < 1e-12);
    }
  }

  TEST_CASE("hermitian_eigvals agrees with Eigen") {
    const ComplexMat a = random_mat(7, 30);
    const ComplexMat h = a + a.adjoint();
    const auto ours = hermitian_eigvals(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(h));
    for (int i = 0; i < 7; ++i) CHECK(ours[i] == doctest::Approx(es.eigenvalues()(i)).epsilon(1e-12));
  }

  TEST_CASE("eigvals agrees with Eigen") {
    const ComplexMat m = random_mat(6, 40);
    auto ours = eigvals(m);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(to_eigen(m));
    std::vector<cplx> ref(es.eigenvalues().data(), es.eigenvalues().data() + 6);
    auto key = [](cplx a, cplx b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); };
    std::sort(ours.begin(), ours.end(), key);
    std::sort(ref.begin(), ref.end(), key);
    for (int i = 0; i < 6; ++i) CHECK(std::abs(ours[i] - ref[i]) < 1e-10);
  }

  TEST_CASE("gram_eigs and spectral_norm agree with the SVD") {
    for (std::size_t n : {2u, 4u, 6u}) {
      const ComplexMat a = random_mat(n, 50 + n);
      const HermSpectrum s = gram_eigs(a);
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(a));
      auto sv = svd.singularValues();
      for (std::size_t i = 0; i < n; ++i) {
        const double ref = sv(static_cast<Eigen::Index>(n - 1 - i)) * sv(static_cast<Eigen::Index>(n - 1 - i));
        CHECK(s[i] == doctest::Approx(ref).epsilon(1e-11));
      }
      CHECK(spectral_norm(a) == doctest::Approx(sv(0)).epsilon(1e-12));
    }
  }

  TEST_CASE("Gauss-Legendre on [0,1] is exact to degree 2K-1") {
    for (std::size_t k : {1u, 4u, 12u}) {
      const auto rule = legendre01(k);
      for (std::size_t d = 0; d < 2 * k; ++d) {
        const double v = rule.integrate([&](double t) { return std::pow(t, static_cast<double>(d)); });
        CHECK(v == doctest::Approx(1.0 / (d + 1.0)).epsilon(1e-13));
      }
    }
  }

  TEST_CASE("Gauss-Jacobi weight (1-t)^alpha") {
    for (double alpha : {0.0, 1.0, 2.5, 7.0}) {
      const auto rule = jacobi01(alpha, 8);
      for (int d = 0; d < 16; ++d) {
        const double v = rule.integrate([&](double t) { return std::pow(t, d); });
        const double ref = std::exp(std::lgamma(d + 1.0) + std::lgamma(alpha + 1.0) - std::lgamma(d + alpha + 2.0));
        CHECK(v == doctest::Approx(ref).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("adaptive_integrate") {
    const auto r = adaptive_integrate([](double t) { return std::sqrt(t); }, 0.0, 1.0, 1e-12);
    CHECK(r.value == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    const auto c = adaptive_integrate([](double t) { return std::exp(cplx(0.0, t)); }, 0.0, M_PI, 1e-12);
    CHECK(std::abs(c.value - cplx(0.0, 2.0)) < 1e-11);
    CHECK_THROWS_AS(adaptive_integrate([](double t) { return 1.0 / std::sqrt(std::abs(t - 0.3)); }, 0.0, 1.0, 1e-14, 4),
                    IntegrationError);
    CHECK_THROWS_AS(adaptive_integrate([](double t) { return t; }, 0.0, 1.0, 0.0), PreconditionError);
  }

  TEST_CASE("find_root_monotone") {
    const double r = find_root_monotone([](double x) { return std::cos(x) - x; }, 0.0, 1.0);
    CHECK(r == doctest::Approx(0.7390851332151607).epsilon(1e-14));
    const double s = find_root_monotone([](double x) { return x * x * x - 1e-9; }, 0.0, 1.0, 1e-18);
    CHECK(s == doctest::Approx(1e-3).epsilon(1e-9));
  }

  TEST_CASE("exact rationals") {
    CHECK(factorial(0) == 1);
    CHECK(factorial(20) == BigInt("2432902008176640000"));
    CHECK(binomial(10, 3) == 120);
    CHECK(beta_rat(3, 2) == BigRat(1, 12));
    CHECK(beta_rat(5, 2) == BigRat(1, 30));
    RatMatrix m{{BigRat(1, 2), BigRat(1, 3)}, {BigRat(1, 4), BigRat(1, 5)}};
    CHECK(det_exact(m) == BigRat(1, 10) - BigRat(1, 12));
    GaussRatMatrix g{{GaussRat(1, 1), GaussRat(2)}, {GaussRat(0, 1), GaussRat(3, -1)}};
    // (1+i)(3-i) - 2i = 4 + 2i - 2i = 4
    CHECK(det_exact(g) == GaussRat(4));
  }

  TEST_CASE("Poly") {
    const Poly p({1.0, -3.0, 2.0});
    CHECK(p.degree() == 2);
    CHECK(std::abs(p(2.0) - cplx(3.0)) < 1e-15);
    const Poly q = p * Poly({0.0, 1.0});
    CHECK(q.degree() == 3);
    CHECK(std::abs(p.derivative()(1.0) - cplx(1.0)) < 1e-15);
    const Poly r = Poly::from_circle_samples([&](cplx t) { return p(t); }, 4, 0.7);
    for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(r[k] - p[k]) < 1e-13);
    CHECK(std::abs(r[3]) < 1e-13);
  }

  TEST_CASE("SIMD kernels match the scalar references") {
    const kernels::Table& ref = kernels::scalar_table();
    const kernels::Table* simd = kernels::simd_table();
    if (simd == nullptr) return;
    auto rng = sampling::substream(7, 7);
    std::normal_distribution<double> nd;
    for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 15u, 16u, 17u, 63u, 64u, 101u}) {
      std::vector<cplx> x(n), y(n);
      std::vector<double> w(n), d(n);
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = {nd(rng), nd(rng)};
        y[i] = {nd(rng), nd(rng)};
        w[i] = nd(rng);
        d[i] = nd(rng);
      }
      const double tol = 1e-13 * (1.0 + static_cast<double>(n));
      CHECK(std::abs(ref.cdotu(x.data(), y.data(), n) - simd->cdotu(x.data(), y.data(), n)) < tol);
      CHECK(std::abs(ref.cdotc(x.data(), y.data(), n) - simd->cdotc(x.data(), y.data(), n)) < tol);
      CHECK(std::abs(ref.ddot(w.data(), d.data(), n) - simd->ddot(w.data(), d.data(), n)) < tol);
      CHECK(std::abs(ref.wdot(w.data(), x.data(), n) - simd->wdot(w.data(), x.data(), n)) < tol);
      auto y1 = y, y2 = y;
      const cplx a(0.3, -1.2);
      ref.caxpy(a, x.data(), y1.data(), n);
      simd->caxpy(a, x.data(), y2.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y1[i] - y2[i]) < 1e-14);
    }
  }
}
