#include <doctest.h>

#include <cmath>

#include "haar/error.hpp"
#include "haar/moments.hpp"
#include "haar/quadrature.hpp"
#include "haar/regdet.hpp"
#include "helpers.hpp"

using namespace haar;
using namespace haar::regdet;

namespace {

double ik_quad(int k, double eps2, double a2) {
  auto f = [&](double t) {
    const double d = t - a2 + eps2;
    return std::pow(1.0 - t, k) / std::sqrt(d * d + 4.0 * eps2 * a2);
  };
  const double s = std::clamp(a2 - eps2, 0.0, 1.0);
  double v = 0.0;
  if (s > 0.0) v += adaptive_integrate(f, 0.0, s, 1e-15).value;
  if (s < 1.0) v += adaptive_integrate(f, s, 1.0, 1e-15).value;
  return v;
}

}  // namespace

TEST_SUITE("regdet") {
  TEST_CASE("I_0 closed form") {
    for (double a2 : {0.0, 0.4, 1.0, 3.0})
      for (double eps : {1e-4, 0.1, 1.0}) {
        const double e2 = eps * eps;
        const double b = 1.0 - a2 + e2;
        const double root = std::sqrt(b * b + 4.0 * e2 * a2);
        // b + root, rationalized when b < 0
        const double num = b >= 0.0 ? b + root : 4.0 * e2 * a2 / (root - b);
        const double i0 = std::log(num / (2.0 * e2));
        CHECK(ik_exact(0, e2, a2).value == doctest::Approx(i0).epsilon(1e-10));
      }
    // a^2 = 1: ln(1/eps) + O(eps)
    CHECK(std::abs(ik_exact(0, 1e-12, 1.0).value - std::log(1e6)) < 1e-5);
  }

  TEST_CASE("I_k against adaptive quadrature") {
    for (int k : {1, 2, 5, 9, 12})
      for (double a2 : {0.0, 0.3, 1.0, 2.0, 4.0})
        for (double eps : {1e-6, 1e-3, 0.3, 1.0}) {
          const double ref = ik_quad(k, eps * eps, a2);
          CHECK(ik_exact(k, eps * eps, a2).value == doctest::Approx(ref).epsilon(1e-8));
        }
  }

  TEST_CASE("antiderivative reproduces the integrand") {
    const int k = 4;
    const double e2 = 0.01, a2 = 0.6;
    const auto r = ik_exact(k, e2, a2);
    const Poly dq = r.q.derivative();
    for (double t : {0.0, 0.3, 0.77, 1.0}) {
      const double s = (t - a2 + e2) * (t - a2 + e2) + 4.0 * e2 * a2;
      const double lhs = std::pow(1.0 - t, k);
      const double rhs = dq(t).real() * s + r.q(t).real() * (t - a2 + e2) + r.lambda;
      CHECK(rhs == doctest::Approx(lhs).epsilon(1e-10));
    }
  }

  TEST_CASE("small-eps asymptotics") {
    for (int k : {0, 2, 6})
      for (double a2 : {0.5, 1.0, 2.0}) {
        const double e2 = 1e-10;
        CHECK(ik_asymptotic(k, e2, a2) == doctest::Approx(ik_exact(k, e2, a2).value).epsilon(1e-4));
      }
    // leading term (1-a^2)^2 ln(1/eps^2) at k = 2, eps = 1e-3
    const double step = ik_exact(2, 1e-6, 0.5).value - ik_exact(2, 1e-8, 0.5).value;
    CHECK(step == doctest::Approx(-0.25 * std::log(100.0)).epsilon(1e-2));
  }

  TEST_CASE("F_eps") {
    const int n = 4;
    const double e2 = 0.01;
    const double ref =
        adaptive_integrate([&](double t) { return (n - 1) * std::pow(1.0 - t, n - 2) / (t + e2); }, 0.0, 1.0, 1e-14).value;
    CHECK(f_eps(0.0, e2, n) == doctest::Approx(ref).epsilon(1e-10));
    CHECK(f_eps(0.7, e2, 2) == doctest::Approx(ik_exact(0, e2, 0.7).value).epsilon(1e-15));
    const double big = 1e4;
    CHECK(f_eps(0.5, big * big, 3) * big * big == doctest::Approx(1.0).epsilon(1e-3));
  }

  TEST_CASE("eps -> 0 reproduces the negative moments") {
    for (const auto& [eigs, z] : std::vector<std::pair<std::vector<double>, cplx>>{
             {{4.0, 9.0}, 1.0}, {{0.1, 0.5}, 1.0}, {{0.2, 0.4, 0.7}, cplx(0.0, 1.0)}, {{2.0, 3.0, 5.0}, cplx(1.1, 0.3)}}) {
      const HermSpectrum aa(eigs);
      const double lim = moments::moment_neg_z(aa, z) * std::pow(std::norm(z), static_cast<double>(eigs.size()));
      const double r = r_eps(aa, z, 1e-8);
      CHECK(r == doctest::Approx(lim).epsilon(1e-6));
      // O(eps) remainder
      CHECK(std::abs(r_eps(aa, z, 1e-4) - lim) < 1e-2 * std::max(1.0, lim));
    }
  }

  TEST_CASE("polynomials of degree n-2 are annihilated") {
    const std::vector<double> x = {0.3, 0.8, 1.4, 2.2};
    auto f = [&](double a) { return f_eps(a, 0.01, 4); };
    auto g = [&](double a) { return f(a) + 3.0 - 2.0 * a + 0.5 * a * a; };
    CHECK(lagrange_sum(x, g) == doctest::Approx(lagrange_sum(x, f)).epsilon(1e-9));
  }

  TEST_CASE("divided differences agree with Lagrange weights") {
    const std::vector<double> x = {0.3, 0.8, 1.4};
    auto f = [&](double a) { return f_eps(a, 0.04, 3); };
    CHECK(lagrange_sum(x, f, {true}) == doctest::Approx(lagrange_sum(x, f)).epsilon(1e-10));
    const std::vector<double> tight = {0.5, 0.5 + 1e-8, 1.5};
    CHECK_THROWS_AS(lagrange_sum(tight, f), PreconditionError);
    CHECK(std::isfinite(lagrange_sum(tight, f, {true})));
  }

  TEST_CASE("asymptotic coefficients") {
    const HermSpectrum two({0.5, 2.0});
    CHECK(asym_coeffs(two, 1.0).alpha == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(asym_coeffs(HermSpectrum({1.5, 3.0}), 1.0).alpha == doctest::Approx(0.0));
    CHECK(asym_coeffs(HermSpectrum({0.1, 0.2, 0.6}), 1.0).alpha == doctest::Approx(0.0));
    // normalized and unnormalized forms of alpha coincide
    for (const auto& [eigs, z] : std::vector<std::pair<std::vector<double>, cplx>>{
             {{0.5, 2.0}, 1.3}, {{0.2, 0.9, 3.0}, cplx(0.5, 1.0)}, {{0.5, 1.2, 1.9, 4.0}, 1.2}}) {
      const HermSpectrum aa(eigs);
      CHECK(alpha_unscaled(aa, z) == doctest::Approx(asym_coeffs(aa, z).alpha).epsilon(1e-12));
    }
  }

  TEST_CASE("slope fits") {
    CHECK(theorem2a_density_ratio(HermSpectrum({0.5, 2.0}), 1.0).pass);
    CHECK(theorem2a_density_ratio(HermSpectrum({0.2, 0.6, 1.8}), 1.0).pass);
    const auto fit = slope_fit(HermSpectrum({0.4, 1.5, 2.5}), cplx(0.0, 1.0));
    CHECK(fit.eps.size() == 6);
    CHECK(fit.max_residual < 1e-3);
    const auto ac = asym_coeffs(HermSpectrum({0.4, 1.5, 2.5}), cplx(0.0, 1.0));
    CHECK(fit.intercept == doctest::Approx(ac.beta).epsilon(1e-2));
  }

  TEST_CASE("an eigenvalue exactly at |z|^2") {
    const HermSpectrum aa({1.0, 2.5});
    const auto ac = asym_coeffs(aa, 1.0);
    const double eps = 1e-6;
    const double r = r_eps(aa, 1.0, eps);
    CHECK(std::abs(r - (ac.alpha * std::log(1.0 / (eps * eps)) + ac.beta)) < 1e-4);
  }

  TEST_CASE("r_eps is continuous across |z|^2 and decreasing in eps") {
    const double e = 0.05;
    const double below = r_eps(HermSpectrum({0.5, 1.0 - 1e-7, 2.0}), 1.0, e);
    const double above = r_eps(HermSpectrum({0.5, 1.0 + 1e-7, 2.0}), 1.0, e);
    CHECK(below == doctest::Approx(above).epsilon(1e-5));
    double prev = INFINITY;
    for (double eps : {0.01, 0.03, 0.1, 0.3, 1.0}) {
      const double v = r_eps(HermSpectrum({0.3, 1.7, 2.4}), 1.0, eps);
      CHECK(v < prev);
      prev = v;
    }
  }

  TEST_CASE("formula against the Haar integral") {
    const ComplexMat a = testutil::random_mat(4, 300, 0.5);
    const HermSpectrum aa = gram_eigs(a);
    const cplx z = std::sqrt(std::sqrt(aa[1] * aa[2]));
    const auto est = r_eps_mc(a, z, 0.1, {40000, 8, 1});
    CHECK(std::abs(est.mean.real() - r_eps(aa, z, 0.1)) < 4 * est.stderr_);
  }

  TEST_CASE("preconditions") {
    CHECK_THROWS_AS(r_eps(HermSpectrum({0.5, 2.0}), 1.0, 0.0), PreconditionError);
    CHECK_THROWS_AS(r_eps(HermSpectrum({0.5, 2.0}), 0.0, 0.1), PreconditionError);
    CHECK_THROWS_AS(r_eps(HermSpectrum({2.0}), 1.0, 0.1), PreconditionError);
  }
}
