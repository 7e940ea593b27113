#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "haar/densities.hpp"
#include "haar/error.hpp"

using namespace haar;
using namespace haar::densities;
using std::numbers::pi;

TEST_SUITE("densities") {
  TEST_CASE("Ginibre density") {
    CHECK(ginibre_density(1, 0.0) == doctest::Approx(1.0 / pi).epsilon(1e-15));
    CHECK(std::abs(ginibre_density(50, 0.5) - 1.0 / pi) < 1e-6);
    for (int n : {1, 3, 7}) {
      // termwise: int_0^R e^{-q} q^k/k! dq = P(k+1, R)
      const double r = 3.0;
      double expect = 0.0;
      for (int k = 0; k < n; ++k) {
        double tail = 0.0, term = 1.0;
        for (int j = 0; j <= k; ++j) {
          if (j > 0) term *= r * r / j;
          tail += term;
        }
        expect += 1.0 - std::exp(-r * r) * tail;
      }
      CHECK(ginibre_radial_mass(n, 0.0, r) == doctest::Approx(expect).epsilon(1e-10));
      CHECK(ginibre_radial_mass(n, 0.0, 15.0) == doctest::Approx(n).epsilon(1e-8));
    }
    CHECK(ginibre_density(2, 30.0) < 1e-300);
  }

  TEST_CASE("dimensional reduction") {
    CHECK(ginibre_reduction_check(2, 0.0, {20000, 1, 1}).pass);
    CHECK(ginibre_reduction_check(3, 1.0, {20000, 2, 1}).pass);
    const auto far = ginibre_reduction_check(2, 12.0, {2000, 3, 1});
    CHECK(far.lhs < 1e-50);
    CHECK(far.rhs < 1e-50);
  }

  TEST_CASE("rank-one CUE density") {
    const double g = 0.5;
    CHECK(cue_rank1_density(8, g, 0.5) == 0.0);
    CHECK(cue_rank1_density(8, g, std::sqrt(1.0 - g)) == 0.0);
    CHECK(cue_rank1_density(8, g, 1.0) == 0.0);
    CHECK(cue_rank1_density(8, g, 0.9) > 0.0);
    CHECK(cue_rank1_annulus_mass(8, g, 0.0, 1.0) == doctest::Approx(8.0).epsilon(1e-6));
    CHECK(cue_rank1_annulus_mass(5, 0.999, 0.0, 1.0) == doctest::Approx(5.0).epsilon(1e-4));
    CHECK(cue_rank1_annulus_mass(3, 0.2, 0.0, 1.0) == doctest::Approx(3.0).epsilon(1e-6));
    const auto edges = cue_equal_area_edges(g, 4);
    CHECK(edges.front() == doctest::Approx(std::sqrt(0.5)));
    CHECK(edges.back() == doctest::Approx(1.0));
  }

  TEST_CASE("rank-one CUE histogram") {
    for (const auto& r : cue_rank1_histogram_check(4, 0.6, 6, {20000, 5, 1})) CHECK(r.pass);
  }

  TEST_CASE("annulus counts") {
    CHECK(cue_rank1_count_limit(1e-9, 60.0, 0.5) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(cue_rank1_count_limit(0.7, 0.7, 0.3) == 0.0);
    const double lim = cue_rank1_count_limit(0.5, 1.5, 0.5);
    CHECK(std::abs(cue_rank1_count(200, 0.5, 1.5, 0.5) - lim) < 0.02 * lim);
  }

  TEST_CASE("rank-one GUE density") {
    const double beta = 1.7, gamma = 0.9;
    CHECK(gue_rank1_prefactor(3, beta, gamma, 0.2, -0.1) == 0.0);
    CHECK(gue_rank1_prefactor(3, beta, gamma, 0.2, 0.95) == 0.0);
    CHECK(gue_rank1_density(3, beta, gamma, cplx(0.0, 1.2), {}).value == 0.0);
    for (auto [x, y] : {std::pair{0.0, 0.2}, std::pair{1.4, 0.7}}) {
      const double closed = x * x + 1.0 / beta + (2.0 * y - gamma) * (2.0 * y - gamma);
      CHECK(gue_rank1_inner_n2(beta, gamma, cplx(x, y)) == doctest::Approx(closed).epsilon(1e-12));
      const auto d = gue_rank1_density(2, beta, gamma, cplx(x, y), {});
      CHECK(d.stderr_ == 0.0);
      CHECK(d.value == doctest::Approx(gue_rank1_prefactor(2, beta, gamma, x, y) * closed).epsilon(1e-12));
    }
    // n = 3 density by Monte Carlo matches the strip-mass integrand at one point
    const auto v = gue_rank1_density(3, 1.0, 0.7, cplx(0.3, 0.2), {20000, 9, 1});
    CHECK(v.value > 0.0);
    CHECK(v.stderr_ < 0.05 * v.value);
  }

  TEST_CASE("rank-one GUE strip mass") {
    const auto m2 = gue_rank1_strip_mass(2, 1.0, 0.7, {4000, 1, 1});
    CHECK(std::abs(m2.value - 2.0) < 4 * m2.stderr_);
    const auto m3 = gue_rank1_strip_mass(3, 2.0, 0.5, {4000, 2, 1});
    CHECK(std::abs(m3.value - 3.0) < 4 * m3.stderr_);
  }

  TEST_CASE("Marchenko-Pastur law") {
    const auto mp = SpectralLaw::mp();
    CHECK(mp.mass() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(mp.m1() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_FALSE(mp.m_inv().has_value());
    // regression value
    CHECK(mp.log_moment() == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(mp.integrate([](double l) { return l * l; }) == doctest::Approx(2.0).epsilon(1e-10));
  }

  TEST_CASE("log-potential branches") {
    const auto mp = SpectralLaw::mp();
    CHECK(fz_phi(mp, 0.5).value == doctest::Approx(-0.75).epsilon(1e-9));
    CHECK(fz_phi(mp, 0.0).value == doctest::Approx(-1.0).epsilon(1e-9));
    const auto out = fz_phi(mp, 2.0);
    CHECK(out.branch == PhiBranch::outer);
    CHECK(out.value == std::log(4.0));
    for (double r : {0.99, 0.999, 0.9999}) CHECK(std::abs(fz_phi(mp, r).value - (r * r - 1.0)) < 1e-9);
    CHECK(std::abs(fz_phi(mp, 1.0 - 1e-7).value - fz_phi(mp, 1.0 + 1e-7).value) < 1e-6);
    const auto delta = SpectralLaw::discrete({1.0}, {1.0});
    CHECK(delta.m_inv().value() == 1.0);
    CHECK(fz_phi(delta, 2.0).value == doctest::Approx(std::log(4.0)));
    CHECK(fz_phi(delta, 0.5).value == doctest::Approx(0.0));
    CHECK(fz_phi(delta, 0.5).branch == PhiBranch::inner);
  }

  TEST_CASE("subharmonicity of the Marchenko-Pastur potential") {
    const auto mp = SpectralLaw::mp();
    const double h = 0.05;
    auto phi = [&](double x, double y) { return fz_phi(mp, cplx(x, y)).value; };
    for (double x : {-0.6, -0.2, 0.1, 0.45})
      for (double y : {-0.5, 0.0, 0.3}) {
        const double lap = phi(x + h, y) + phi(x - h, y) + phi(x, y + h) + phi(x, y - h) - 4.0 * phi(x, y);
        CHECK(lap / (h * h) >= -1e-8);
      }
  }

  TEST_CASE("other laws tile the plane") {
    const auto two = SpectralLaw::discrete({0.5, 2.0}, {0.5, 0.5});
    std::vector<double> qs;
    for (int k = 0; k <= 60; ++k) qs.push_back(0.05 * k);
    CHECK(phi_tiling_gaps(two, qs).empty());
    CHECK(phi_tiling_gaps(SpectralLaw::mp(), qs).empty());
    // continuity at the branch points 1/m_{-1} = 0.8 and m1 = 1.25
    for (double q : {0.8, 1.25}) {
      const double lo = fz_phi(two, std::sqrt(q * (1 - 1e-7))).value;
      const double hi = fz_phi(two, std::sqrt(q * (1 + 1e-7))).value;
      CHECK(std::abs(lo - hi) < 1e-5);
    }
  }

  TEST_CASE("laws from tables") {
    const std::string path = "densities_test_law.csv";
    {
      std::ofstream f(path);
      f << "# lambda,mass\n0.5,0.25\n1.0,0.5\n1.5,0.25\n";
    }
    const auto law = SpectralLaw::from_csv(path);
    std::remove(path.c_str());
    CHECK(law.kind() == SpectralLaw::Kind::table);
    CHECK(law.m1() == doctest::Approx(1.0));
    CHECK_THROWS_AS(SpectralLaw::discrete({1.0, 2.0}, {0.5, 0.4}), PreconditionError);
    CHECK_THROWS_AS(SpectralLaw::discrete({1.0, 2.0}, {1.5, -0.5}), PreconditionError);
    CHECK_THROWS_AS(SpectralLaw::table({2.0, 1.0}, {0.5, 0.5}), PreconditionError);
  }

  TEST_CASE("Ginibre log-moment through the invariant reduction") {
    const int n = 8;
    const auto pn = ginibre_charpoly_mc(n, {20000, 4, 1});
    // <det(xI + WW*)> for E|w|^2 = 1/n: sum_k C(n,k) n!/(n-k)! n^{-k} x^{n-k}
    for (int k = 0; k <= n; ++k) {
      const double ek = std::tgamma(n + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(n - k + 1.0)) * std::tgamma(n + 1.0) /
                        std::tgamma(n - k + 1.0) * std::pow(n, -k);
      CHECK(std::abs(pn.p[n - k].real() - ek) < 4 * pn.stderr_[n - k] + 1e-12);
    }
    const auto r = ber_check(n, 0.5, pn);
    CHECK(r.lhs == doctest::Approx(r.params["exact_finite_n"].get<double>()).epsilon(0.02));
  }
}
