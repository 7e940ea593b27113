#include <doctest.h>

#include <cmath>

#include "haar/error.hpp"
#include "haar/moments.hpp"
#include "helpers.hpp"

using namespace haar;
using namespace haar::moments;

namespace {

// Entries (re + i im)/den with small integers, as both float and exact matrices.
struct Pair {
  ComplexMat f;
  GaussRatMatrix q;
};

Pair small_rational(std::size_t n, std::uint64_t key, int den) {
  auto rng = sampling::substream(99, key);
  std::uniform_int_distribution<int> d(-3, 3);
  Pair p{ComplexMat(n), GaussRatMatrix(n, std::vector<GaussRat>(n))};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const int re = d(rng), im = d(rng);
      p.f(i, j) = cplx(re, im) / static_cast<double>(den);
      p.q[i][j] = GaussRat(BigRat(re, den), BigRat(im, den));
    }
  return p;
}

double gauss_to_double(const GaussRat& g) { return g.re.get_d(); }

}  // namespace

TEST_SUITE("moments") {
  TEST_CASE("CUE second moment at n = 2") {
    const cplx z(0.6, 0.8);
    const ComplexMat id = ComplexMat::identity(2);
    const MomentQuery q{-1.0 * id, -1.0 * id, ComplexMat::scalar(2, z), ComplexMat::scalar(2, z), 1, Sign::positive};
    const double expect = 1.0 + std::norm(z) + std::norm(z) * std::norm(z);
    CHECK(std::abs(moment_pos(q) - expect) < 1e-13);
    CHECK(std::abs(moment_pos_beta(q) - expect) < 1e-13);
    CHECK(moment_pos_z(id, z) == doctest::Approx(expect).epsilon(1e-14));
  }

  TEST_CASE("quadrature and Beta-sum routes agree") {
    for (std::uint64_t k = 0; k < 6; ++k) {
      auto rng = sampling::substream(17, k);
      const auto q = random_query(rng, 2 + k % 3, 1 + static_cast<int>(k % 2), Sign::positive);
      const cplx a = moment_pos(q), b = moment_pos_beta(q);
      CHECK(std::abs(a - b) < 1e-11 * std::max(1.0, std::abs(a)));
    }
  }

  TEST_CASE("exact rational moments") {
    const auto a = small_rational(3, 1, 4), b = small_rational(3, 2, 4), c = small_rational(3, 3, 2),
               d = small_rational(3, 4, 2);
    const auto p = detpoly(a.f, b.f, c.f, d.f);
    const auto pe = detpoly_exact(a.q, b.q, c.q, d.q);
    for (std::size_t k = 0; k < pe.size(); ++k) {
      CHECK(p[k].real() == doctest::Approx(pe[k].re.get_d()).epsilon(1e-12));
      CHECK(p[k].imag() == doctest::Approx(pe[k].im.get_d()).epsilon(1e-12));
    }
    for (int m : {1, 2}) {
      const GaussRat ex = moment_pos_exact(a.q, b.q, c.q, d.q, m);
      const cplx fl = moment_pos({a.f, b.f, c.f, d.f, m, Sign::positive});
      CHECK(fl.real() == doctest::Approx(gauss_to_double(ex)).epsilon(1e-11));
      CHECK(fl.imag() == doctest::Approx(ex.im.get_d()).epsilon(1e-11));
    }
  }

  TEST_CASE("negative moments") {
    const ComplexMat id = ComplexMat::identity(3);
    // <|det(zI - U)|^{-2}> = |z|^{-2n} / (1 - |z|^{-2})
    const double v = moment_neg_z(id, 1.5);
    const double q = 2.25;
    CHECK(v == doctest::Approx(std::pow(q, -3.0) / (1.0 - 1.0 / q)).epsilon(1e-10));
    CHECK(moment_neg_z(ComplexMat::identity(2), 1.5) == doctest::Approx(1.0 / (2.25 * 1.25)).epsilon(1e-10));
    // lower branch: |z|^2 below the spectrum
    const ComplexMat a = 2.0 * ComplexMat::identity(2);
    CHECK(moment_neg_z(a, 0.5) == doctest::Approx(1.0 / (16.0 * (1.0 - 0.25 / 4.0))).epsilon(1e-10));
    CHECK_THROWS_AS(moment_neg_z(ComplexMat::identity(2), 1.0), PreconditionError);
    auto rng = sampling::substream(19, 0);
    auto qn = random_query(rng, 3, 1, Sign::negative);
    qn.a = 5.0 * qn.c;
    CHECK_THROWS_AS(moment_neg(qn), PreconditionError);
  }

  TEST_CASE("negative moments on the matrix form") {
    const ComplexMat id = ComplexMat::identity(3);
    const cplx z(1.2, 0.9);
    const MomentQuery q{-1.0 * id, -1.0 * id, ComplexMat::scalar(3, z), ComplexMat::scalar(3, z), 1, Sign::negative};
    CHECK(moment_neg(q).real() == doctest::Approx(moment_neg_z(id, z)).epsilon(1e-9));
  }

  TEST_CASE("invariant ensemble reduction") {
    // W unitary: p_n(x) = (1 + x)^n
    const int n = 4;
    std::vector<cplx> c(n + 1);
    for (int k = 0; k <= n; ++k) c[k] = std::tgamma(n + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(n - k + 1.0));
    const cplx z(0.7, -0.4);
    double expect = 0.0;
    for (int k = 0; k <= n; ++k) expect += std::pow(std::norm(z), k);
    CHECK(invariant_ensemble_moment(Poly(c), z, n).real() == doctest::Approx(expect).epsilon(1e-12));
  }

  TEST_CASE("formula against Monte Carlo") {
    auto rng = sampling::substream(23, 0);
    CHECK(thm1_mc_check(random_query(rng, 3, 1, Sign::positive), {40000, 3, 1}).pass);
    CHECK(thm1_mc_check(random_query(rng, 4, 2, Sign::negative), {40000, 4, 1}).pass);
  }

  TEST_CASE("query validation") {
    auto rng = sampling::substream(29, 0);
    auto q = random_query(rng, 3, 2, Sign::positive);
    q.sign = Sign::negative;
    CHECK_THROWS_AS(q.validate(), PreconditionError);
    q.m = 0;
    CHECK_THROWS_AS(q.validate(), PreconditionError);
  }
}
