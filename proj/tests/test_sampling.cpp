#include <doctest.h>

#include <cmath>
#include <numbers>

#include "haar/error.hpp"
#include "haar/sampling.hpp"
#include "helpers.hpp"

using namespace haar;
using namespace haar::sampling;

TEST_SUITE("sampling") {
  TEST_CASE("substreams are reproducible and distinct") {
    auto a = substream(1, 2), b = substream(1, 2), c = substream(1, 3), d = substream(2, 2);
    const auto va = a(), vb = b(), vc = c(), vd = d();
    CHECK(va == vb);
    CHECK(va != vc);
    CHECK(va != vd);
  }

  TEST_CASE("Haar samples are unitary") {
    auto rng = substream(3, 0);
    for (std::size_t n : {1u, 3u, 6u}) {
      const ComplexMat u = haar_unitary(n, rng);
      CHECK(testutil::max_abs_diff(u * u.adjoint(), ComplexMat::identity(n)) < 1e-13);
    }
  }

  TEST_CASE("Haar moments") {
    // E|U_11|^2 = 1/n, E|tr U|^2 = 1, E tr U = 0
    const std::size_t n = 4;
    const McOptions opts{40000, 5, 1};
    const auto u11 = mc_average([](const ComplexMat& u) { return cplx(std::norm(u(0, 0))); }, EnsembleSpec::haar(n), opts);
    CHECK(std::abs(u11.mean.real() - 0.25) < 4 * u11.stderr_);
    const auto tr2 = mc_average([](const ComplexMat& u) { return cplx(std::norm(u.trace())); }, EnsembleSpec::haar(n), opts);
    CHECK(std::abs(tr2.mean.real() - 1.0) < 4 * tr2.stderr_);
    const auto tr = mc_average([](const ComplexMat& u) { return u.trace(); }, EnsembleSpec::haar(n), opts);
    CHECK(std::abs(tr.mean) < 4 * tr.stderr_);
  }

  TEST_CASE("Ginibre and GUE variances") {
    const McOptions opts{40000, 6, 1};
    const auto g = mc_average([](const ComplexMat& w) { return cplx(std::norm(w(0, 1))); }, EnsembleSpec::ginibre(3), opts);
    CHECK(std::abs(g.mean.real() - 1.0) < 4 * g.stderr_);
    const double beta = 2.5;
    const auto d = mc_average([](const ComplexMat& h) { return cplx(std::norm(h(1, 1))); }, EnsembleSpec::gue(3, beta), opts);
    CHECK(std::abs(d.mean.real() - 1.0 / beta) < 4 * d.stderr_);
    const auto o = mc_average([](const ComplexMat& h) { return cplx(std::norm(h(0, 2))); }, EnsembleSpec::gue(3, beta), opts);
    CHECK(std::abs(o.mean.real() - 1.0 / beta) < 4 * o.stderr_);
    auto rng = substream(6, 1);
    const ComplexMat h = gue(4, 1.0, rng);
    CHECK(testutil::max_abs_diff(h, h.adjoint()) == 0.0);
  }

  TEST_CASE("rank-one ensembles") {
    auto rng = substream(8, 0);
    for (int k = 0; k < 20; ++k) {
      const ComplexMat w = sample(EnsembleSpec::cue_rank1(5, 0.4), rng);
      for (cplx l : eigvals(w)) {
        CHECK(std::norm(l) >= 0.6 - 1e-10);
        CHECK(std::norm(l) <= 1.0 + 1e-10);
      }
      const ComplexMat v = sample(EnsembleSpec::gue_rank1(4, 1.0, 0.8), rng);
      for (cplx l : eigvals(v)) {
        CHECK(l.imag() >= -1e-10);
        CHECK(l.imag() <= 0.8 + 1e-10);
      }
    }
    CHECK_THROWS_AS(EnsembleSpec::cue_rank1(3, 1.5).validate(), PreconditionError);
  }

  TEST_CASE("results do not depend on the shard count") {
    const Draw draw = [](Rng& rng) { return complex_normal(rng); };
    const auto a = mc_run(draw, {5000, 11, 1});
    const auto b = mc_run(draw, {5000, 11, 3});
    CHECK(a.mean == b.mean);
    CHECK(a.stderr_ == b.stderr_);
    CHECK(b.shards == 3);
    CHECK(a.samples == 5000);
  }

  TEST_CASE("non-finite samples are reported") {
    std::size_t calls = 0;
    const Draw draw = [&](Rng&) { return ++calls == 7 ? cplx(NAN) : cplx(1.0); };
    CHECK_THROWS_AS(mc_run(draw, {100, 0, 1}), Error);
  }

  TEST_CASE("Accumulator merge equals sequential accumulation") {
    Accumulator all, left, right;
    for (int i = 0; i < 50; ++i) {
      const cplx x(std::sin(i), std::cos(3 * i));
      all.add(x);
      (i < 17 ? left : right).add(x);
    }
    left.merge(right);
    CHECK(left.count() == all.count());
    CHECK(std::abs(left.mean() - all.mean()) < 1e-15);
    CHECK(left.var_re() == doctest::Approx(all.var_re()).epsilon(1e-13));
    CHECK(left.var_im() == doctest::Approx(all.var_im()).epsilon(1e-13));
  }

  TEST_CASE("Binning") {
    const auto r = Binning::radial({0.0, 1.0, 2.0});
    CHECK(r.bins() == 2);
    CHECK(r.locate(cplx(0.5, 0.5)) == 0);
    CHECK(r.locate(cplx(1.5, 0.0)) == 1);
    CHECK(r.locate(cplx(3.0, 0.0)) == 2);
    CHECK(r.area(1) == doctest::Approx(3.0 * std::numbers::pi));
    const auto p = Binning::planar({0.0, 1.0, 2.0}, {0.0, 0.5});
    CHECK(p.bins() == 2);
    CHECK(p.area(0) == doctest::Approx(0.5));
    CHECK(p.locate(cplx(1.5, 0.25)) == 1);
    CHECK(p.locate(cplx(1.5, 0.75)) == 2);
  }

  TEST_CASE("eig_histogram of 1x1 Ginibre matrices") {
    const auto h = eig_histogram(EnsembleSpec::ginibre(1), Binning::radial({0.0, 0.5, 1.0, 1.5}), {40000, 2, 1});
    for (std::size_t b = 0; b < 3; ++b) {
      const double r0 = 0.5 * b, r1 = r0 + 0.5;
      const double expect = (std::exp(-r0 * r0) - std::exp(-r1 * r1)) / (std::numbers::pi * (r1 * r1 - r0 * r0));
      CHECK(std::abs(h.density[b] - expect) < 4 * h.stderr_[b]);
    }
    CHECK(h.outside == doctest::Approx(std::exp(-2.25)).epsilon(0.05));
  }
}
