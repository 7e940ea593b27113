#include <doctest.h>

#include <cmath>

#include "haar/error.hpp"
#include "haar/schur.hpp"
#include "helpers.hpp"

using namespace haar;
using namespace haar::schur;

namespace {

// s_lambda by the bialternant in exact-free brute force: det(x_i^{lambda_j + n - j}) / det(x_i^{n-j})
cplx bialternant(const Partition& lam, const std::vector<cplx>& x) {
  const std::size_t n = x.size();
  ComplexMat num(n), den(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      num(i, j) = std::pow(x[i], static_cast<double>(lam[j] + n - 1 - j));
      den(i, j) = std::pow(x[i], static_cast<double>(n - 1 - j));
    }
  return det(num) / det(den);
}

}  // namespace

TEST_SUITE("schur") {
  TEST_CASE("partitions and conjugates") {
    CHECK(Partition{4, 2, 1}.conjugate() == Partition{3, 2, 1, 1});
    CHECK(Partition{3, 0, 0}.length() == 1);
    CHECK(Partition{}.conjugate().empty());
    CHECK(partitions(4).size() == 5);
    CHECK(partitions(6, 3).size() == 7);
    CHECK(partitions(6, 2, 3).size() == 1);  // only (3, 3)
    CHECK(partitions(0).size() == 1);
    CHECK_THROWS_AS(Partition({1, 2}), PreconditionError);
    for (const auto& p : partitions(7)) CHECK(p.conjugate().conjugate() == p);
  }

  TEST_CASE("Schur values against an independent bialternant") {
    const std::vector<cplx> x = {cplx(0.3, 0.1), cplx(-0.7, 0.2), cplx(1.1, -0.4), cplx(0.05, 0.9)};
    for (int w = 1; w <= 5; ++w)
      for (const auto& lam : partitions(w, 4)) {
        const cplx ref = bialternant(lam, x);
        CHECK(std::abs(schur_eval(lam, x) - ref) < 1e-11 * std::max(1.0, std::abs(ref)));
        CHECK(std::abs(schur_jacobi_trudi(lam, x) - ref) < 1e-11 * std::max(1.0, std::abs(ref)));
      }
    CHECK(schur_eval(Partition{1, 1, 1}, {1.0, 2.0}) == cplx(0.0));
    CHECK(std::abs(schur_eval(Partition{1}, {1.0, 2.0, 3.0}) - cplx(6.0)) < 1e-13);
  }

  TEST_CASE("confluent arguments give the dimension") {
    for (const auto& lam : partitions(5, 3)) {
      const cplx v = schur_eval(lam, {1.0, 1.0, 1.0});
      CHECK(v.real() == doctest::Approx(dim_u(lam, 3).get_d()).epsilon(1e-12));
    }
    CHECK(dim_u(Partition{2, 1}, 3) == 8);
    CHECK(dim_u_conj(Partition{2, 1}, 3) == 8);
    CHECK(dim_u(Partition{2}, 3) == 6);
    CHECK(dim_u_conj(Partition{2}, 3) == 3);
    CHECK(dim_u(Partition{}, 0) == 1);
  }

  TEST_CASE("h_r and e_r") {
    const std::vector<cplx> x = {1.0, 2.0, 3.0};
    const auto he = hr_er(x, 2);
    CHECK(std::abs(he.e - cplx(11.0)) < 1e-13);
    CHECK(std::abs(he.h - cplx(25.0)) < 1e-13);
    const auto e = elementary(x, 3);
    const auto h = complete_from_elementary(e, 4);
    const auto h2 = complete(x, 4);
    for (int k = 0; k <= 4; ++k) CHECK(std::abs(h[k] - h2[k]) < 1e-10);
  }

  TEST_CASE("Schur of a matrix equals Schur of its eigenvalues") {
    const ComplexMat m = testutil::random_mat(4, 77, 0.5);
    const auto ev = eigvals(m);
    for (const auto& lam : partitions(4, 4)) {
      const cplx ref = schur_jacobi_trudi(lam, ev);
      CHECK(std::abs(schur_eval_matrix(lam, m) - ref) < 1e-10 * std::max(1.0, std::abs(ref)));
    }
  }

  TEST_CASE("the two c_lambda forms agree") {
    for (int w = 0; w <= 6; ++w)
      for (const auto& lam : partitions(w)) CHECK(c_lambda_det(lam) == c_lambda_prod(lam));
    CHECK(c_lambda_det(Partition{1}) == 1);
    CHECK(c_lambda_det(Partition{2}) == BigRat(1, 2));
  }

  TEST_CASE("Cauchy identities") {
    const std::vector<cplx> t = {cplx(0.3, 0.1), cplx(-0.2, 0.25)};
    const ComplexMat x = testutil::random_mat(3, 91, 0.3);
    CHECK(cauchy_check(t, x, CauchyKind::elementary).pass);
    CHECK(cauchy_check(t, x, CauchyKind::complete, 40).pass);
  }

  TEST_CASE("Schur orthogonality over U(n)") {
    const ComplexMat a = testutil::random_mat(3, 92, 0.7);
    const ComplexMat b = testutil::random_mat(3, 93, 0.7);
    CHECK(orthogonality_check(Partition{1}, Partition{1}, a, b, 30000, 4).pass);
    CHECK(orthogonality_check(Partition{2}, Partition{1, 1}, a, b, 30000, 5).pass);
  }

  TEST_CASE("Lagrange weights") {
    const std::vector<double> x = {0.2, 0.9, 1.7, 3.1};
    const auto w = lagrange_weights(x);
    for (int k = 0; k < 3; ++k) {
      double s = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) s += w[j] * std::pow(x[j], k);
      CHECK(std::abs(s) < 1e-13);
    }
    double top = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) top += w[j] * std::pow(x[j], 3);
    CHECK(top == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK_THROWS_AS(lagrange_weights(std::vector<double>{1.0, 1.0 + 1e-9}), PreconditionError);
  }
}
