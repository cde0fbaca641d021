#include <doctest.h>

#include "qrep/linalg.hpp"

using namespace qrep;

TEST_CASE("nullspace of a rank-one matrix") {
  Mat m(2, 3);
  m << 1, 2, 3, 2, 4, 6;
  NullspaceResult ns = nullspace(m, default_tolerances().nullspace_eps);
  CHECK(ns.rank == 1);
  REQUIRE(ns.basis.cols() == 2);
  CHECK((m * ns.basis).norm() < 1e-12);
  CHECK((ns.basis.adjoint() * ns.basis - Mat::Identity(2, 2)).norm() < 1e-12);
}

TEST_CASE("nullspace edge shapes") {
  CHECK(nullspace(Mat(0, 3), 1e-12).basis.cols() == 3);
  CHECK(nullspace(Mat(3, 0), 1e-12).basis.cols() == 0);
  CHECK(nullspace(Mat::Zero(2, 2), 1e-12).basis.cols() == 2);
  Mat tall = Mat::Zero(5, 2);
  tall(0, 0) = 1;
  NullspaceResult ns = nullspace(tall, 1e-12);
  REQUIRE(ns.basis.cols() == 1);
  CHECK(std::abs(ns.basis(1, 0) - 1.0) < 1e-12);
}

TEST_CASE("phase normalization makes the largest entry real positive") {
  Mat v(3, 1);
  v << cplx(0, 0.1), cplx(0, -2), cplx(0.5, 0);
  normalize_phases(v);
  CHECK(std::abs(v(1, 0).imag()) < 1e-15);
  CHECK(v(1, 0).real() == doctest::Approx(2.0));
}

TEST_CASE("orthonormalize matches Gram-Schmidt on the first column") {
  Mat m(3, 2);
  m << cplx(0, 2), 1, 0, 1, 0, 0;
  Mat q = orthonormalize(m);
  CHECK((q.adjoint() * q - Mat::Identity(2, 2)).norm() < 1e-12);
  CHECK(std::abs(q(0, 0) - cplx(0, 1)) < 1e-12);
}

TEST_CASE("ranks and kernels at a relative tolerance") {
  Mat m = Mat::Zero(3, 3);
  m(0, 0) = 1;
  m(1, 1) = 1e-12;
  CHECK(numerical_rank(m, 1e-9) == 1);
  CHECK(kernel_basis(m, 1e-9).cols() == 2);
  CHECK(range_basis(m, 1e-9).cols() == 1);
  CHECK_FALSE(is_invertible(m, 1e-9));
  CHECK(is_invertible(Mat::Identity(2, 2), 1e-9));
}

TEST_CASE("seeded gaussians are reproducible") {
  std::mt19937_64 a(mix_seed(7, 0)), b(mix_seed(7, 0)), c(mix_seed(7, 1));
  Mat x = random_gaussian(2, 2, a), y = random_gaussian(2, 2, b), z = random_gaussian(2, 2, c);
  CHECK(x == y);
  CHECK(x != z);
}
