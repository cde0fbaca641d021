#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qrep/errors.hpp"
#include "qrep/operator_models.hpp"

using namespace qrep;

namespace {

Vec unit(int n, int i) {
  Vec e = Vec::Zero(n);
  e(i) = 1.0;
  return e;
}

Mat projector(const Mat& j) { return j * j.adjoint(); }

// Direct square-summability estimate: the mass of |x_n|^2 over [200, 400).
double tail_mass(const SequenceSpec& num, const SequenceSpec& den) {
  double s = 0;
  for (long n = 200; n < 400; ++n) s += std::exp(2 * (log_abs(num, n) - log_abs(den, n)));
  return s;
}

}  // namespace

TEST_CASE("sequence literals evaluate and print back") {
  CHECK(value(parse_sequence("seq:reciprocal"), 4) == doctest::Approx(0.25));
  CHECK(value(parse_sequence("one-minus-pow:2"), 3) == doctest::Approx(0.875));
  auto even = parse_sequence("seq:exp-neg-pow:3:even");
  CHECK(log_abs(even, 2) == doctest::Approx(-9));
  CHECK(value(even, 3) == 1.0);
  CHECK(value(even, -2) == 1.0);
  CHECK(log_abs(parse_sequence("hrr"), 3) == doctest::Approx(-6));
  CHECK(log_abs(parse_sequence("hrr"), 4) == doctest::Approx(24));
  auto l = parse_sequence("seq:list:[0,2.5]:reciprocal");
  CHECK(value(l, 1) == 0.0);
  CHECK(value(l, 2) == 2.5);
  CHECK(value(l, 4) == doctest::Approx(0.25));
  CHECK(to_string(l) == "seq:list:[0,2.5]:reciprocal");
  for (const char* s : {"seq:const:-1.5", "seq:exp-neg-pow:2:odd", "seq:hrr", "seq:one-minus-pow:3"})
    CHECK(to_string(parse_sequence(s)) == s);
  CHECK_THROWS_AS(value(parse_sequence("list:[1,2]"), 3), PreconditionError);
  CHECK_THROWS_AS(value(parse_sequence("reciprocal"), 0), PreconditionError);
  CHECK_THROWS_AS(parse_sequence("seq:bogus"), ParseError);
  CHECK_THROWS_AS(parse_sequence("exp-neg-pow:2:sideways"), ParseError);
}

TEST_CASE("fixtures act on columns") {
  Mat j = jordan(2, 0.0);
  Mat want(2, 2);
  want << 0, 0, 1, 0;
  CHECK(j == want);
  CHECK((unilateral_shift(3) * unit(3, 0) - unit(3, 1)).norm() == 0);
  CHECK(make_fixture("jordan:3:2") == oracle::jordan(3, 2.0));
  CHECK(make_fixture("shift:4") == unilateral_shift(4));
  CHECK(make_fixture("bilateral-shift:4") == bilateral_shift(4));
  CHECK(make_fixture("diag:3:seq:reciprocal").diagonal()(2).real() == doctest::Approx(1.0 / 3));
  CHECK_THROWS_AS(make_fixture("wobble:3"), ParseError);
  CHECK_THROWS_AS(make_fixture("shift:x"), ParseError);
  CHECK_THROWS_AS(make_fixture("shift:0"), PreconditionError);

  // theta_{x,y}(z) = (z|y) x with (z|y) = sum z_i conj(y_i)
  std::mt19937_64 rng(3);
  Vec y = random_gaussian(4, 1, rng), z = random_gaussian(4, 1, rng);
  Vec x = unit(4, 0);
  cplx ip = 0;
  for (int i = 0; i < 4; ++i) ip += z(i) * std::conj(y(i));
  CHECK((rank_one(x, y) * z - ip * x).norm() < 1e-14);
}

TEST_CASE("shift plus rank-one pair") {
  auto rec = parse_sequence("reciprocal");
  const int n = 6;
  OperatorPair p = kron_pair_shift_rank_one(rec, rec, n);
  std::mt19937_64 rng(5);
  Vec x = random_gaussian(n, 1, rng);
  Vec want(n);
  want(0) = 0;
  for (int i = 0; i < n; ++i) want(0) += x(i) / double(i + 1);
  for (int i = 1; i < n; ++i) want(i) = x(i - 1) / double(i);
  CHECK((p.a * x - want).norm() < 1e-14);
  CHECK(p.b == unilateral_shift(n));

  for (int size : {16, 32}) {
    OperatorPair q = kron_pair_shift_rank_one(rec, rec, size);
    auto sv = singular_values(q.a);
    CHECK(sv(sv.size() - 1) / sv(0) > 1e-12);
    CHECK(oracle::kernel_dim(q.a, 1e-12) == 0);
  }
  CHECK_THROWS_AS(kron_pair_shift_rank_one(parse_sequence("list:[1,1]:reciprocal"), rec, 4), PreconditionError);
  CHECK_THROWS_AS(kron_pair_shift_rank_one(rec, parse_sequence("const:0"), 4), PreconditionError);
}

TEST_CASE("density verdicts for three reference families") {
  auto rec = parse_sequence("reciprocal");
  CHECK(density_criterion(rec, rec).dense);
  auto first_zero = density_criterion(parse_sequence("list:[0]:reciprocal"), rec);
  CHECK_FALSE(first_zero.dense);
  CHECK_FALSE(first_zero.lambda_nonzero);
  auto omp = density_criterion(parse_sequence("one-minus-pow:2"), rec);
  CHECK_FALSE(omp.dense);
  CHECK(omp.ratio_in_l2);
  CHECK(omp.method == "closed-form");
  CHECK_THROWS_AS(density_criterion(parse_sequence("list:[1,2,3]"), rec), PreconditionError);
}

TEST_CASE("closed-form square summability agrees with direct tail sums") {
  const char* lam[] = {"reciprocal", "one-minus-pow:2", "const:3", "one-minus-pow:4"};
  const char* ws[] = {"reciprocal", "const:1", "exp-neg-pow:1.01:even", "list:[5]:reciprocal"};
  for (const char* l : lam)
    for (const char* w : ws) {
      auto a = parse_sequence(l), b = parse_sequence(w);
      auto v = density_criterion(a, b);
      CAPTURE(l);
      CAPTURE(w);
      CHECK(v.ratio_in_l2 == (tail_mass(b, a) < 0.1));
    }
  // factorial and super-exponential weights, by hand
  auto rec = parse_sequence("reciprocal");
  CHECK(density_criterion(rec, parse_sequence("hrr")).dense);                   // even class blows up
  CHECK(density_criterion(rec, parse_sequence("exp-neg-pow:2:even")).dense);   // odd class is n
  CHECK_FALSE(density_criterion(parse_sequence("const:1"), parse_sequence("const:0")).dense);
}

TEST_CASE("bilateral pair") {
  auto one = parse_sequence("const:1");
  OperatorPair p = kron_pair_bilateral(one, one, 5);
  CHECK(p.a == Mat(Mat::Identity(5, 5)));
  CHECK(p.b == bilateral_shift(5));
  CHECK(window_start(5) == -2);
  CHECK(window_start(4) == -2);

  auto a = parse_sequence("exp-neg-pow:3:even"), b = parse_sequence("exp-neg-pow:3:odd");
  OperatorPair q = kron_pair_bilateral(a, b, 8);  // window [-4, 3]
  CHECK(std::log(q.a(6, 6).real()) == doctest::Approx(-9));
  CHECK(std::log(q.b(7, 6).real()) == doctest::Approx(0));
  CHECK(std::log(q.b(6, 5).real()) == doctest::Approx(-3));
  CHECK(oracle::kernel_dim(q.a, 1e-14) == 0);
  // the window drops the wrap-around, so only the last basis vector dies under B
  CHECK(oracle::kernel_dim(q.b, 1e-14) == 1);
  CHECK((q.b * unit(8, 7)).norm() == 0);

  CHECK_THROWS_AS(kron_pair_bilateral(parse_sequence("const:0"), one, 3), PreconditionError);
  CHECK_THROWS_AS(kron_pair_bilateral(a, b, 16), PreconditionError);  // e^{-3^6} underflows
}

TEST_CASE("log M_k") {
  auto one = parse_sequence("const:1"), two = parse_sequence("const:2");
  auto a = parse_sequence("exp-neg-pow:3:even"), b = parse_sequence("exp-neg-pow:3:odd");
  for (long m = -3; m <= 3; ++m)
    for (int k = 1; k <= 6; ++k) {
      CHECK(log_mk(a, b, m, m, k) == 0);
      CHECK(log_mk(one, two, m, m + 2, k) == 0);
    }
  // independent evaluation of log w_j = (-1)^{j+1} 3^j for j >= 1, else 0
  auto lw = [](long j) { return j < 1 ? 0.0 : (j % 2 ? -1.0 : 1.0) * std::pow(3.0, double(j)); };
  for (long m = -4; m <= 4; ++m)
    for (long n = -4; n <= 4; ++n) {
      double acc = 0, best = 0;
      for (int k = 1; k <= 12; ++k) {
        acc += lw(m + k - 1) - lw(n + k - 1);
        CHECK(log_mk(a, b, m, n, k) == doctest::Approx(acc).epsilon(1e-12));
        best = std::max(best, std::abs(acc));
      }
      if (m != n) CHECK(best > 1e3);
    }
  CHECK_THROWS_AS(log_mk(parse_sequence("const:0"), one, 1, 2, 3), PreconditionError);
}

TEST_CASE("four-subspace systems") {
  const int n = 3;
  std::mt19937_64 rng(11);
  Mat a = random_gaussian(n, n, rng);
  Mat id = Mat::Identity(n, n);

  SubspaceSystem s = operator_system(a);
  CHECK(s.ambient == 2 * n);
  Mat graph(2 * n, n);
  graph << id, a;
  CHECK((projector(s.subspaces[2]) - projector(orthonormalize(graph))).norm() < 1e-12);

  SubspaceSystem same = four_subspace_from_pair(OperatorPair{id, id, "t"});
  CHECK((projector(same.subspaces[2]) - projector(same.subspaces[3])).norm() < 1e-12);

  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 1;
  SubspaceSystem deg = four_subspace_from_pair(OperatorPair{d, d, "t"});
  CHECK(deg.subspaces[2].cols() == 1);
  for (const Mat& j : s.subspaces) CHECK((j.adjoint() * j - Mat::Identity(j.cols(), j.cols())).norm() < 1e-12);
}

TEST_CASE("End of a subspace system") {
  SubspaceEnd e = subspace_system_end(operator_system(jordan(2)));
  CHECK(e.dim == 2);
  CHECK(e.dim == oracle::commutant_dim(jordan(2)));
  CHECK(e.max_residual <= 1e-8);
  SubspaceEnd viaq = subspace_system_end_via_quiver(operator_system(jordan(2)));
  CHECK(viaq.dim == 2);
  CHECK(viaq.max_residual <= 1e-8);

  SubspaceSystem full;
  full.ambient = 3;
  full.subspaces = {Mat::Identity(3, 3), Mat::Identity(3, 3)};
  CHECK(subspace_system_end(full).dim == 9);
  CHECK(subspace_system_end_via_quiver(full).dim == 9);

  for (int k = 1; k <= 4; ++k) CHECK(subspace_system_end(operator_system(jordan(k, 0.5))).dim == k);
}

TEST_CASE("projection constraints and the subspace quiver agree on random systems") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    SubspaceSystem s;
    s.ambient = 2 + trial % 3;
    const int count = 2 + trial % 4;
    for (int i = 0; i < count; ++i) {
      int d = 1 + static_cast<int>(rng() % s.ambient);
      s.subspaces.push_back(orthonormalize(random_gaussian(s.ambient, d, rng)));
    }
    if (trial % 2) s.subspaces[0] = s.subspaces[1].leftCols(1);  // force some nesting
    SubspaceEnd a = subspace_system_end(s), b = subspace_system_end_via_quiver(s);
    CAPTURE(trial);
    CHECK(a.dim == b.dim);
    CHECK(a.max_residual <= 1e-8);
    CHECK(b.max_residual <= 1e-8);
    // same span: every quiver-side block satisfies the projection constraints
    for (const Mat& t : b.basis)
      for (const Mat& j : s.subspaces) {
        Mat q = Mat::Identity(s.ambient, s.ambient) - projector(j);
        CHECK((q * t * j).norm() < 1e-8);
      }
  }
}

TEST_CASE("commutant of a Jordan block has dimension k") {
  for (int k = 1; k <= 6; ++k) {
    CHECK(oracle::commutant_dim(jordan(k, cplx(0.3, -1))) == k);
    auto v = is_strongly_irreducible(jordan(k, cplx(0.3, -1)), 1);
    CHECK(v.commutant_dim == k);
    CHECK(v.strongly_irreducible);
  }
}

TEST_CASE("weighted-shift graph system") {
  SubspaceSystem s = hrr_system(5);
  auto w = parse_sequence("hrr");
  const double want[] = {0, 0, 0, -1, 2};
  for (int i = 0; i < 5; ++i) CHECK(log_abs(w, window_start(5) + i) == doctest::Approx(want[i]));
  CHECK(s.subspaces[2].cols() == 5);
  // column for n = 1 is (e_1, e^{-1} e_2) normalized
  const double c = 1 / std::sqrt(1 + std::exp(-2.0));
  CHECK(s.subspaces[2](3, 3).real() == doctest::Approx(c));
  CHECK(s.subspaces[2](5 + 4, 3).real() == doctest::Approx(std::exp(-1.0) * c));

  SubspaceSystem big = hrr_system(40);  // 19! overflows exp; directions stay finite
  CHECK(big.subspaces[2].allFinite());
  const Mat& g = big.subspaces[2];
  CHECK((g.adjoint() * g - Mat::Identity(40, 40)).norm() < 1e-12);

  SubspaceEnd e = subspace_system_end(hrr_system(6));
  CHECK(e.dim >= 1);
  CHECK(e.max_residual <= 1e-8);
  CHECK_THROWS_AS(hrr_system(1), PreconditionError);
}

TEST_CASE("Phi from Kronecker endomorphisms to the four-subspace system") {
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 1;
  PhiReport r = phi_map(d, d);
  CHECK(r.ker_dim == 2);
  CHECK(r.expected_ker_dim == 2);
  CHECK_FALSE(r.injective);
  CHECK(r.surjective);

  PhiReport id = phi_map(Mat::Identity(3, 3), Mat::Identity(3, 3));
  CHECK(id.injective);
  CHECK(id.surjective);
  CHECK(id.end_rep_dim == id.end_system_dim);

  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 3;
    const int common = trial % n;  // engineered dim(ker A cap ker B)
    Mat kill = Mat::Identity(n, n);
    if (common > 0) {
      Mat q = orthonormalize(random_gaussian(n, common, rng));
      kill -= q * q.adjoint();
    }
    Mat a = random_gaussian(n, n, rng) * kill, b = random_gaussian(n, n, rng) * kill;
    if (trial % 5 == 0) a.col(0).setZero();  // ker A alone bigger than the common kernel
    PhiReport p = phi_map(a, b);
    CAPTURE(trial);
    CHECK(p.expected_ker_dim == n * oracle::kernel_dim([&] {
            Mat ab(2 * n, n);
            ab << a, b;
            return ab;
          }()));
    CHECK(p.ker_dim == p.expected_ker_dim);
    CHECK(p.injective == (p.expected_ker_dim == 0));
    CHECK(p.surjective);
    CHECK(p.image_residual <= 1e-8);
  }
}
