#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "qrep/errors.hpp"
#include "qrep/hom.hpp"
#include "qrep/reflection.hpp"

using namespace qrep;

namespace {

Quiver kronecker() { return Quiver::create("kronecker", {"1", "2"}, {{"a", "1", "2"}, {"b", "1", "2"}}); }
Quiver d4() {
  return Quiver::create("d4", {"1", "2", "3", "4", "5"},
                        {{"a1", "1", "5"}, {"a2", "2", "5"}, {"a3", "3", "5"}, {"a4", "4", "5"}});
}

std::set<std::pair<std::size_t, std::size_t>> directed(const Quiver& q) {
  std::set<std::pair<std::size_t, std::size_t>> out;
  for (const Arrow& a : q.arrows()) out.insert({a.source, a.target});
  return out;
}

}  // namespace

TEST_CASE("simple representation at a sink reflects to zero") {
  Rep s = Rep::create(kronecker(), {0, 1}, {Mat::Zero(1, 0), Mat::Zero(1, 0)});
  ReflectionResult r = reflect_sink(s, "2");
  CHECK(r.rep.is_zero());
  CHECK_FALSE(is_full_at(s, "2", ReflectMode::sink));
}

TEST_CASE("kernel dimension of Phi+ is the dimension count for full sinks") {
  std::mt19937_64 rng(21);
  for (int n = 1; n <= 3; ++n) {
    Rep r = random_rep(kronecker(), {n, n + 1}, rng);
    REQUIRE(is_full_at(r, "2", ReflectMode::sink));
    ReflectionResult rr = reflect_sink(r, "2");
    CHECK(rr.rep.dim(1) == 2 * n - (n + 1));
    CHECK(rr.rep.quiver().arrows()[0].id == "a~");
    // the new arrows are the blocks of an isometry, so the result is co-full
    CHECK(is_full_at(rr.rep, "2", ReflectMode::source));
    CHECK((rr.kernel.adjoint() * rr.kernel - Mat::Identity(rr.kernel.cols(), rr.kernel.cols())).norm() < 1e-12);
  }
}

TEST_CASE("wrong vertex kinds are rejected") {
  std::mt19937_64 rng(22);
  Rep r = random_rep(kronecker(), {1, 1}, rng);
  CHECK_THROWS_AS(reflect_sink(r, "1"), PreconditionError);
  CHECK_THROWS_AS(reflect_source(r, "2"), PreconditionError);
  Rep loop = Rep::create(Quiver::create("j", {"1"}, {{"l", "1", "1"}}), {1}, {Mat::Ones(1, 1)});
  CHECK_THROWS_AS(reflect_sink(loop, "1"), PreconditionError);
}

TEST_CASE("identity transports to identity") {
  std::mt19937_64 rng(23);
  Rep r = random_rep(d4(), {1, 1, 1, 1, 2}, rng);
  ReflectionResult rr = reflect_sink(r, "5");
  Hom id = hom_transport(rr, rr, identity_hom(r));
  CHECK((flatten(id) - flatten(identity_hom(rr.rep))).norm() < 1e-12);
}

TEST_CASE("End is preserved at full sinks and co-full sources") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 12; ++trial) {
    int n = 1 + trial % 3;
    Rep k = random_rep(kronecker(), {n, n + (trial % 2)}, rng);
    EndIsoReport a = verify_end_isomorphism(k, "2", ReflectMode::sink);
    CHECK(a.hypothesis_holds);
    CHECK(a.isomorphic);
    Rep c = random_rep(kronecker(), {n + 1, n}, rng);
    EndIsoReport b = verify_end_isomorphism(c, "1", ReflectMode::source);
    CHECK(b.hypothesis_holds);
    CHECK(b.isomorphic);
    // decomposable full representations too
    Rep s = direct_sum(k, random_rep(kronecker(), {1, 2}, rng));
    EndIsoReport e = verify_end_isomorphism(s, "2", ReflectMode::sink);
    CHECK(e.isomorphic);
    CHECK(e.dim_in == oracle::hom_dim(s, s));
  }
}

TEST_CASE("a non-full sink is reported, not guessed") {
  Mat fa(2, 1), fb(2, 1);
  fa << 1, 0;
  fb << 2, 0;
  Rep r = Rep::create(kronecker(), {1, 2}, {fa, fb});
  EndIsoReport rep = verify_end_isomorphism(r, "2", ReflectMode::sink);
  CHECK_FALSE(rep.hypothesis_holds);
  CHECK(rep.dim_in == 3);
  CHECK(rep.dim_out == 1);
  CHECK_FALSE(rep.isomorphic);
}

TEST_CASE("Phi- agrees with Phi* Phi+ Phi*") {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 10; ++trial) {
    Rep r = random_rep(kronecker(), {2 + trial % 2, 1 + trial % 3}, rng);
    Rep minus = reflect_source(r, "1").rep;
    Rep other = dual(reflect_sink(dual(r), "1").rep);
    REQUIRE(minus.quiver().same_structure(other.quiver()));
    CHECK(find_isomorphism(minus, other).has_value());
  }
}

TEST_CASE("Phi+ Phi- returns indecomposables with nonzero image") {
  std::mt19937_64 rng(26);
  for (int n = 1; n <= 3; ++n) {
    Rep r = random_rep(kronecker(), {n + 1, n}, rng);
    REQUIRE(is_indecomposable(r).kind == Decomposability::indecomposable);
    Rep back = reflect_sink(reflect_source(r, "1").rep, "1").rep;
    REQUIRE(back.quiver().same_structure(r.quiver()));
    CHECK(find_isomorphism(back, r).has_value());
  }
}

TEST_CASE("adjoint is an involution") {
  std::mt19937_64 rng(27);
  Rep r = random_rep(d4(), {1, 2, 1, 1, 3}, rng);
  Rep back = dual(dual(r));
  CHECK(back.quiver().same_structure(r.quiver()));
  for (std::size_t e = 0; e < r.mats().size(); ++e) CHECK(back.mat(e) == r.mat(e));
}

TEST_CASE("orientation sequences from the rightward path") {
  CHECK(orientation_sequence_an(3, {true, true}).empty());
  CHECK(orientation_sequence_an(2, {false}) == std::vector<int>{1});
  for (int n = 1; n <= 5; ++n)
    for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
      std::vector<bool> dirs;
      for (int k = 0; k + 1 < n; ++k) dirs.push_back(mask >> k & 1u);
      Quiver cur = an_quiver(n, std::vector<bool>(n - 1, true));
      for (int v : orientation_sequence_an(n, dirs)) {
        CHECK(v != n);
        CHECK(is_source(cur, static_cast<std::size_t>(v - 1)));
        cur = reverse_at(cur, std::to_string(v), ReflectMode::source);
      }
      CHECK(directed(cur) == directed(an_quiver(n, dirs)));
    }
}

TEST_CASE("reflection examples") {
  Rep r = Rep::create(kronecker(), {1, 1}, {Mat::Ones(1, 1), Mat::Ones(1, 1)});
  ReflectionResult p = reflect_sink(r, "2");
  REQUIRE(p.kernel.cols() == 1);
  CHECK(std::abs(p.kernel(0, 0) - std::sqrt(0.5)) < 1e-12);
  CHECK(std::abs(p.kernel(1, 0) + std::sqrt(0.5)) < 1e-12);
  CHECK(p.rep.dims() == std::vector<int>{1, 1});
  ReflectionResult m = reflect_source(r, "1");
  CHECK(m.rep.dims() == std::vector<int>{1, 1});
  Rep z = Rep::create(kronecker(), {1, 1}, {Mat::Zero(1, 1), Mat::Zero(1, 1)});
  CHECK(reflect_sink(z, "2").rep.dim(1) == 2);
  CHECK(reflect_source(z, "1").rep.dim(0) == 2);
  CHECK(is_full_at(r, "2", ReflectMode::sink));
  CHECK_FALSE(is_full_at(z, "2", ReflectMode::sink));
  CHECK_THROWS_AS(is_full_at(r, "1", ReflectMode::sink), PreconditionError);
}

TEST_CASE("dual swaps Hom arguments") {
  std::mt19937_64 rng(28);
  for (int trial = 0; trial < 10; ++trial) {
    Rep a = random_rep(d4(), {1, 0, 1, 1, 2}, rng);
    Rep b = random_rep(d4(), {1, 1, 1, 0, 2}, rng);
    if (trial % 2) b = direct_sum(a, random_rep(d4(), {0, 1, 0, 0, 1}, rng)), a = random_rep(d4(), b.dims(), rng);
    CHECK(hom_basis(a, b).dim == hom_basis(dual(b), dual(a)).dim);
  }
}
