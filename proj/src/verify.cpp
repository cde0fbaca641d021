#include "qrep/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <set>

#include "qrep/builders.hpp"
#include "qrep/cyclic.hpp"
#include "qrep/errors.hpp"
#include "qrep/hom.hpp"
#include "qrep/operator_models.hpp"
#include "qrep/reflection.hpp"

namespace qrep {

bool SuiteReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok(); });
}

namespace {

constexpr double kResidual = 1e-8;

Check start(std::string name) {
  Check c;
  c.name = std::move(name);
  return c;
}

void tally(Check& c, bool pass, double residual = 0) {
  ++c.total;
  c.passed += pass ? 1 : 0;
  c.worst = std::max(c.worst, residual);
}

Check finish(Check c) {
  if (c.required == 0) c.required = c.total;
  return c;
}

int uniform(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

Quiver kronecker() { return Quiver::create("kronecker", {"1", "2"}, {{"a", "1", "2"}, {"b", "1", "2"}}); }

// Four arms and a centre "5"; inward = arms point at the centre.
Quiver d4tilde(bool inward) {
  std::vector<ArrowSpec> a;
  for (int i = 1; i <= 4; ++i) {
    std::string arm = std::to_string(i);
    a.push_back(inward ? ArrowSpec{"a" + arm, arm, "5"} : ArrowSpec{"a" + arm, "5", arm});
  }
  return Quiver::create("D~4", {"1", "2", "3", "4", "5"}, a);
}

struct Sample {
  Rep rep;
  std::string vertex;
};

// Random Kronecker or D~4 representation with v a sink (or a source) and
// generic maps, so fullness holds whenever the dimensions allow it.
Sample full_sample(std::mt19937_64& rng, bool sink, bool kron, int max_dim) {
  if (kron) {
    int far = uniform(rng, 1, max_dim);
    int at = uniform(rng, 1, std::min(max_dim, 2 * far));
    std::vector<int> dims = sink ? std::vector<int>{far, at} : std::vector<int>{at, far};
    return {random_rep(kronecker(), dims, rng), sink ? "2" : "1"};
  }
  std::vector<int> dims(5);
  int sum = 0;
  for (int i = 0; i < 4; ++i) sum += dims[i] = uniform(rng, 0, max_dim);
  if (sum == 0) sum = dims[0] = 1;
  dims[4] = uniform(rng, 1, std::min(max_dim, sum));
  return {random_rep(d4tilde(sink), dims, rng), "5"};
}

// Small C_n representation with 0/1 dimensions and 0/1 scalars.
Rep cycle_instance(int n, unsigned dmask, unsigned smask) {
  std::vector<int> dims(n);
  for (int i = 0; i < n; ++i) dims[i] = dmask >> i & 1u;
  std::vector<Mat> mats;
  for (int i = 0; i < n; ++i) {
    int r = dims[(i + 1) % n], c = dims[i];
    Mat m = Mat::Zero(r, c);
    if (r == 1 && c == 1) m(0, 0) = static_cast<double>(smask >> i & 1u);
    mats.push_back(m);
  }
  return Rep::create(cycle_quiver(n), dims, mats);
}

// Transitive cases of C_2 and C_3 as listed by their classification: the
// 1-based case index or 0.
int listed_case(int n, const std::vector<int>& h, const std::vector<double>& a) {
  auto is = [&](std::initializer_list<int> d) { return std::equal(d.begin(), d.end(), h.begin()); };
  if (n == 2) {
    if (is({1, 0})) return 1;
    if (is({0, 1})) return 2;
    if (is({1, 1}) && (a[0] != 0 || a[1] != 0)) return 3;
    return 0;
  }
  if (is({1, 0, 0})) return 1;
  if (is({0, 1, 0})) return 2;
  if (is({0, 0, 1})) return 3;
  if (is({1, 1, 0}) && a[0] != 0) return 4;
  if (is({0, 1, 1}) && a[1] != 0) return 5;
  if (is({1, 0, 1}) && a[2] != 0) return 6;
  if (is({1, 1, 1}) && (a[0] * a[1] != 0 || a[1] * a[2] != 0 || a[0] * a[2] != 0)) return 7;
  return 0;
}

// Enumerates nonzero instances; live arrows (both ends 1-dimensional) get every 0/1 scalar.
void for_each_cycle_instance(int n, const std::function<void(const Rep&, unsigned, unsigned)>& f) {
  for (unsigned d = 1; d < (1u << n); ++d)
    for (unsigned s = 0; s < (1u << n); ++s) {
      bool redundant = false;
      for (int i = 0; i < n; ++i)
        if ((s >> i & 1u) && !((d >> i & 1u) && (d >> ((i + 1) % n) & 1u))) redundant = true;
      if (!redundant) f(cycle_instance(n, d, s), d, s);
    }
}

const ExtendedFamily kFamilies[] = {ExtendedFamily::DTilde, ExtendedFamily::E6Tilde, ExtendedFamily::E7Tilde,
                                    ExtendedFamily::E8Tilde};

}  // namespace

Check check_operator_commutant(int kmax, std::uint64_t seed) {
  Check c = start("operator system End equals the commutant for J_k, k = 2.." + std::to_string(kmax));
  for (int k = 2; k <= kmax; ++k) {
    SubspaceSystem s = operator_system(jordan(k));
    SubspaceEnd e = subspace_system_end(s);
    Rep r = subspace_quiver_rep(s);
    HomBasis end = end_basis(r);
    auto verdict = is_indecomposable(r, mix_seed(seed, k));
    int comm = is_strongly_irreducible(jordan(k), mix_seed(seed, 100 + k)).commutant_dim;
    double res = std::max(e.max_residual, end.max_residual);
    tally(c, e.dim == k && end.dim == k && comm == k && verdict.kind == Decomposability::indecomposable &&
                 res <= kResidual,
          res);
  }
  return finish(c);
}

Check check_cn_exhaustive() {
  Check c = start("C_n criterion agrees with direct End, n = 2..4, dims and scalars in {0,1}");
  for (int n = 2; n <= 4; ++n)
    for_each_cycle_instance(n, [&](const Rep& r, unsigned, unsigned) {
      tally(c, cn_transitive_criterion(r).transitive == is_transitive(r));
    });
  return finish(c);
}

Check check_cn_case_lists() {
  Check c = start("C_2 and C_3 transitive instances match the 3 and 7 listed cases");
  std::set<std::pair<int, int>> hit;
  for (int n = 2; n <= 3; ++n)
    for_each_cycle_instance(n, [&](const Rep& r, unsigned d, unsigned s) {
      std::vector<int> h(n);
      std::vector<double> a(n);
      for (int i = 0; i < n; ++i) {
        h[i] = d >> i & 1u;
        a[i] = static_cast<double>(s >> i & 1u);
      }
      int k = listed_case(n, h, a);
      if (k) hit.insert({n, k});
      tally(c, (k != 0) == is_transitive(r) && (k != 0) == cn_transitive_criterion(r).transitive);
    });
  const bool all_cases = hit.size() == 10;
  if (!all_cases) ++c.total;  // a listed case that never occurs is a failure
  c.note = std::to_string(hit.size()) + " of 10 listed cases realized";
  return finish(c);
}

Check check_cn_dim_bound(int trials, std::uint64_t seed) {
  Check c = start("C_n representations with a space of dimension 2 or 3 are never transitive");
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(mix_seed(seed, t));
    const int n = uniform(rng, 2, 4);
    std::vector<int> dims(n);
    for (int& d : dims) d = uniform(rng, 0, 3);
    if (std::none_of(dims.begin(), dims.end(), [](int d) { return d >= 2; })) dims[uniform(rng, 0, n - 1)] = uniform(rng, 2, 3);
    Rep g = random_rep(cycle_quiver(n), dims, rng);
    std::vector<Mat> mats = g.mats();
    for (Mat& m : mats)
      if (rng() % 3 == 0) m.setZero();
    Rep r = Rep::create(g.quiver(), dims, mats);
    tally(c, !is_transitive(r) && !cn_transitive_criterion(r).transitive);
  }
  return finish(c);
}

Check check_reflection_end_iso(int trials, std::uint64_t seed, bool sink) {
  Check c = start(sink ? "Phi+ is an End isomorphism at full sinks" : "Phi- is an End isomorphism at co-full sources");
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(mix_seed(seed, t));
    Sample s = full_sample(rng, sink, t % 2 == 0, 4);
    EndIsoReport rep = verify_end_isomorphism(s.rep, s.vertex, sink ? ReflectMode::sink : ReflectMode::source);
    double res = std::max({rep.multiplicativity_residual, rep.membership_residual, rep.unit_residual});
    tally(c, rep.hypothesis_holds && rep.isomorphic && rep.dim_in == rep.dim_out && res <= kResidual, res);
  }
  return finish(c);
}

Check check_round_trip(int trials, std::uint64_t seed) {
  Check c = start("Phi+ Phi- returns indecomposables with nonzero Phi- up to isomorphism");
  int rejected = 0;
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(mix_seed(seed, t));
    bool done = false;
    for (int attempt = 0; attempt < 64 && !done; ++attempt) {
      Sample s;
      if (t % 2 == 0) {
        int a = uniform(rng, 1, 3), b = uniform(rng, 1, 3);
        s = {random_rep(kronecker(), {a, b}, rng), "1"};
      } else {
        std::vector<int> dims(5);
        for (int i = 0; i < 4; ++i) dims[i] = uniform(rng, 0, 2);
        dims[4] = uniform(rng, 1, 3);
        s = {random_rep(d4tilde(false), dims, rng), "5"};
      }
      const std::uint64_t sub = mix_seed(seed, 1000 + static_cast<std::uint64_t>(t) * 64 + attempt);
      if (is_indecomposable(s.rep, sub).kind != Decomposability::indecomposable) {
        ++rejected;
        continue;
      }
      ReflectionResult minus = reflect_source(s.rep, s.vertex);
      if (minus.rep.is_zero()) {
        ++rejected;
        continue;
      }
      Rep back = reflect_sink(minus.rep, s.vertex).rep;
      bool ok = is_indecomposable(minus.rep, sub).kind == Decomposability::indecomposable &&
                back.quiver().same_structure(s.rep.quiver()) && find_isomorphism(s.rep, back, sub).has_value();
      tally(c, ok);
      done = true;
    }
    if (!done) tally(c, false);
  }
  c.required = (99 * c.total + 99) / 100;
  c.note = std::to_string(rejected) + " samples redrawn (decomposable or simple at the vertex)";
  return finish(c);
}

Check check_dual_formula(int trials, std::uint64_t seed) {
  Check c = start("Phi- agrees with Phi* Phi+ Phi* up to isomorphism");
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(mix_seed(seed, t));
    Sample s;
    if (t % 2 == 0) {
      s = {random_rep(kronecker(), {uniform(rng, 1, 3), uniform(rng, 0, 3)}, rng), "1"};
    } else {
      std::vector<int> dims(5);
      for (int i = 0; i < 4; ++i) dims[i] = uniform(rng, 0, 2);
      dims[4] = uniform(rng, 1, 3);
      s = {random_rep(d4tilde(false), dims, rng), "5"};
    }
    Rep minus = reflect_source(s.rep, s.vertex).rep;
    Rep other = dual(reflect_sink(dual(s.rep), s.vertex).rep);
    bool ok = minus.quiver().same_structure(other.quiver()) && minus.dims() == other.dims();
    if (ok && !minus.is_zero()) ok = find_isomorphism(minus, other, mix_seed(seed, 5000 + t)).has_value();
    tally(c, ok);
  }
  return finish(c);
}

Check check_builders_jordan(int kmax, std::uint64_t seed) {
  Check c = start("extended Dynkin builders with J_k: dim End = k and indecomposable, k = 1.." + std::to_string(kmax));
  for (ExtendedFamily f : kFamilies)
    for (int k = 1; k <= kmax; ++k) {
      Rep r = build_extended_dynkin(f, jordan(k));
      auto v = is_indecomposable(r, mix_seed(seed, k));
      HomBasis end = end_basis(r);
      int comm = is_strongly_irreducible(jordan(k), seed).commutant_dim;
      tally(c, v.kind == Decomposability::indecomposable && v.end_dim == k && comm == k &&
                   end.max_residual <= kResidual,
            end.max_residual);
    }
  return finish(c);
}

Check check_builders_decomposable(std::uint64_t seed) {
  Check c = start("extended Dynkin builders with diag(1,2) split with a verified idempotent");
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 1;
  d(1, 1) = 2;
  for (ExtendedFamily f : kFamilies) {
    Rep r = build_extended_dynkin(f, d);
    auto v = is_indecomposable(r, seed);
    bool ok = v.kind == Decomposability::decomposable && v.witness.has_value();
    double res = 0;
    if (ok) {
      for (const Mat& m : v.witness->mats) res = std::max(res, (m * m - m).norm());
      res = std::max(res, hom_residual(r, r, v.witness->mats));
    }
    tally(c, ok && res <= kResidual, res);
  }
  return finish(c);
}

Check check_shift_rank_one_kernel() {
  Check c = start("shift plus rank-one pair with lambda_n = w_n = 1/n has ker A = 0, N = 16, 32");
  auto rec = parse_sequence("reciprocal");
  double worst_ratio = 1;
  for (int n : {16, 32}) {
    OperatorPair p = kron_pair_shift_rank_one(rec, rec, n);
    Eigen::VectorXd sv = singular_values(p.a);
    double ratio = sv(sv.size() - 1) / sv(0);
    worst_ratio = std::min(worst_ratio, ratio);
    tally(c, ratio > 1e-12 && kernel_basis(p.a, default_tolerances().relative).cols() == 0);
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "smallest sigma_min/sigma_max %.3e", worst_ratio);
  c.note = buf;
  return finish(c);
}

Check check_density_examples() {
  Check c = start("density verdicts: 1/n,1/n dense; lambda_1 = 0 not dense; 1-2^-n,1/n not dense");
  auto rec = parse_sequence("reciprocal");
  tally(c, density_criterion(rec, rec).dense);
  tally(c, !density_criterion(parse_sequence("list:[0]:reciprocal"), rec).dense);
  tally(c, !density_criterion(parse_sequence("one-minus-pow:2"), rec).dense);
  return finish(c);
}

Check check_phi(int trials, std::uint64_t seed) {
  Check c = start("Phi(S,T) = T+T: kernel N dim(ker A cap ker B), injective when trivial, onto End(S)");
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 1;
  PhiReport deg = phi_map(d, d);
  tally(c, deg.ker_dim == 2 && deg.surjective, deg.image_residual);
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(mix_seed(seed, t));
    const int n = uniform(rng, 2, 4);
    Mat a = random_gaussian(n, n, rng), b = random_gaussian(n, n, rng);
    if (t % 3 == 1) a.col(0).setZero();  // ker A != 0 while ker A cap ker B = 0
    if (t % 3 == 2) b.col(n - 1).setZero();
    PhiReport p = phi_map(a, b);
    tally(c, p.expected_ker_dim == 0 && p.ker_dim == 0 && p.injective && p.surjective &&
                 p.image_residual <= kResidual,
          p.image_residual);
  }
  return finish(c);
}

Check check_mk_unbounded() {
  Check c = start("parity weights (lambda = 3): max_{k<=12} |log M_k(m,n)| > 1e3 for |m|,|n| <= 4, m != n");
  auto a = parse_sequence("exp-neg-pow:3:even"), b = parse_sequence("exp-neg-pow:3:odd");
  double weakest = INFINITY;
  for (long m = -4; m <= 4; ++m)
    for (long n = -4; n <= 4; ++n) {
      if (m == n) continue;
      double best = 0;
      for (int k = 1; k <= 12; ++k) best = std::max(best, std::abs(log_mk(a, b, m, n, k)));
      weakest = std::min(weakest, best);
      tally(c, best > 1e3);
    }
  char buf[64];
  std::snprintf(buf, sizeof buf, "smallest maximum %.6g", weakest);
  c.note = buf;
  return finish(c);
}

Check check_orientations(int nmax) {
  Check c = start("every orientation of A_n, n <= " + std::to_string(nmax) + ", is reached by sources v_k != n");
  for (int n = 1; n <= nmax; ++n)
    for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
      std::vector<bool> dirs;
      for (int k = 0; k + 1 < n; ++k) dirs.push_back(mask >> k & 1u);
      Quiver cur = an_quiver(n, std::vector<bool>(n - 1, true));
      bool ok = true;
      for (int v : orientation_sequence_an(n, dirs)) {
        ok = ok && v != n && is_source(cur, static_cast<std::size_t>(v - 1));
        cur = reverse_at(cur, std::to_string(v), ReflectMode::source);
      }
      Quiver want = an_quiver(n, dirs);
      std::set<std::pair<std::size_t, std::size_t>> got, exp;
      for (const Arrow& a : cur.arrows()) got.insert({a.source, a.target});
      for (const Arrow& a : want.arrows()) exp.insert({a.source, a.target});
      tally(c, ok && got == exp);
    }
  return finish(c);
}

std::vector<std::string> suite_names() { return {"reflection", "cyclic", "operator", "builders"}; }

std::vector<SuiteReport> run_suite(const std::string& suite, int trials, std::uint64_t seed) {
  if (trials < 1) throw PreconditionError("--trials must be at least 1");
  std::vector<SuiteReport> out;
  if (suite == "all") {
    for (const std::string& s : suite_names())
      for (SuiteReport& r : run_suite(s, trials, seed)) out.push_back(std::move(r));
    return out;
  }
  SuiteReport r;
  r.suite = suite;
  r.trials = trials;
  r.seed = seed;
  if (suite == "reflection") {
    r.checks = {check_reflection_end_iso(trials, seed, true), check_reflection_end_iso(trials, seed, false),
                check_round_trip(trials, seed), check_dual_formula(trials, seed), check_orientations(5)};
  } else if (suite == "cyclic") {
    r.checks = {check_cn_exhaustive(), check_cn_case_lists(), check_cn_dim_bound(trials, seed)};
  } else if (suite == "operator") {
    r.checks = {check_operator_commutant(6, seed), check_shift_rank_one_kernel(), check_density_examples(),
                check_phi(trials, seed), check_mk_unbounded()};
  } else if (suite == "builders") {
    r.checks = {check_builders_jordan(3, seed), check_builders_decomposable(seed)};
  } else {
    throw PreconditionError("unknown suite '" + suite + "'; expected reflection, cyclic, operator, builders or all");
  }
  out.push_back(std::move(r));
  return out;
}

}  // namespace qrep
