#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "qrep/errors.hpp"
#include "qrep/hom.hpp"

namespace qrep {

namespace {

// Unitary G with G * [f; g] = [r; 0] (LAPACK zlartg convention).
Eigen::Matrix2cd givens(cplx f, cplx g) {
  double c;
  cplx s;
  if (g == 0.0) {
    c = 1;
    s = 0;
  } else if (f == 0.0) {
    c = 0;
    s = std::conj(g) / std::abs(g);
  } else {
    const double f1 = std::abs(f), g1 = std::abs(g);
    const double d = std::hypot(f1, g1);
    c = f1 / d;
    s = (f / f1) * std::conj(g) / d;
  }
  Eigen::Matrix2cd G;
  G << c, s, -std::conj(s), c;
  return G;
}

// Swap diagonal entries k and k+1 of the upper triangular r, updating the
// Schur vectors u.
void swap_schur(Mat& r, Mat& u, Eigen::Index k) {
  const cplx t11 = r(k, k), t22 = r(k + 1, k + 1), t12 = r(k, k + 1);
  if (t12 == 0.0 && t11 == t22) return;
  const Eigen::Matrix2cd G = givens(t12, t22 - t11);
  r.middleRows(k, 2) = G * r.middleRows(k, 2);
  r.middleCols(k, 2) = r.middleCols(k, 2) * G.adjoint();
  u.middleCols(k, 2) = u.middleCols(k, 2) * G.adjoint();
  r(k + 1, k) = 0;
}

// Spectral projection onto the invariant subspace of the selected Schur
// diagonal entries, along the complementary one.
Mat spectral_projector(Mat r, Mat u, std::vector<bool> sel) {
  const Eigen::Index n = r.rows();
  Eigen::Index target = 0;
  for (;;) {
    Eigen::Index j = target;
    while (j < n && !sel[j]) ++j;
    if (j == n) break;
    for (Eigen::Index i = j; i > target; --i) {
      swap_schur(r, u, i - 1);
      std::swap(sel[i - 1], sel[i]);
    }
    ++target;
  }
  const Eigen::Index m1 = target, m2 = n - target;
  if (m1 == 0) return Mat::Zero(n, n);
  if (m2 == 0) return Mat::Identity(n, n);
  // R11 Y - Y R22 = -R12, one column at a time.
  const Mat r11 = r.topLeftCorner(m1, m1);
  const Mat r12 = r.topRightCorner(m1, m2);
  const Mat r22 = r.bottomRightCorner(m2, m2);
  Mat y(m1, m2);
  for (Eigen::Index j = 0; j < m2; ++j) {
    Vec rhs = -r12.col(j);
    for (Eigen::Index l = 0; l < j; ++l) rhs += y.col(l) * r22(l, j);
    Mat shifted = r11;
    shifted.diagonal().array() -= r22(j, j);
    y.col(j) = shifted.triangularView<Eigen::Upper>().solve(rhs);
  }
  Mat m = Mat::Zero(n, n);
  m.topLeftCorner(m1, m1).setIdentity();
  m.topRightCorner(m1, m2) = -y;
  return u * m * u.adjoint();
}

struct Eig {
  cplx value;
  std::size_t vertex;
  Eigen::Index pos;
};

struct TreeEdge {
  std::size_t a, b;
  double len;
};

// Prim's algorithm on the complete graph of eigenvalues.
std::vector<TreeEdge> spanning_tree(const std::vector<Eig>& eig) {
  const std::size_t m = eig.size();
  std::vector<TreeEdge> out;
  if (m < 2) return out;
  std::vector<bool> in(m, false);
  std::vector<double> best(m, INFINITY);
  std::vector<std::size_t> from(m, 0);
  in[0] = true;
  for (std::size_t i = 1; i < m; ++i) {
    best[i] = std::abs(eig[i].value - eig[0].value);
    from[i] = 0;
  }
  for (std::size_t step = 1; step < m; ++step) {
    std::size_t pick = m;
    for (std::size_t i = 0; i < m; ++i)
      if (!in[i] && (pick == m || best[i] < best[pick])) pick = i;
    in[pick] = true;
    out.push_back({from[pick], pick, best[pick]});
    for (std::size_t i = 0; i < m; ++i)
      if (!in[i]) {
        double d = std::abs(eig[i].value - eig[pick].value);
        if (d < best[i]) {
          best[i] = d;
          from[i] = pick;
        }
      }
  }
  return out;
}

// Vertices on the side of `start` after removing tree edge `cut`.
std::vector<bool> tree_side(std::size_t m, const std::vector<TreeEdge>& tree, std::size_t cut, std::size_t start) {
  std::vector<std::vector<std::size_t>> adj(m);
  for (std::size_t e = 0; e < tree.size(); ++e)
    if (e != cut) {
      adj[tree[e].a].push_back(tree[e].b);
      adj[tree[e].b].push_back(tree[e].a);
    }
  std::vector<bool> side(m, false);
  std::vector<std::size_t> stack{start};
  side[start] = true;
  while (!stack.empty()) {
    std::size_t x = stack.back();
    stack.pop_back();
    for (std::size_t y : adj[x])
      if (!side[y]) {
        side[y] = true;
        stack.push_back(y);
      }
  }
  return side;
}

constexpr int kMaxCandidatesPerTrial = 6;

}  // namespace

std::optional<Hom> find_nontrivial_idempotent(const Rep& r, const HomBasis& end, std::uint64_t seed, int trials,
                                              IdempotentSearch* info) {
  const Tolerances& tol = default_tolerances();
  IdempotentSearch local;
  IdempotentSearch& st = info ? *info : local;
  st = IdempotentSearch{};
  if (end.dim <= 1) return std::nullopt;
  const std::size_t n = r.dims().size();
  const double total = static_cast<double>(r.total_dim());

  for (int t = 0; t < trials; ++t) {
    ++st.trials_used;
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(t)));
    Mat c = random_gaussian(end.dim, 1, rng);

    std::vector<Mat> schur_r(n), schur_u(n);
    std::vector<Eig> eig;
    double rho = 0;
    for (std::size_t v = 0; v < n; ++v) {
      const int d = r.dim(v);
      if (d == 0) continue;
      Mat tv = Mat::Zero(d, d);
      for (int i = 0; i < end.dim; ++i) tv += c(i, 0) * end.basis[i].mats[v];
      Eigen::ComplexSchur<Mat> cs(tv);
      schur_r[v] = cs.matrixT();
      schur_u[v] = cs.matrixU();
      for (Eigen::Index k = 0; k < d; ++k) {
        eig.push_back({schur_r[v](k, k), v, k});
        rho = std::max(rho, std::abs(schur_r[v](k, k)));
      }
    }
    if (rho == 0) continue;

    std::vector<TreeEdge> tree = spanning_tree(eig);
    std::vector<std::size_t> order(tree.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return tree[a].len > tree[b].len; });
    if (!order.empty()) st.best_gap = std::max(st.best_gap, tree[order[0]].len / rho);

    int tried = 0;
    for (std::size_t e : order) {
      if (tree[e].len <= tol.cluster_gap * rho || tried >= kMaxCandidatesPerTrial) break;
      ++tried;
      ++st.candidates_tried;
      std::vector<bool> side = tree_side(eig.size(), tree, e, tree[e].a);
      Hom p;
      double idem = 0, norm2 = 0;
      bool finite = true;
      for (std::size_t v = 0; v < n; ++v) {
        const int d = r.dim(v);
        if (d == 0) {
          p.mats.push_back(Mat(0, 0));
          continue;
        }
        std::vector<bool> sel(d, false);
        for (std::size_t k = 0; k < eig.size(); ++k)
          if (eig[k].vertex == v) sel[eig[k].pos] = side[k];
        Mat pv = spectral_projector(schur_r[v], schur_u[v], sel);
        finite &= pv.allFinite();
        idem += (pv * pv - pv).squaredNorm();
        norm2 += pv.squaredNorm();
        p.mats.push_back(std::move(pv));
      }
      if (!finite || std::sqrt(norm2) > tol.projector_norm_max * std::sqrt(total)) {
        ++st.ill_conditioned;
        continue;
      }
      if (std::sqrt(idem) > tol.residual) continue;
      p.residual = hom_residual(r, r, p.mats);
      if (p.residual > tol.residual) continue;
      return p;
    }
  }
  return std::nullopt;
}

const char* to_string(Decomposability d) {
  switch (d) {
    case Decomposability::indecomposable: return "indecomposable";
    case Decomposability::decomposable: return "decomposable";
    case Decomposability::zero: return "zero";
  }
  return "?";
}

IndecomposabilityVerdict is_indecomposable(const Rep& r, std::uint64_t seed, int trials) {
  IndecomposabilityVerdict out;
  if (r.is_zero()) return out;
  HomBasis end = end_basis(r);
  out.end_dim = end.dim;
  out.witness = find_nontrivial_idempotent(r, end, seed, trials, &out.search);
  out.kind = out.witness ? Decomposability::decomposable : Decomposability::indecomposable;
  return out;
}

bool is_transitive(const Rep& r) {
  if (r.is_zero()) throw PreconditionError("transitivity is defined for nonzero representations only");
  return end_basis(r).dim == 1;
}

StrongIrreducibility is_strongly_irreducible(const Mat& a, std::uint64_t seed, int trials) {
  if (a.rows() != a.cols()) throw PreconditionError("operator must be square");
  if (a.rows() == 0) throw PreconditionError("operator acts on the zero space");
  Quiver jordan = Quiver::create("jordan", {"1"}, {{"a", "1", "1"}});
  Rep r = Rep::create(jordan, {static_cast<int>(a.rows())}, {a});
  HomBasis end = end_basis(r);
  StrongIrreducibility out;
  out.commutant_dim = end.dim;
  auto e = find_nontrivial_idempotent(r, end, seed, trials);
  out.strongly_irreducible = !e;
  if (e) out.witness = e->mats[0];
  return out;
}

std::optional<Hom> find_isomorphism(const Rep& r1, const Rep& r2, std::uint64_t seed, int trials) {
  if (!r1.quiver().same_structure(r2.quiver())) throw PreconditionError("isomorphism needs a common quiver");
  if (r1.dims() != r2.dims()) return std::nullopt;
  const Tolerances& tol = default_tolerances();
  if (r1.is_zero()) return identity_hom(r1);
  HomBasis h = hom_basis(r1, r2);
  if (h.dim == 0) return std::nullopt;
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(mix_seed(seed ^ 0x5bd1e995ULL, static_cast<std::uint64_t>(t)));
    Mat c = random_gaussian(h.dim, 1, rng);
    Hom phi;
    bool ok = true;
    for (std::size_t v = 0; v < r1.dims().size(); ++v) {
      Mat m = Mat::Zero(r2.dim(v), r1.dim(v));
      for (int i = 0; i < h.dim; ++i) m += c(i, 0) * h.basis[i].mats[v];
      ok &= is_invertible(m, tol.relative);
      phi.mats.push_back(std::move(m));
    }
    if (!ok) continue;
    phi.residual = hom_residual(r1, r2, phi.mats);
    return phi;
  }
  return std::nullopt;
}

}  // namespace qrep
