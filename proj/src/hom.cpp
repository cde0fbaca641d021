#include "qrep/hom.hpp"

#include <functional>

#include "qrep/errors.hpp"

namespace qrep {

namespace {

// T_v = A_v T_root(v) B_v. Roots carry the unknowns of the reduced system.
struct Substitution {
  std::vector<std::size_t> root;
  std::vector<Mat> a, b;
  std::vector<bool> identity;
};

Substitution identity_substitution(const Rep& r1, const Rep& r2) {
  Substitution s;
  for (std::size_t v = 0; v < r1.dims().size(); ++v) {
    s.root.push_back(v);
    s.a.push_back(Mat::Identity(r2.dim(v), r2.dim(v)));
    s.b.push_back(Mat::Identity(r1.dim(v), r1.dim(v)));
    s.identity.push_back(true);
  }
  return s;
}

// For an arrow s -> t whose map g in r2 is injective and well conditioned,
// g T_s = T_t f forces T_s = g^+ T_t f. Each vertex is eliminated through at
// most one such arrow, and the chosen arrows form a forest.
Substitution eliminating_substitution(const Rep& r1, const Rep& r2, double cond_max) {
  const Quiver& q = r1.quiver();
  const std::size_t n = q.vertex_count();
  std::vector<long> parent(n, -1);
  auto reaches = [&](std::size_t from, std::size_t v) {
    for (long cur = static_cast<long>(from);;) {
      if (static_cast<std::size_t>(cur) == v) return true;
      if (parent[cur] < 0) return false;
      cur = static_cast<long>(q.arrows()[parent[cur]].target);
    }
  };
  for (std::size_t e = 0; e < q.arrow_count(); ++e) {
    const Arrow& ar = q.arrows()[e];
    if (ar.source == ar.target || parent[ar.source] >= 0) continue;
    const Mat& g = r2.mat(e);
    if (g.cols() == 0 || r1.dim(ar.source) == 0 || g.rows() < g.cols()) continue;
    Eigen::VectorXd sv = singular_values(g);
    if (sv(sv.size() - 1) * cond_max < sv(0) || sv(0) == 0) continue;
    if (reaches(ar.target, ar.source)) continue;
    parent[ar.source] = static_cast<long>(e);
  }

  Substitution s;
  s.root.resize(n);
  s.a.resize(n);
  s.b.resize(n);
  s.identity.assign(n, false);
  std::vector<bool> done(n, false);
  std::function<void(std::size_t)> resolve = [&](std::size_t v) {
    if (done[v]) return;
    if (parent[v] < 0) {
      s.root[v] = v;
      s.a[v] = Mat::Identity(r2.dim(v), r2.dim(v));
      s.b[v] = Mat::Identity(r1.dim(v), r1.dim(v));
      s.identity[v] = true;
    } else {
      const std::size_t e = static_cast<std::size_t>(parent[v]);
      const std::size_t t = q.arrows()[e].target;
      resolve(t);
      Mat gplus = r2.mat(e).completeOrthogonalDecomposition().pseudoInverse();
      s.root[v] = s.root[t];
      s.a[v] = gplus * s.a[t];
      s.b[v] = s.b[t] * r1.mat(e);
    }
    done[v] = true;
  };
  for (std::size_t v = 0; v < n; ++v) resolve(v);
  return s;
}

struct System {
  Mat m;
  std::vector<Eigen::Index> offset;  // column offset of each root block
  Eigen::Index unknowns = 0;
};

System build_system(const Rep& r1, const Rep& r2, const Substitution& sub) {
  const Quiver& q = r1.quiver();
  System sys;
  sys.offset.assign(q.vertex_count(), -1);
  for (std::size_t v = 0; v < q.vertex_count(); ++v)
    if (sub.root[v] == v) {
      sys.offset[v] = sys.unknowns;
      sys.unknowns += static_cast<Eigen::Index>(r2.dim(v)) * r1.dim(v);
    }
  Eigen::Index rows = 0;
  for (const Arrow& ar : q.arrows()) rows += static_cast<Eigen::Index>(r2.dim(ar.target)) * r1.dim(ar.source);
  sys.m = Mat::Zero(rows, sys.unknowns);

  Eigen::Index row0 = 0;
  for (std::size_t e = 0; e < q.arrow_count(); ++e) {
    const Arrow& ar = q.arrows()[e];
    const std::size_t s = ar.source, t = ar.target;
    const std::size_t rs = sub.root[s], rt = sub.root[t];
    const Mat& at = sub.a[t];
    const Mat ct = sub.b[t] * r1.mat(e);  // dim H_rt x dim H_s
    const Mat as = r2.mat(e) * sub.a[s];  // dim K_t x dim K_rs
    const Mat& bs = sub.b[s];             // dim H_rs x dim H_s
    const Eigen::Index kt = r2.dim(t), hs = r1.dim(s);
    const Eigen::Index krt = r2.dim(rt), hrt = r1.dim(rt);
    const Eigen::Index krs = r2.dim(rs), hrs = r1.dim(rs);
    for (Eigen::Index i = 0; i < kt; ++i)
      for (Eigen::Index j = 0; j < hs; ++j) {
        const Eigen::Index row = row0 + i * hs + j;
        // + T_t f
        for (Eigen::Index p = 0; p < krt; ++p) {
          const cplx x = at(i, p);
          if (x == 0.0) continue;
          for (Eigen::Index k = 0; k < hrt; ++k) sys.m(row, sys.offset[rt] + p * hrt + k) += x * ct(k, j);
        }
        // - g T_s
        for (Eigen::Index p = 0; p < krs; ++p) {
          const cplx x = as(i, p);
          if (x == 0.0) continue;
          for (Eigen::Index k = 0; k < hrs; ++k) {
            const cplx y = bs(k, j);
            if (y == 0.0) continue;
            sys.m(row, sys.offset[rs] + p * hrs + k) -= x * y;
          }
        }
      }
    row0 += kt * hs;
  }
  return sys;
}

}  // namespace

Mat hom_constraint_matrix(const Rep& r1, const Rep& r2) {
  if (!r1.quiver().same_structure(r2.quiver())) throw PreconditionError("Hom needs a common quiver");
  return build_system(r1, r2, identity_substitution(r1, r2)).m;
}

HomBasis hom_basis(const Rep& r1, const Rep& r2, const HomOptions& opt) {
  if (!r1.quiver().same_structure(r2.quiver())) throw PreconditionError("Hom needs a common quiver");
  const Tolerances& tol = default_tolerances();
  const std::size_t n = r1.quiver().vertex_count();
  int unknowns = 0;
  for (std::size_t v = 0; v < n; ++v) unknowns += r1.dim(v) * r2.dim(v);

  bool reduce = opt.reduction == Reduction::always ||
                (opt.reduction == Reduction::automatic && unknowns > opt.reduce_above);
  Substitution sub = reduce ? eliminating_substitution(r1, r2, tol.elimination_cond_max)
                            : identity_substitution(r1, r2);
  bool any_eliminated = false;
  for (std::size_t v = 0; v < n; ++v) any_eliminated |= sub.root[v] != v;

  System sys = build_system(r1, r2, sub);
  NullspaceResult ns = nullspace(sys.m, tol.nullspace_eps);

  HomBasis out;
  out.unknowns = unknowns;
  out.tol_used = ns.threshold;
  out.reduced = any_eliminated;
  const Eigen::Index d = ns.basis.cols();

  // Expand to the full coordinates.
  Mat full(unknowns, d);
  for (Eigen::Index c = 0; c < d; ++c) {
    Eigen::Index k = 0;
    for (std::size_t v = 0; v < n; ++v) {
      const std::size_t rt = sub.root[v];
      const Eigen::Index kr = r2.dim(rt), hr = r1.dim(rt);
      Mat troot(kr, hr);
      for (Eigen::Index p = 0; p < kr; ++p)
        for (Eigen::Index q = 0; q < hr; ++q) troot(p, q) = ns.basis(sys.offset[rt] + p * hr + q, c);
      Mat tv = sub.identity[v] ? troot : Mat(sub.a[v] * troot * sub.b[v]);
      for (Eigen::Index i = 0; i < tv.rows(); ++i)
        for (Eigen::Index j = 0; j < tv.cols(); ++j) full(k++, c) = tv(i, j);
    }
  }
  if (any_eliminated && d > 0) {
    full = orthonormalize(full);
    normalize_phases(full);
  }

  for (Eigen::Index c = 0; c < d; ++c) {
    Hom h;
    Eigen::Index k = 0;
    for (std::size_t v = 0; v < n; ++v) {
      Mat tv(r2.dim(v), r1.dim(v));
      for (Eigen::Index i = 0; i < tv.rows(); ++i)
        for (Eigen::Index j = 0; j < tv.cols(); ++j) tv(i, j) = full(k++, c);
      h.mats.push_back(std::move(tv));
    }
    h.residual = hom_residual(r1, r2, h.mats);
    out.max_residual = std::max(out.max_residual, h.residual);
    out.basis.push_back(std::move(h));
  }
  out.dim = static_cast<int>(d);
  return out;
}

HomBasis end_basis(const Rep& r, const HomOptions& opt) { return hom_basis(r, r, opt); }

}  // namespace qrep
