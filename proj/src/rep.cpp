#include "qrep/rep.hpp"

#include <cmath>

#include "qrep/errors.hpp"

namespace qrep {

Rep Rep::create(Quiver q, std::vector<int> dims, std::vector<Mat> mats) {
  if (dims.size() != q.vertex_count())
    throw ValidationError("expected " + std::to_string(q.vertex_count()) + " vertex dimensions");
  if (mats.size() != q.arrow_count())
    throw ValidationError("expected " + std::to_string(q.arrow_count()) + " arrow matrices");
  for (std::size_t v = 0; v < dims.size(); ++v)
    if (dims[v] < 0) throw ValidationError("negative dimension at vertex '" + q.vertices()[v] + "'");
  for (std::size_t a = 0; a < mats.size(); ++a) {
    const Arrow& ar = q.arrows()[a];
    if (mats[a].rows() != dims[ar.target] || mats[a].cols() != dims[ar.source])
      throw ValidationError("arrow '" + ar.id + "' needs a " + std::to_string(dims[ar.target]) + "x" +
                            std::to_string(dims[ar.source]) + " matrix, got " +
                            std::to_string(mats[a].rows()) + "x" + std::to_string(mats[a].cols()));
    if (!mats[a].allFinite()) throw ValidationError("arrow '" + ar.id + "' has non-finite entries");
  }
  Rep r;
  r.quiver_ = std::move(q);
  r.dims_ = std::move(dims);
  r.mats_ = std::move(mats);
  return r;
}

int Rep::total_dim() const {
  int t = 0;
  for (int d : dims_) t += d;
  return t;
}

Rep new_rep(const Quiver& q, const std::map<std::string, int>& dims,
            const std::map<std::string, Mat>& mats) {
  std::vector<int> d(q.vertex_count(), 0);
  for (const auto& [id, n] : dims) d[q.vertex_index(id)] = n;
  std::vector<Mat> m;
  for (const Arrow& a : q.arrows()) {
    auto it = mats.find(a.id);
    m.push_back(it == mats.end() ? Mat::Zero(d[a.target], d[a.source]) : it->second);
  }
  for (const auto& [id, mat] : mats)
    if (!q.find_arrow(id)) throw ValidationError("matrix for unknown arrow '" + id + "'");
  return Rep::create(q, std::move(d), std::move(m));
}

Rep zero_rep(const Quiver& q) {
  std::vector<Mat> m(q.arrow_count(), Mat(0, 0));
  return Rep::create(q, std::vector<int>(q.vertex_count(), 0), std::move(m));
}

Rep random_rep(const Quiver& q, const std::vector<int>& dims, std::mt19937_64& rng) {
  if (dims.size() != q.vertex_count()) throw ValidationError("dimension vector has the wrong length");
  std::vector<Mat> m;
  for (const Arrow& a : q.arrows()) m.push_back(random_gaussian(dims[a.target], dims[a.source], rng));
  return Rep::create(q, dims, std::move(m));
}

double hom_residual(const Rep& from, const Rep& to, const std::vector<Mat>& t) {
  double tnorm2 = 0;
  for (const Mat& m : t) tnorm2 += m.squaredNorm();
  const double tnorm = std::sqrt(tnorm2);
  double worst = 0;
  for (std::size_t a = 0; a < from.quiver().arrow_count(); ++a) {
    const Arrow& ar = from.quiver().arrows()[a];
    const Mat& f = from.mat(a);
    const Mat& g = to.mat(a);
    double num = (t[ar.target] * f - g * t[ar.source]).norm();
    double den = (f.norm() + g.norm()) * tnorm;
    if (num > 0) worst = std::max(worst, den > 0 ? num / den : INFINITY);
  }
  return worst;
}

Hom identity_hom(const Rep& r) {
  Hom h;
  for (int d : r.dims()) h.mats.push_back(Mat::Identity(d, d));
  return h;
}

Hom compose(const Hom& a, const Hom& b) {
  Hom h;
  for (std::size_t v = 0; v < a.mats.size(); ++v) h.mats.push_back(a.mats[v] * b.mats[v]);
  return h;
}

Vec flatten(const Hom& h) {
  Eigen::Index n = 0;
  for (const Mat& m : h.mats) n += m.size();
  Vec out(n);
  Eigen::Index k = 0;
  for (const Mat& m : h.mats)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) out(k++) = m(i, j);
  return out;
}

Rep direct_sum(const Rep& a, const Rep& b) {
  if (!a.quiver().same_structure(b.quiver())) throw PreconditionError("direct sum needs a common quiver");
  std::vector<int> d;
  for (std::size_t v = 0; v < a.dims().size(); ++v) d.push_back(a.dim(v) + b.dim(v));
  std::vector<Mat> m;
  for (std::size_t e = 0; e < a.mats().size(); ++e) m.push_back(block_diag({a.mat(e), b.mat(e)}));
  return Rep::create(a.quiver(), std::move(d), std::move(m));
}

Rep conjugate(const Rep& r, const std::vector<Mat>& phi) {
  const Tolerances& tol = default_tolerances();
  if (phi.size() != r.dims().size()) throw PreconditionError("conjugation needs one matrix per vertex");
  std::vector<Mat> inv;
  for (std::size_t v = 0; v < phi.size(); ++v) {
    if (phi[v].rows() != r.dim(v) || phi[v].cols() != r.dim(v) || !is_invertible(phi[v], tol.relative))
      throw PreconditionError("conjugating map at vertex '" + r.quiver().vertices()[v] + "' is not invertible");
    inv.push_back(r.dim(v) ? Mat(phi[v].fullPivLu().inverse()) : Mat(0, 0));
  }
  std::vector<Mat> m;
  for (std::size_t e = 0; e < r.mats().size(); ++e) {
    const Arrow& a = r.quiver().arrows()[e];
    m.push_back(phi[a.target] * r.mat(e) * inv[a.source]);
  }
  return Rep::create(r.quiver(), r.dims(), std::move(m));
}

Decomposition decompose_with(const Rep& r, const Hom& e) {
  const Tolerances& tol = default_tolerances();
  if (e.mats.size() != r.dims().size()) throw PreconditionError("idempotent needs one block per vertex");
  double idem = 0, norm2 = 0;
  for (std::size_t v = 0; v < e.mats.size(); ++v) {
    if (e.mats[v].rows() != r.dim(v) || e.mats[v].cols() != r.dim(v))
      throw PreconditionError("idempotent block has the wrong shape");
    idem += (e.mats[v] * e.mats[v] - e.mats[v]).squaredNorm();
    norm2 += e.mats[v].squaredNorm();
  }
  if (std::sqrt(idem) > tol.residual * std::max(1.0, norm2))
    throw PreconditionError("e is not idempotent");
  if (hom_residual(r, r, e.mats) > tol.residual) throw PreconditionError("e is not an endomorphism");

  std::vector<Mat> u, w;
  int rank_e = 0, rank_c = 0;
  for (std::size_t v = 0; v < e.mats.size(); ++v) {
    const int d = r.dim(v);
    u.push_back(range_basis(e.mats[v], tol.relative));
    w.push_back(range_basis(Mat::Identity(d, d) - e.mats[v], tol.relative));
    if (u.back().cols() + w.back().cols() != d)
      throw PreconditionError("idempotent ranks do not add up at vertex '" + r.quiver().vertices()[v] + "'");
    rank_e += static_cast<int>(u.back().cols());
    rank_c += static_cast<int>(w.back().cols());
  }
  if (rank_e == 0 || rank_c == 0) throw PreconditionError("idempotent is trivial");

  std::vector<int> d1, d2;
  for (std::size_t v = 0; v < u.size(); ++v) {
    d1.push_back(static_cast<int>(u[v].cols()));
    d2.push_back(static_cast<int>(w[v].cols()));
  }
  std::vector<Mat> m1, m2;
  for (std::size_t a = 0; a < r.mats().size(); ++a) {
    const Arrow& ar = r.quiver().arrows()[a];
    m1.push_back(u[ar.target].adjoint() * r.mat(a) * u[ar.source]);
    m2.push_back(w[ar.target].adjoint() * r.mat(a) * w[ar.source]);
  }
  Decomposition out;
  out.first = Rep::create(r.quiver(), d1, std::move(m1));
  out.second = Rep::create(r.quiver(), d2, std::move(m2));
  for (std::size_t v = 0; v < u.size(); ++v) {
    Mat phi(r.dim(v), r.dim(v));
    phi.leftCols(u[v].cols()) = u[v];
    phi.rightCols(w[v].cols()) = w[v];
    out.witness.mats.push_back(phi);
  }
  out.witness.residual = hom_residual(direct_sum(out.first, out.second), r, out.witness.mats);
  return out;
}

}  // namespace qrep
