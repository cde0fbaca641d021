#include "qrep/reflection.hpp"

#include <algorithm>

#include "qrep/errors.hpp"
#include "qrep/hom.hpp"

namespace qrep {

namespace {

ReflectionResult collect(const Rep& r, std::size_t v, ReflectMode mode) {
  ReflectionResult out;
  out.vertex = v;
  out.mode = mode;
  Eigen::Index off = 0;
  for (std::size_t e = 0; e < r.quiver().arrow_count(); ++e) {
    const Arrow& a = r.quiver().arrows()[e];
    const bool at = mode == ReflectMode::sink ? a.target == v : a.source == v;
    if (!at) continue;
    const std::size_t far = mode == ReflectMode::sink ? a.source : a.target;
    out.arrows.push_back(e);
    out.far_vertex.push_back(far);
    out.offset.push_back(off);
    off += r.dim(far);
  }
  return out;
}

Eigen::Index sum_dim(const Rep& r, const ReflectionResult& rr) {
  Eigen::Index n = 0;
  for (std::size_t u : rr.far_vertex) n += r.dim(u);
  return n;
}

// h_v = [f_1 f_2 ...] for a sink, the stacked [f_1; f_2; ...] for a source.
Mat joint_map(const Rep& r, const ReflectionResult& rr) {
  const Eigen::Index n = sum_dim(r, rr);
  const int d = r.dim(rr.vertex);
  if (rr.mode == ReflectMode::sink) {
    Mat h(d, n);
    for (std::size_t i = 0; i < rr.arrows.size(); ++i)
      h.middleCols(rr.offset[i], r.dim(rr.far_vertex[i])) = r.mat(rr.arrows[i]);
    return h;
  }
  Mat h(n, d);
  for (std::size_t i = 0; i < rr.arrows.size(); ++i)
    h.middleRows(rr.offset[i], r.dim(rr.far_vertex[i])) = r.mat(rr.arrows[i]);
  return h;
}

std::string hypothesis_name(ReflectMode mode) { return mode == ReflectMode::sink ? "full at sink" : "co-full at source"; }

}  // namespace

ReflectionResult reflect(const Rep& r, std::string_view vid, ReflectMode mode) {
  const Quiver& q = r.quiver();
  const std::size_t v = q.vertex_index(vid);
  if (mode == ReflectMode::sink && !is_sink(q, v))
    throw PreconditionError("vertex '" + std::string(vid) +
                            "' is not a sink; the functor Phi+ is defined only at sinks");
  if (mode == ReflectMode::source && !is_source(q, v))
    throw PreconditionError("vertex '" + std::string(vid) +
                            "' is not a source; the functor Phi- is defined only at sources");
  ReflectionResult rr = collect(r, v, mode);
  const double rel = default_tolerances().relative;
  Mat h = joint_map(r, rr);
  rr.kernel = mode == ReflectMode::sink ? kernel_basis(h, rel) : kernel_basis(h.adjoint(), rel);
  if (rr.kernel.rows() != sum_dim(r, rr)) rr.kernel = Mat(sum_dim(r, rr), 0);

  std::vector<int> dims = r.dims();
  dims[v] = static_cast<int>(rr.kernel.cols());
  std::vector<Mat> mats = r.mats();
  for (std::size_t i = 0; i < rr.arrows.size(); ++i) {
    Mat block = rr.kernel.middleRows(rr.offset[i], r.dim(rr.far_vertex[i]));
    mats[rr.arrows[i]] = mode == ReflectMode::sink ? block : Mat(block.adjoint());
  }
  rr.rep = Rep::create(reverse_at(q, vid, mode), std::move(dims), std::move(mats));
  return rr;
}

ReflectionResult reflect_sink(const Rep& r, std::string_view v) { return reflect(r, v, ReflectMode::sink); }
ReflectionResult reflect_source(const Rep& r, std::string_view v) { return reflect(r, v, ReflectMode::source); }

Hom hom_transport(const ReflectionResult& from, const ReflectionResult& to, const Hom& t) {
  if (from.vertex != to.vertex || from.mode != to.mode || from.arrows != to.arrows)
    throw PreconditionError("transport needs two reflections at the same vertex");
  const std::size_t v = from.vertex;
  std::vector<Mat> blocks;
  for (std::size_t u : from.far_vertex) blocks.push_back(t.mats[u]);
  Mat d = block_diag(blocks);
  Hom s = t;
  s.mats[v] = to.kernel.adjoint() * d * from.kernel;
  s.residual = hom_residual(from.rep, to.rep, s.mats);
  return s;
}

bool is_full_at(const Rep& r, std::string_view vid, ReflectMode mode) {
  const std::size_t v = r.quiver().vertex_index(vid);
  if (mode == ReflectMode::sink && !is_sink(r.quiver(), v))
    throw PreconditionError("vertex '" + std::string(vid) + "' is not a sink");
  if (mode == ReflectMode::source && !is_source(r.quiver(), v))
    throw PreconditionError("vertex '" + std::string(vid) + "' is not a source");
  ReflectionResult rr = collect(r, v, mode);
  if (r.dim(v) == 0) return true;
  if (rr.arrows.empty()) return false;
  return numerical_rank(joint_map(r, rr), default_tolerances().relative) == r.dim(v);
}

Rep dual(const Rep& r) {
  std::vector<Mat> mats;
  for (const Mat& m : r.mats()) mats.push_back(m.adjoint());
  return Rep::create(opposite(r.quiver()), r.dims(), std::move(mats));
}

EndIsoReport verify_end_isomorphism(const Rep& r, std::string_view vid, ReflectMode mode) {
  EndIsoReport rep;
  rep.hypothesis = hypothesis_name(mode);
  ReflectionResult rr = reflect(r, vid, mode);
  rep.hypothesis_holds = is_full_at(r, vid, mode);
  HomBasis in = end_basis(r);
  HomBasis out = end_basis(rr.rep);
  rep.dim_in = in.dim;
  rep.dim_out = out.dim;

  std::vector<Hom> phi;
  for (const Hom& b : in.basis) phi.push_back(hom_transport(rr, rr, b));
  if (!phi.empty()) {
    Mat cols(flatten(phi[0]).size(), static_cast<Eigen::Index>(phi.size()));
    for (std::size_t i = 0; i < phi.size(); ++i) {
      cols.col(static_cast<Eigen::Index>(i)) = flatten(phi[i]);
      rep.membership_residual = std::max(rep.membership_residual, phi[i].residual);
    }
    rep.transported_rank = numerical_rank(cols, default_tolerances().relative);
  }
  for (std::size_t i = 0; i < in.basis.size(); ++i)
    for (std::size_t j = 0; j < in.basis.size(); ++j) {
      Hom lhs = hom_transport(rr, rr, compose(in.basis[i], in.basis[j]));
      Hom rhs = compose(phi[i], phi[j]);
      double err = (flatten(lhs) - flatten(rhs)).norm();
      rep.multiplicativity_residual = std::max(rep.multiplicativity_residual, err);
    }
  Hom unit = hom_transport(rr, rr, identity_hom(r));
  rep.unit_residual = (flatten(unit) - flatten(identity_hom(rr.rep))).norm();

  const double tol = default_tolerances().residual;
  rep.isomorphic = rep.dim_in == rep.dim_out && rep.transported_rank == rep.dim_in &&
                   rep.membership_residual <= tol && rep.multiplicativity_residual <= tol && rep.unit_residual <= tol;
  return rep;
}

Quiver an_quiver(int n, const std::vector<bool>& rightward) {
  if (n < 1 || rightward.size() != static_cast<std::size_t>(n - 1))
    throw PreconditionError("an A_n orientation needs n >= 1 and n-1 edge directions");
  std::vector<std::string> v;
  std::vector<ArrowSpec> a;
  for (int i = 1; i <= n; ++i) v.push_back(std::to_string(i));
  for (int k = 1; k < n; ++k) {
    std::string l = std::to_string(k), r = std::to_string(k + 1);
    if (rightward[k - 1])
      a.push_back({"e" + l, l, r});
    else
      a.push_back({"e" + l, r, l});
  }
  return Quiver::create("A" + std::to_string(n), v, a);
}

std::vector<int> orientation_sequence_an(int n, const std::vector<bool>& rightward) {
  if (n < 1 || rightward.size() != static_cast<std::size_t>(n - 1))
    throw PreconditionError("target is not an orientation of A_n");
  // Height functions with h(n) = 0 that drop by one along every arrow. The
  // start is h(k) = n - k; sigma^- at a source lowers its height by 2.
  std::vector<long> h(n + 1), target(n + 1);
  for (int k = 1; k <= n; ++k) h[k] = n - k;
  target[n] = 0;
  for (int k = n - 1; k >= 1; --k) target[k] = target[k + 1] + (rightward[k - 1] ? 1 : -1);

  std::vector<int> seq;
  for (;;) {
    int pick = 0;
    for (int k = 1; k < n && !pick; ++k) {
      if (h[k] <= target[k]) continue;
      bool source = (k == 1 || h[k - 1] < h[k]) && h[k + 1] < h[k];
      if (source) pick = k;
    }
    if (!pick) break;
    h[pick] -= 2;
    seq.push_back(pick);
  }
  return seq;
}

}  // namespace qrep
