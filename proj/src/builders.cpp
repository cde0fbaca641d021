#include "qrep/builders.hpp"

#include <utility>

#include "qrep/errors.hpp"

namespace qrep {

Rep subspace_inclusion_rep(const SubspaceRepSpec& spec) {
  const Quiver& q = spec.quiver;
  if (spec.injections.size() != q.vertex_count()) throw PreconditionError("one subspace per vertex is required");
  const double tol = default_tolerances().residual;
  std::vector<int> dims;
  for (const Mat& j : spec.injections) {
    if (j.rows() != spec.ambient) throw PreconditionError("injection does not live in the ambient space");
    if ((j.adjoint() * j - Mat::Identity(j.cols(), j.cols())).norm() > tol)
      throw PreconditionError("injection columns are not orthonormal");
    dims.push_back(static_cast<int>(j.cols()));
  }
  std::vector<Mat> mats;
  for (const Arrow& a : q.arrows()) {
    const Mat& js = spec.injections[a.source];
    const Mat& jt = spec.injections[a.target];
    Mat coords = jt.adjoint() * js;
    if ((js - jt * coords).norm() > tol * std::max(1.0, js.norm()))
      throw PreconditionError("subspace at '" + q.vertices()[a.source] + "' is not contained in the subspace at '" +
                              q.vertices()[a.target] + "' (arrow '" + a.id + "')");
    mats.push_back(std::move(coords));
  }
  return Rep::create(q, std::move(dims), std::move(mats));
}

const char* to_string(ExtendedFamily f) {
  switch (f) {
    case ExtendedFamily::DTilde: return "d~";
    case ExtendedFamily::E6Tilde: return "e6~";
    case ExtendedFamily::E7Tilde: return "e7~";
    case ExtendedFamily::E8Tilde: return "e8~";
  }
  return "?";
}

namespace {

// One generator of a subspace: x in K mapped to sum_i E_slot(i) M_i x.
using Generator = std::vector<std::pair<int, Mat>>;

struct Ambient {
  int m, k;
  Mat identity() const { return Mat::Identity(k, k); }
  Generator free(int slot) const { return {{slot, identity()}}; }
  Generator diag(std::initializer_list<int> slots) const {
    Generator g;
    for (int s : slots) g.push_back({s, identity()});
    return g;
  }
  Generator graph(int x, int y, const Mat& s) const { return {{x, identity()}, {y, s}}; }
  Mat span(const std::vector<Generator>& gens) const {
    Mat cols = Mat::Zero(m * k, static_cast<Eigen::Index>(gens.size()) * k);
    for (std::size_t g = 0; g < gens.size(); ++g)
      for (const auto& [slot, mat] : gens[g]) cols.block(slot * k, static_cast<Eigen::Index>(g) * k, k, k) += mat;
    return orthonormalize(cols);
  }
  Mat all() const { return Mat::Identity(m * k, m * k); }
};

SubspaceRepSpec dtilde(const Mat& s, int n) {
  if (n < 4) throw PreconditionError("D~_n needs n >= 4");
  const Ambient amb{2, static_cast<int>(s.rows())};
  std::vector<std::string> v;
  for (int i = 1; i <= n + 1; ++i) v.push_back(std::to_string(i));
  const std::string hub = std::to_string(n + 1);
  std::vector<ArrowSpec> a{{"a1", "1", "5"}, {"a2", "2", "5"}, {"a3", "3", hub}, {"a4", "4", hub}};
  for (int j = 5; j <= n; ++j) a.push_back({"b" + std::to_string(j), std::to_string(j), std::to_string(j + 1)});
  SubspaceRepSpec spec;
  spec.ambient = 2 * amb.k;
  spec.quiver = Quiver::create("D~" + std::to_string(n), v, a);
  spec.injections = {amb.span({amb.free(0)}), amb.span({amb.free(1)}), amb.span({amb.graph(0, 1, s)}),
                     amb.span({amb.diag({0, 1})})};
  for (int j = 5; j <= n + 1; ++j) spec.injections.push_back(amb.all());
  return spec;
}

SubspaceRepSpec e6tilde(const Mat& s) {
  const Ambient amb{3, static_cast<int>(s.rows())};
  SubspaceRepSpec spec;
  spec.ambient = 3 * amb.k;
  spec.quiver = Quiver::create("E~6", {"0", "1", "2", "1'", "2'", "1''", "2''"},
                               {{"f1", "1", "0"},
                                {"f2", "2", "1"},
                                {"f1'", "1'", "0"},
                                {"f2'", "2'", "1'"},
                                {"f1''", "1''", "0"},
                                {"f2''", "2''", "1''"}});
  spec.injections = {
      amb.all(),
      amb.span({amb.free(1), amb.free(2)}),
      amb.span({amb.graph(1, 2, s)}),
      amb.span({amb.free(0), amb.free(1)}),
      amb.span({amb.diag({0, 1})}),
      amb.span({amb.free(0), amb.free(2)}),
      amb.span({amb.diag({0, 2})}),
  };
  return spec;
}

SubspaceRepSpec e7tilde(const Mat& s) {
  const Ambient amb{4, static_cast<int>(s.rows())};
  SubspaceRepSpec spec;
  spec.ambient = 4 * amb.k;
  spec.quiver = Quiver::create("E~7", {"0", "1", "2", "3", "1'", "2'", "3'", "1''"},
                               {{"f1", "1", "0"},
                                {"f2", "2", "1"},
                                {"f3", "3", "2"},
                                {"f1'", "1'", "0"},
                                {"f2'", "2'", "1'"},
                                {"f3'", "3'", "2'"},
                                {"f1''", "1''", "0"}});
  spec.injections = {
      amb.all(),
      amb.span({amb.free(0), amb.free(2), amb.free(3)}),
      amb.span({amb.free(0), amb.diag({2, 3})}),
      amb.span({amb.free(0)}),
      amb.span({amb.free(1), amb.free(2), amb.free(3)}),
      amb.span({amb.free(1), amb.graph(2, 3, s)}),
      amb.span({amb.free(1)}),
      amb.span({amb.diag({0, 2}), amb.diag({1, 3})}),
  };
  return spec;
}

SubspaceRepSpec e8tilde(const Mat& s) {
  const Ambient amb{6, static_cast<int>(s.rows())};
  SubspaceRepSpec spec;
  spec.ambient = 6 * amb.k;
  spec.quiver = Quiver::create("E~8", {"0", "1", "2", "3", "4", "5", "1'", "2'", "1''"},
                               {{"f1", "1", "0"},
                                {"f2", "2", "1"},
                                {"f3", "3", "2"},
                                {"f4", "4", "3"},
                                {"f5", "5", "4"},
                                {"f1'", "1'", "0"},
                                {"f2'", "2'", "1'"},
                                {"f1''", "1''", "0"}});
  spec.injections = {
      amb.all(),
      amb.span({amb.diag({0, 1}), amb.free(2), amb.free(3), amb.free(4), amb.free(5)}),
      amb.span({amb.free(2), amb.free(3), amb.free(4), amb.free(5)}),
      amb.span({amb.free(3), amb.free(4), amb.free(5)}),
      amb.span({amb.free(3), amb.graph(4, 5, s)}),
      amb.span({amb.free(3)}),
      amb.span({amb.free(0), amb.free(1), amb.diag({2, 4}), amb.diag({3, 5})}),
      amb.span({amb.free(0), amb.free(1)}),
      // (y, z, x, 0, y, z)
      amb.span({amb.free(2), amb.diag({0, 4}), amb.diag({1, 5})}),
  };
  return spec;
}

}  // namespace

SubspaceRepSpec extended_dynkin_spec(ExtendedFamily family, const Mat& s, int n) {
  if (s.rows() != s.cols() || s.rows() < 1) throw PreconditionError("the operator parameter must be k x k with k >= 1");
  switch (family) {
    case ExtendedFamily::DTilde: return dtilde(s, n);
    case ExtendedFamily::E6Tilde: return e6tilde(s);
    case ExtendedFamily::E7Tilde: return e7tilde(s);
    case ExtendedFamily::E8Tilde: return e8tilde(s);
  }
  throw PreconditionError("unknown family");
}

Rep build_extended_dynkin(ExtendedFamily family, const Mat& s, int n) {
  return subspace_inclusion_rep(extended_dynkin_spec(family, s, n));
}

AnTildeRep build_an_tilde_noncyclic(const std::vector<bool>& clockwise, const Mat& a, const Mat& b) {
  const int n = static_cast<int>(clockwise.size());
  if (n < 2) throw PreconditionError("A~_{n-1} needs at least two vertices");
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw PreconditionError("a and b must be square of the same size");
  int alpha = -1, beta = -1;
  for (int i = 0; i < n; ++i) {
    if (clockwise[i] && alpha < 0) alpha = i;
    if (!clockwise[i] && beta < 0) beta = i;
  }
  if (alpha < 0 || beta < 0)
    throw PreconditionError("orientation is an oriented cycle; the construction needs arrows of both senses");
  std::vector<std::string> v;
  std::vector<ArrowSpec> arrows;
  for (int i = 1; i <= n; ++i) v.push_back(std::to_string(i));
  for (int i = 1; i <= n; ++i) {
    std::string x = std::to_string(i), y = std::to_string(i % n + 1);
    if (clockwise[i - 1])
      arrows.push_back({"e" + x, x, y});
    else
      arrows.push_back({"e" + x, y, x});
  }
  const int k = static_cast<int>(a.rows());
  std::vector<Mat> mats(n, Mat::Identity(k, k));
  mats[alpha] = a;
  mats[beta] = b;
  AnTildeRep out;
  out.rep = Rep::create(Quiver::create("A~" + std::to_string(n - 1), v, arrows), std::vector<int>(n, k), mats);
  out.alpha = "e" + std::to_string(alpha + 1);
  out.beta = "e" + std::to_string(beta + 1);
  return out;
}

}  // namespace qrep
