#include "qrep/operator_models.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <map>
#include <sstream>

#include "qrep/builders.hpp"
#include "qrep/errors.hpp"

namespace qrep {

Mat unilateral_shift(int n) {
  if (n < 1) throw PreconditionError("fixture size must be >= 1");
  Mat s = Mat::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) s(i + 1, i) = 1.0;
  return s;
}

// Same matrix as the unilateral shift; the difference is the index window.
Mat bilateral_shift(int n) { return unilateral_shift(n); }

Mat diag_fixture(const SequenceSpec& s, int n) {
  if (n < 1) throw PreconditionError("fixture size must be >= 1");
  Mat d = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = value(s, i + 1);
  return d;
}

Mat jordan(int n, cplx lambda) {
  Mat j = unilateral_shift(n);
  j.diagonal().setConstant(lambda);
  return j;
}

Mat rank_one(const Vec& x, const Vec& y) { return x * y.adjoint(); }

long window_start(int n) { return -static_cast<long>(n / 2); }

namespace {

int parse_size(const std::string& text, const std::string& whole) {
  try {
    std::size_t used = 0;
    int v = std::stoi(text, &used);
    if (used != text.size()) throw ParseError("");
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad size in fixture '" + whole + "'");
  }
}

}  // namespace

Mat make_fixture(std::string_view spec) {
  const std::string whole(spec);
  std::vector<std::string> parts;
  std::size_t pos = 0;
  // the diag form keeps the whole remainder as the sequence literal
  for (int i = 0; i < 2 && pos <= whole.size(); ++i) {
    auto c = whole.find(':', pos);
    parts.push_back(whole.substr(pos, c == std::string::npos ? std::string::npos : c - pos));
    if (c == std::string::npos) {
      pos = whole.size() + 1;
      break;
    }
    pos = c + 1;
  }
  std::string rest = pos <= whole.size() ? whole.substr(pos) : std::string();
  bool has_rest = pos <= whole.size();
  if (parts.size() < 2) throw ParseError("fixture needs <kind>:<N>: '" + whole + "'");
  const std::string& kind = parts[0];
  const int n = parse_size(parts[1], whole);
  if (n < 1) throw PreconditionError("fixture size must be >= 1");
  if (kind == "shift" && !has_rest) return unilateral_shift(n);
  if (kind == "bilateral-shift" && !has_rest) return bilateral_shift(n);
  if (kind == "jordan") {
    cplx lambda = 0.0;
    if (has_rest) {
      char* end = nullptr;
      double v = std::strtod(rest.c_str(), &end);
      if (rest.empty() || *end != '\0' || !std::isfinite(v)) throw ParseError("bad eigenvalue in '" + whole + "'");
      lambda = v;
    }
    return jordan(n, lambda);
  }
  if (kind == "diag" && has_rest) return diag_fixture(parse_sequence(rest), n);
  throw ParseError("unknown fixture '" + whole + "'");
}

OperatorPair kron_pair_shift_rank_one(const SequenceSpec& lambda, const SequenceSpec& w, int n) {
  if (n < 1) throw PreconditionError("truncation size must be >= 1");
  std::vector<double> lam(n), wv(n);
  for (int i = 0; i < n; ++i) {
    lam[i] = value(lambda, i + 1);
    if (sign(w, i + 1) == 0) throw PreconditionError("w_" + std::to_string(i + 1) + " = 0; the pair needs w_n != 0");
    wv[i] = value(w, i + 1);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (lam[i] == lam[j])
        throw PreconditionError("lambda_" + std::to_string(i + 1) + " = lambda_" + std::to_string(j + 1) +
                                "; the pair needs pairwise distinct lambda");
  OperatorPair p;
  p.b = unilateral_shift(n);
  Mat dl = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) dl(i, i) = lam[i];
  Vec e1 = Vec::Zero(n);
  e1(0) = 1.0;
  Vec wbar(n);
  for (int i = 0; i < n; ++i) wbar(i) = wv[i];  // real weights: conj(w) = w
  p.a = p.b * dl + rank_one(e1, wbar);
  p.provenance = "shift-rank-one lambda=" + to_string(lambda) + " w=" + to_string(w) + " N=" + std::to_string(n);
  return p;
}

namespace {

// x_m materialized from the log domain; zero or underflowing weights are errors.
double weight(const SequenceSpec& s, long m, const char* name) {
  const int sg = sign(s, m);
  const double l = log_abs(s, m);
  if (sg == 0 || !std::isfinite(l))
    throw PreconditionError(std::string(name) + "(" + std::to_string(m) + ") = 0; weights must be nonzero");
  if (l < std::log(DBL_MIN) || l > std::log(DBL_MAX))
    throw PreconditionError(std::string(name) + "(" + std::to_string(m) + ") = exp(" + std::to_string(l) +
                            ") leaves double range; use a smaller window");
  return sg * std::exp(l);
}

}  // namespace

OperatorPair kron_pair_bilateral(const SequenceSpec& a, const SequenceSpec& b, int n) {
  if (n < 1) throw PreconditionError("window size must be >= 1");
  const long m0 = window_start(n);
  OperatorPair p;
  p.a = Mat::Zero(n, n);
  Mat db = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    p.a(i, i) = weight(a, m0 + i, "a");
    db(i, i) = weight(b, m0 + i, "b");
  }
  p.b = bilateral_shift(n) * db;
  p.provenance = "bilateral a=" + to_string(a) + " b=" + to_string(b) + " window=[" + std::to_string(m0) + "," +
                 std::to_string(m0 + n - 1) + "]";
  return p;
}

namespace {

// Leading behaviour of log|x_n| along one parity class:
//   fact * n! + sum_base coef * base^n + lin * n + logn * log n + O(1).
struct Asymptotic {
  bool zero = false;
  double fact = 0;
  std::map<double, double> pow;
  double lin = 0;
  double logn = 0;
};

Asymptotic asymptotic(const SequenceSpec& s, bool odd_class) {
  Asymptotic out;
  switch (s.family) {
    case SeqFamily::reciprocal: out.logn = -1; break;
    case SeqFamily::one_minus_pow:
      if (s.param == 1.0)
        out.zero = true;
      else if (s.param < 1.0)
        out.lin = -std::log(s.param);
      break;
    case SeqFamily::exp_neg_pow:
      if (odd_class == s.odd && s.param > 1.0) out.pow[s.param] = -1;
      break;
    case SeqFamily::hrr: out.fact = odd_class ? -1 : 1; break;
    case SeqFamily::constant: out.zero = s.param == 0.0; break;
    case SeqFamily::list:
      if (!s.tail)
        throw PreconditionError("tail of " + to_string(s) +
                                " is undecidable; declare one as list:[...]:<sequence>");
      return asymptotic(*s.tail, odd_class);
  }
  return out;
}

// Whether exp(2 * L(n)) is summable, L the difference num - den.
bool square_summable(const Asymptotic& num, const Asymptotic& den) {
  if (num.zero) return true;
  auto decide = [](double c) { return c < 0; };
  if (double c = num.fact - den.fact; c != 0) return decide(c);
  std::map<double, double> pw = num.pow;
  for (const auto& [base, c] : den.pow) pw[base] -= c;
  for (auto it = pw.rbegin(); it != pw.rend(); ++it)
    if (it->second != 0) return decide(it->second);
  if (double c = num.lin - den.lin; c != 0) return decide(c);
  return num.logn - den.logn < -0.5;
}

bool never_zero(const SequenceSpec& s, long* first_zero) {
  switch (s.family) {
    case SeqFamily::one_minus_pow:
      if (s.param == 1.0) return *first_zero = 1, false;
      return true;
    case SeqFamily::constant:
      if (s.param == 0.0) return *first_zero = 1, false;
      return true;
    case SeqFamily::list:
      for (std::size_t i = 0; i < s.values.size(); ++i)
        if (s.values[i] == 0.0) return *first_zero = static_cast<long>(i + 1), false;
      if (!s.tail)
        throw PreconditionError("tail of " + to_string(s) +
                                " is undecidable; declare one as list:[...]:<sequence>");
      if (!never_zero(*s.tail, first_zero)) {
        *first_zero = std::max<long>(*first_zero, static_cast<long>(s.values.size()) + 1);
        return false;
      }
      return true;
    default: return true;
  }
}

}  // namespace

DensityVerdict density_criterion(const SequenceSpec& lambda, const SequenceSpec& w) {
  DensityVerdict v;
  v.method = "closed-form";
  long first_zero = 0;
  v.lambda_nonzero = never_zero(lambda, &first_zero);
  if (!v.lambda_nonzero) {
    v.ratio_in_l2 = false;
    v.dense = false;
    v.reason = "lambda_" + std::to_string(first_zero) + " = 0";
    return v;
  }
  v.ratio_in_l2 = true;
  for (bool odd : {false, true})
    v.ratio_in_l2 = v.ratio_in_l2 && square_summable(asymptotic(w, odd), asymptotic(lambda, odd));
  v.dense = !v.ratio_in_l2;
  v.reason = v.ratio_in_l2 ? "lambda_k != 0 for all k but w_k/lambda_k is square summable"
                           : "lambda_k != 0 for all k and w_k/lambda_k is not square summable";
  return v;
}

double log_mk(const SequenceSpec& a, const SequenceSpec& b, long m, long n, int k) {
  auto lw = [&](long j) {
    if (sign(a, j) == 0 || sign(b, j) == 0)
      throw PreconditionError("zero weight at index " + std::to_string(j) + "; w = b/a needs nonzero weights");
    return log_abs(b, j) - log_abs(a, j);
  };
  double total = 0;
  for (int j = 0; j < k; ++j) total += lw(m + j) - lw(n + j);
  return total;
}

namespace {

Mat stacked(const Mat& top, const Mat& bottom) {
  Mat m(top.rows() + bottom.rows(), top.cols());
  m << top, bottom;
  return m;
}

SubspaceSystem four_from_graph(int n, Mat graph) {
  const Mat id = Mat::Identity(n, n), zero = Mat::Zero(n, n);
  SubspaceSystem s;
  s.ambient = 2 * n;
  s.subspaces = {stacked(id, zero), stacked(zero, id), std::move(graph), stacked(id, id) / std::sqrt(2.0)};
  return s;
}

}  // namespace

SubspaceSystem four_subspace_from_pair(const OperatorPair& p) {
  if (p.a.rows() != p.a.cols() || p.a.rows() != p.b.rows() || p.b.rows() != p.b.cols())
    throw PreconditionError("A and B must be square of the same size");
  const int n = static_cast<int>(p.a.rows());
  Mat ab = stacked(p.a, p.b);
  const double rel = default_tolerances().relative;
  Mat e3 = numerical_rank(ab, rel) == n ? orthonormalize(ab) : range_basis(ab, rel);
  return four_from_graph(n, std::move(e3));
}

SubspaceSystem operator_system(const Mat& a) {
  if (a.rows() != a.cols()) throw PreconditionError("operator must be square");
  OperatorPair p{Mat::Identity(a.rows(), a.cols()), a, "operator"};
  return four_subspace_from_pair(p);
}

SubspaceSystem hrr_system(int n) {
  if (n < 2) throw PreconditionError("the weighted-shift window needs N >= 2");
  const SequenceSpec w = parse_sequence("hrr");
  const long m0 = window_start(n);
  Mat g = Mat::Zero(2 * n, n);
  for (int i = 0; i < n; ++i) {
    if (i + 1 == n) {
      g(i, i) = 1.0;  // the last basis vector leaves the window
      continue;
    }
    // (1, w)/sqrt(1 + w^2) without forming w when it overflows
    const double l = log_abs(w, m0 + i);
    const double t = std::exp(-std::abs(l));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    g(i, i) = l > 0 ? t * c : c;
    g(n + i + 1, i) = l > 0 ? c : t * c;
  }
  return four_from_graph(n, std::move(g));
}

SubspaceEnd subspace_system_end(const SubspaceSystem& s) {
  const int n = s.ambient;
  const double rel = default_tolerances().relative;
  std::vector<Mat> comps;
  Eigen::Index rows = 0;
  for (const Mat& j : s.subspaces) {
    if (j.rows() != n) throw PreconditionError("subspace does not live in the ambient space");
    comps.push_back(j.cols() == 0 ? Mat(Mat::Identity(n, n)) : kernel_basis(j.adjoint(), rel));
    rows += comps.back().cols() * j.cols();
  }
  // C_i^* T J_i = 0 with T row-major: coefficient of T[r,k] is conj(C[r,a]) J[k,c]
  Mat m = Mat::Zero(rows, static_cast<Eigen::Index>(n) * n);
  Eigen::Index row = 0;
  for (std::size_t i = 0; i < s.subspaces.size(); ++i) {
    const Mat& j = s.subspaces[i];
    const Mat& c = comps[i];
    for (Eigen::Index a = 0; a < c.cols(); ++a)
      for (Eigen::Index cc = 0; cc < j.cols(); ++cc, ++row)
        for (int r = 0; r < n; ++r)
          for (int k = 0; k < n; ++k) m(row, r * n + k) = std::conj(c(r, a)) * j(k, cc);
  }
  NullspaceResult ns = nullspace(m, default_tolerances().nullspace_eps);
  SubspaceEnd out;
  out.tol_used = ns.threshold;
  out.dim = static_cast<int>(ns.basis.cols());
  for (Eigen::Index b = 0; b < ns.basis.cols(); ++b) {
    Mat t(n, n);
    for (int r = 0; r < n; ++r)
      for (int k = 0; k < n; ++k) t(r, k) = ns.basis(r * n + k, b);
    double res = 0;
    for (std::size_t i = 0; i < s.subspaces.size(); ++i)
      res = std::max(res, (comps[i].adjoint() * t * s.subspaces[i]).norm() / t.norm());
    out.max_residual = std::max(out.max_residual, res);
    out.basis.push_back(std::move(t));
  }
  return out;
}

Rep subspace_quiver_rep(const SubspaceSystem& s) {
  SubspaceRepSpec spec;
  spec.ambient = s.ambient;
  std::vector<std::string> vertices{"0"};
  std::vector<ArrowSpec> arrows;
  spec.injections.push_back(Mat::Identity(s.ambient, s.ambient));
  for (std::size_t i = 0; i < s.subspaces.size(); ++i) {
    const std::string v = std::to_string(i + 1);
    vertices.push_back(v);
    arrows.push_back({"i" + v, v, "0"});
    spec.injections.push_back(s.subspaces[i]);
  }
  spec.quiver = Quiver::create("R" + std::to_string(s.subspaces.size()), vertices, arrows);
  return subspace_inclusion_rep(spec);
}

SubspaceEnd subspace_system_end_via_quiver(const SubspaceSystem& s) {
  Rep r = subspace_quiver_rep(s);
  HomBasis end = end_basis(r);
  SubspaceEnd out;
  out.tol_used = end.tol_used;
  out.max_residual = end.max_residual;
  out.dim = end.dim;
  if (end.dim == 0) return out;
  const int n = s.ambient;
  Mat cols(static_cast<Eigen::Index>(n) * n, end.dim);
  for (int b = 0; b < end.dim; ++b) {
    const Mat& t = end.basis[b].mats[0];
    for (int r0 = 0; r0 < n; ++r0)
      for (int k = 0; k < n; ++k) cols(r0 * n + k, b) = t(r0, k);
  }
  cols = orthonormalize(cols);
  normalize_phases(cols);
  for (int b = 0; b < end.dim; ++b) {
    Mat t(n, n);
    for (int r0 = 0; r0 < n; ++r0)
      for (int k = 0; k < n; ++k) t(r0, k) = cols(r0 * n + k, b);
    out.basis.push_back(std::move(t));
  }
  return out;
}

PhiReport phi_map(const Mat& a, const Mat& b) {
  if (a.rows() != a.cols() || a.rows() != b.rows() || b.rows() != b.cols())
    throw PreconditionError("A and B must be square of the same size");
  const int n = static_cast<int>(a.rows());
  const double rel = default_tolerances().relative;
  Quiver kq = Quiver::create("kronecker", {"1", "2"}, {{"alpha", "1", "2"}, {"beta", "1", "2"}});
  Rep r = Rep::create(kq, {n, n}, {a, b});
  HomBasis end = end_basis(r);
  SubspaceSystem sys = four_subspace_from_pair(OperatorPair{a, b, "phi"});
  SubspaceEnd send = subspace_system_end(sys);

  PhiReport rep;
  rep.end_rep_dim = end.dim;
  rep.end_system_dim = send.dim;
  rep.expected_ker_dim = n * static_cast<int>(kernel_basis(stacked(a, b), rel).cols());

  std::vector<Mat> comps;
  for (const Mat& j : sys.subspaces) comps.push_back(kernel_basis(j.adjoint(), rel));
  Mat images(4 * static_cast<Eigen::Index>(n) * n, end.dim);
  for (int k = 0; k < end.dim; ++k) {
    Mat phi = block_diag({end.basis[k].mats[1], end.basis[k].mats[1]});
    // scale by the whole basis element: T can be numerically zero while S is not
    const double scale = std::hypot(end.basis[k].mats[0].norm(), end.basis[k].mats[1].norm());
    for (std::size_t i = 0; i < sys.subspaces.size(); ++i)
      rep.image_residual =
          std::max(rep.image_residual, (comps[i].adjoint() * phi * sys.subspaces[i]).norm() / scale);
    images.col(k) = Eigen::Map<const Vec>(phi.data(), phi.size());
  }
  const int rank = end.dim == 0 ? 0 : numerical_rank(images, rel);
  rep.ker_dim = end.dim - rank;
  rep.injective = rep.ker_dim == 0;
  rep.surjective = rank == send.dim;
  return rep;
}

}  // namespace qrep
