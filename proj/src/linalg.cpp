#include "qrep/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace qrep {

Tolerances& default_tolerances() {
  static Tolerances t;
  return t;
}

namespace {

// Full right singular basis of m, singular values descending. For tall
// inputs the SVD runs on the triangular factor of a QR, which has the same
// singular values and right singular vectors.
void right_svd(const Mat& m, Eigen::VectorXd& sv, Mat& v) {
  if (m.rows() > m.cols()) {
    Eigen::HouseholderQR<Mat> qr(m);
    Mat r = qr.matrixQR().topRows(m.cols()).triangularView<Eigen::Upper>();
    Eigen::BDCSVD<Mat> svd(r, Eigen::ComputeFullV);
    sv = svd.singularValues();
    v = svd.matrixV();
  } else {
    Eigen::BDCSVD<Mat> svd(m, Eigen::ComputeFullV);
    sv = svd.singularValues();
    v = svd.matrixV();
  }
}

}  // namespace

NullspaceResult nullspace(const Mat& m, double eps) {
  NullspaceResult out;
  const Eigen::Index n = m.cols();
  if (n == 0) {
    out.basis = Mat(0, 0);
    return out;
  }
  if (m.rows() == 0 || m.cwiseAbs().maxCoeff() == 0.0) {
    out.basis = Mat::Identity(n, n);
    return out;
  }
  Eigen::VectorXd sv;
  Mat v;
  right_svd(m, sv, v);
  out.threshold = sv(0) * static_cast<double>(std::max(m.rows(), n)) * eps;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > out.threshold) ++rank;
  out.rank = rank;
  out.basis = v.rightCols(n - rank);
  normalize_phases(out.basis);
  return out;
}

Eigen::VectorXd singular_values(const Mat& m) {
  if (m.size() == 0) return Eigen::VectorXd(0);
  Eigen::BDCSVD<Mat> svd(m);
  return svd.singularValues();
}

int numerical_rank(const Mat& m, double rel_tol) {
  Eigen::VectorXd sv = singular_values(m);
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_tol * sv(0)) ++r;
  return r;
}

Mat range_basis(const Mat& m, double rel_tol) {
  if (m.size() == 0) return Mat(m.rows(), 0);
  Eigen::BDCSVD<Mat> svd(m, Eigen::ComputeThinU);
  const Eigen::VectorXd& sv = svd.singularValues();
  int r = 0;
  if (sv(0) > 0)
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > rel_tol * sv(0)) ++r;
  Mat out = svd.matrixU().leftCols(r);
  normalize_phases(out);
  return out;
}

Mat kernel_basis(const Mat& m, double rel_tol) {
  const Eigen::Index n = m.cols();
  if (n == 0) return Mat(0, 0);
  if (m.rows() == 0 || m.cwiseAbs().maxCoeff() == 0.0) return Mat::Identity(n, n);
  Eigen::VectorXd sv;
  Mat v;
  right_svd(m, sv, v);
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_tol * sv(0)) ++r;
  Mat out = v.rightCols(n - r);
  normalize_phases(out);
  return out;
}

void normalize_phases(Mat& cols) {
  // near-ties go to the first index so that the choice is stable under rounding
  if (cols.rows() == 0) return;
  for (Eigen::Index j = 0; j < cols.cols(); ++j) {
    const double mag = cols.col(j).cwiseAbs().maxCoeff();
    if (!(mag > 0)) continue;
    Eigen::Index best = 0;
    while (std::abs(cols(best, j)) < mag * (1 - 1e-9)) ++best;
    cols.col(j) *= std::conj(cols(best, j)) / std::abs(cols(best, j));
  }
}

Mat orthonormalize(const Mat& m) {
  if (m.cols() == 0) return Mat(m.rows(), 0);
  Eigen::HouseholderQR<Mat> qr(m);
  Mat q = qr.householderQ() * Mat::Identity(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    cplx d = qr.matrixQR()(j, j);
    double a = std::abs(d);
    if (a > 0) q.col(j) *= d / a;
  }
  return q;
}

bool is_invertible(const Mat& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  if (m.rows() == 0) return true;
  Eigen::VectorXd sv = singular_values(m);
  return sv(0) > 0 && sv(sv.size() - 1) > rel_tol * sv(0);
}

Mat block_diag(const std::vector<Mat>& blocks) {
  Eigen::Index r = 0, c = 0;
  for (const Mat& b : blocks) {
    r += b.rows();
    c += b.cols();
  }
  Mat out = Mat::Zero(r, c);
  r = c = 0;
  for (const Mat& b : blocks) {
    out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

Mat random_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
  Mat out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      double re = nd(rng);
      double im = nd(rng);
      out(i, j) = cplx(re, im);
    }
  return out;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t t) {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (t + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace qrep
