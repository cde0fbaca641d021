// Independent reference computations used only by the tests. They avoid the
// library's constraint builder and SVD thresholds on purpose.
#pragma once

#include <Eigen/Dense>

#include "qrep/rep.hpp"

namespace oracle {

using qrep::Mat;

// Kronecker product.
inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// dim ker via full-pivot LU with an explicit threshold.
inline int kernel_dim(const Mat& m, double threshold = 1e-9) {
  if (m.cols() == 0) return 0;
  if (m.rows() == 0) return static_cast<int>(m.cols());
  Eigen::FullPivLU<Mat> lu(m);
  lu.setThreshold(threshold);
  return static_cast<int>(lu.dimensionOfKernel());
}

// Hom(r1, r2) as the kernel of the column-major vec system
// (f^T kron I) vec T_r - (I kron g) vec T_s = 0.
inline Mat vec_system(const qrep::Rep& r1, const qrep::Rep& r2) {
  const auto& q = r1.quiver();
  std::vector<Eigen::Index> off;
  Eigen::Index n = 0;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    off.push_back(n);
    n += static_cast<Eigen::Index>(r1.dim(v)) * r2.dim(v);
  }
  Eigen::Index rows = 0;
  for (const auto& a : q.arrows()) rows += static_cast<Eigen::Index>(r2.dim(a.target)) * r1.dim(a.source);
  Mat m = Mat::Zero(rows, n);
  Eigen::Index r0 = 0;
  for (std::size_t e = 0; e < q.arrow_count(); ++e) {
    const auto& a = q.arrows()[e];
    const Mat& f = r1.mat(e);
    const Mat& g = r2.mat(e);
    const Eigen::Index h = static_cast<Eigen::Index>(r2.dim(a.target)) * r1.dim(a.source);
    Mat lhs = kron(f.transpose(), Mat::Identity(r2.dim(a.target), r2.dim(a.target)));
    Mat rhs = kron(Mat::Identity(r1.dim(a.source), r1.dim(a.source)), g);
    m.block(r0, off[a.target], h, lhs.cols()) += lhs;
    m.block(r0, off[a.source], h, rhs.cols()) -= rhs;
    r0 += h;
  }
  return m;
}

inline int hom_dim(const qrep::Rep& r1, const qrep::Rep& r2, double threshold = 1e-9) {
  return kernel_dim(vec_system(r1, r2), threshold);
}

// dim {X : A X = X A}
inline int commutant_dim(const Mat& a, double threshold = 1e-9) {
  const Eigen::Index n = a.rows();
  Mat id = Mat::Identity(n, n);
  return kernel_dim(kron(id, a) - kron(a.transpose(), id), threshold);
}

// Jordan block with the given eigenvalue, ones on the subdiagonal.
inline Mat jordan(int k, std::complex<double> lambda = 0.0) {
  Mat j = Mat::Zero(k, k);
  for (int i = 0; i < k; ++i) j(i, i) = lambda;
  for (int i = 0; i + 1 < k; ++i) j(i + 1, i) = 1.0;
  return j;
}

}  // namespace oracle
