#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace qrep {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

struct Tolerances {
  // rank / invertibility / fullness decisions, relative to the largest singular value
  double relative = 1e-9;
  // nullspace threshold factor: tau = sigma_max * max(rows, cols) * nullspace_eps
  double nullspace_eps = 0x1p-40;
  // minimal relative eigenvalue gap for spectral clustering
  double cluster_gap = 1e-6;
  // residual bound for verified idempotents and End membership
  double residual = 1e-8;
  // projectors with ||P||_F above this times sqrt(dim) are treated as ill-conditioned
  double projector_norm_max = 1e6;
  // elimination in the hom solver only goes through arrows with cond(g) below this
  double elimination_cond_max = 1e4;
};

// Process-wide defaults. Adjust once at startup, before any computation.
Tolerances& default_tolerances();

struct NullspaceResult {
  Mat basis;  // orthonormal columns
  double threshold = 0;
  int rank = 0;
};

// Kernel of m with the SVD threshold tau = sigma_max * max(rows, cols) * eps.
NullspaceResult nullspace(const Mat& m, double eps);

// Singular values, descending. Empty for empty input.
Eigen::VectorXd singular_values(const Mat& m);

int numerical_rank(const Mat& m, double rel_tol);

// Orthonormal bases with rank decided at rel_tol * sigma_max.
Mat range_basis(const Mat& m, double rel_tol);
Mat kernel_basis(const Mat& m, double rel_tol);

// Rotate each column so its largest-magnitude entry is real and positive.
void normalize_phases(Mat& cols);

// Orthonormalize a full-column-rank matrix by Householder QR, with R's diagonal
// made real positive (so the result equals Gram-Schmidt).
Mat orthonormalize(const Mat& m);

bool is_invertible(const Mat& m, double rel_tol);

Mat block_diag(const std::vector<Mat>& blocks);

// Entries with independent real and imaginary parts ~ N(0, 1/2).
Mat random_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng);

// Stream seed for trial t of a run seeded with seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t t);

}  // namespace qrep
