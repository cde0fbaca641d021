#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qrep/hom.hpp"
#include "qrep/linalg.hpp"
#include "qrep/sequence.hpp"

namespace qrep {

// Finite fixtures. Matrices act on column vectors, so shift(e_i) = e_{i+1}.
Mat unilateral_shift(int n);
// Window of the bilateral shift with the wrap-around entry dropped.
Mat bilateral_shift(int n);
Mat diag_fixture(const SequenceSpec& s, int n);
// lambda on the diagonal, ones on the subdiagonal.
Mat jordan(int n, cplx lambda = 0.0);
// theta_{x,y}(z) = (z|y) x, i.e. x y^*.
Mat rank_one(const Vec& x, const Vec& y);

// "shift:N", "bilateral-shift:N", "jordan:N[:lambda]", "diag:N:<seq>".
Mat make_fixture(std::string_view spec);

// Bilateral windows are [-floor(N/2), N-1-floor(N/2)].
long window_start(int n);

struct OperatorPair {
  Mat a, b;
  std::string provenance;
};

// A = S D_lambda + theta_{e1, conj(w)}, B = S, on C^N.
OperatorPair kron_pair_shift_rank_one(const SequenceSpec& lambda, const SequenceSpec& w, int n);
// A = D_a, B = U D_b on the window of size N.
OperatorPair kron_pair_bilateral(const SequenceSpec& a, const SequenceSpec& b, int n);

// Whether the quotient BA^{-1} of the shift/rank-one pair is densely
// defined: lambda_k != 0 for every k and (w_k / lambda_k) is not in l^2.
struct DensityVerdict {
  bool dense = false;
  bool lambda_nonzero = false;
  bool ratio_in_l2 = false;
  std::string method;  // "closed-form"
  std::string reason;
};
DensityVerdict density_criterion(const SequenceSpec& lambda, const SequenceSpec& w);

// log M_k(m, n) = sum_{j<k} log|w_{m+j}| - log|w_{n+j}| with w = b / a.
double log_mk(const SequenceSpec& a, const SequenceSpec& b, long m, long n, int k);

struct SubspaceSystem {
  int ambient = 0;
  std::vector<Mat> subspaces;  // injections with orthonormal columns
};

// E1 = K(+)0, E2 = 0(+)K, E3 = {(Ax, Bx)}, E4 = {(x, x)} in K(+)K.
SubspaceSystem four_subspace_from_pair(const OperatorPair& p);
// S_A: the pair (I, A).
SubspaceSystem operator_system(const Mat& a);
// Truncated weighted-shift graph system with w_n = exp((-1)^n n!) for n > 0
// and 1 otherwise, on the window of size N.
SubspaceSystem hrr_system(int n);

struct SubspaceEnd {
  std::vector<Mat> basis;  // orthonormal in the Frobenius inner product
  int dim = 0;
  double tol_used = 0;
  double max_residual = 0;
};

// Subspace quiver representation: vertex "0" carries the ambient space,
// vertex "i" the i-th subspace, arrow "ii" : i -> 0 its inclusion.
Rep subspace_quiver_rep(const SubspaceSystem& s);

// {T : (1 - P_i) T P_i = 0 for every i}.
SubspaceEnd subspace_system_end(const SubspaceSystem& s);
// Same algebra computed as End of the subspace quiver representation; the
// basis holds the ambient blocks.
SubspaceEnd subspace_system_end_via_quiver(const SubspaceSystem& s);

struct PhiReport {
  int end_rep_dim = 0;
  int end_system_dim = 0;
  int ker_dim = 0;
  int expected_ker_dim = 0;  // N * dim(ker A cap ker B)
  bool injective = false;
  bool surjective = false;
  double image_residual = 0;
};

// Phi(S, T) = T (+) T from End of the Kronecker representation (A, B) into
// End of its four-subspace system.
PhiReport phi_map(const Mat& a, const Mat& b);

}  // namespace qrep
