#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "qrep/linalg.hpp"
#include "qrep/quiver.hpp"

namespace qrep {

// Finite-dimensional representation: a space C^{dims[v]} per vertex and a
// dims[target] x dims[source] matrix per arrow. Zero-dimensional vertices are
// allowed.
class Rep {
 public:
  Rep() = default;
  static Rep create(Quiver q, std::vector<int> dims, std::vector<Mat> mats);

  const Quiver& quiver() const { return quiver_; }
  const std::vector<int>& dims() const { return dims_; }
  int dim(std::size_t v) const { return dims_[v]; }
  const std::vector<Mat>& mats() const { return mats_; }
  const Mat& mat(std::size_t a) const { return mats_[a]; }
  int total_dim() const;
  bool is_zero() const { return total_dim() == 0; }

 private:
  Quiver quiver_;
  std::vector<int> dims_;
  std::vector<Mat> mats_;
};

// Missing arrows in mats default to zero matrices.
Rep new_rep(const Quiver& q, const std::map<std::string, int>& dims,
            const std::map<std::string, Mat>& mats);

Rep zero_rep(const Quiver& q);

// Complex Gaussian arrow matrices.
Rep random_rep(const Quiver& q, const std::vector<int>& dims, std::mt19937_64& rng);

// A family of maps T_v : H_v -> K_v. residual is the largest arrow residual
// ||T_r f - g T_s|| / ((||f|| + ||g||) ||T||), with ||T|| over all vertices.
struct Hom {
  std::vector<Mat> mats;
  double residual = 0;
};

double hom_residual(const Rep& from, const Rep& to, const std::vector<Mat>& t);
Hom identity_hom(const Rep& r);
// (a o b)_v = a_v b_v
Hom compose(const Hom& a, const Hom& b);
// Flatten vertex blocks row-major in vertex order.
Vec flatten(const Hom& h);

Rep direct_sum(const Rep& a, const Rep& b);

// g_alpha = phi_r f_alpha phi_s^{-1}; every phi_v must be invertible.
Rep conjugate(const Rep& r, const std::vector<Mat>& phi);

struct Decomposition {
  Rep first;    // image of e
  Rep second;   // image of 1 - e
  Hom witness;  // isomorphism first (+) second -> r
};

// Split r along a nontrivial idempotent e in End(r).
Decomposition decompose_with(const Rep& r, const Hom& e);

}  // namespace qrep
