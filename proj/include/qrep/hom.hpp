#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qrep/rep.hpp"

namespace qrep {

struct HomBasis {
  std::vector<Hom> basis;  // orthonormal after flattening
  int dim = 0;
  double tol_used = 0;      // SVD threshold of the system that was solved
  double max_residual = 0;  // worst relative arrow residual over the basis
  bool reduced = false;     // true when injective arrows were eliminated first
  int unknowns = 0;         // size of the unreduced system
};

enum class Reduction { automatic, never, always };

struct HomOptions {
  Reduction reduction = Reduction::automatic;
  int reduce_above = 256;  // unknown count that triggers automatic reduction
};

// Orthonormal basis of Hom(r1, r2). Unknowns are the entries of every T_v,
// vertices in quiver order, each block row-major.
HomBasis hom_basis(const Rep& r1, const Rep& r2, const HomOptions& opt = {});
HomBasis end_basis(const Rep& r, const HomOptions& opt = {});

// The unreduced constraint matrix, one row per arrow entry (T_r f - g T_s)[i][j].
Mat hom_constraint_matrix(const Rep& r1, const Rep& r2);

struct IdempotentSearch {
  int trials_used = 0;
  int candidates_tried = 0;
  int ill_conditioned = 0;  // candidates rejected for projector norm
  double best_gap = 0;      // largest relative eigenvalue gap seen
};

// Monte-Carlo search for an idempotent e in End(r) with e != 0, 1. Every
// returned e has been checked for idempotence and End membership.
std::optional<Hom> find_nontrivial_idempotent(const Rep& r, const HomBasis& end, std::uint64_t seed,
                                              int trials = 8, IdempotentSearch* info = nullptr);

enum class Decomposability { indecomposable, decomposable, zero };
const char* to_string(Decomposability d);

struct IndecomposabilityVerdict {
  Decomposability kind = Decomposability::zero;
  int end_dim = 0;
  std::optional<Hom> witness;
  IdempotentSearch search;
};

IndecomposabilityVerdict is_indecomposable(const Rep& r, std::uint64_t seed = 0, int trials = 8);

// dim End(r) == 1. Throws PreconditionError for the zero representation.
bool is_transitive(const Rep& r);

struct StrongIrreducibility {
  bool strongly_irreducible = false;
  int commutant_dim = 0;
  std::optional<Mat> witness;  // nontrivial idempotent commuting with a
};

// No nontrivial idempotent commutes with a.
StrongIrreducibility is_strongly_irreducible(const Mat& a, std::uint64_t seed = 0, int trials = 8);

// An isomorphism r1 -> r2 found by sampling Hom(r1, r2), or nothing.
std::optional<Hom> find_isomorphism(const Rep& r1, const Rep& r2, std::uint64_t seed = 0, int trials = 8);

}  // namespace qrep
