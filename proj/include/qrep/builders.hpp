#pragma once

#include <string>
#include <vector>

#include "qrep/rep.hpp"

namespace qrep {

// A representation given by one subspace of a common ambient space per
// vertex; every arrow must be an inclusion between its endpoint subspaces.
struct SubspaceRepSpec {
  int ambient = 0;
  Quiver quiver;
  std::vector<Mat> injections;  // per vertex, ambient x dim, orthonormal columns
};

// Arrow matrices are the coordinate matrices J_target^+ J_source. Throws
// PreconditionError when a source subspace is not inside its target.
Rep subspace_inclusion_rep(const SubspaceRepSpec& spec);

enum class ExtendedFamily { DTilde, E6Tilde, E7Tilde, E8Tilde };
const char* to_string(ExtendedFamily f);

// Subspace families on K^m, K = C^k, with the operator s inserted as a
// graph subspace. Vertex names: D~_n uses "1".."n+1"; the E~ families use
// "0", "1", "2", ..., "1'", "2'", ..., "1''", "2''". n is used by D~_n only.
SubspaceRepSpec extended_dynkin_spec(ExtendedFamily family, const Mat& s, int n = 4);
Rep build_extended_dynkin(ExtendedFamily family, const Mat& s, int n = 4);

struct AnTildeRep {
  Rep rep;
  std::string alpha;  // clockwise arrow carrying a
  std::string beta;   // counter-clockwise arrow carrying b
};

// A~_{n-1} on vertices "1".."n" with edge e_i joining i and i+1 (mod n),
// pointing i -> i+1 when clockwise[i-1] is set. Identity everywhere except
// the first clockwise arrow (a) and the first counter-clockwise arrow (b).
AnTildeRep build_an_tilde_noncyclic(const std::vector<bool>& clockwise, const Mat& a, const Mat& b);

}  // namespace qrep
