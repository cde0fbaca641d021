#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qrep/rep.hpp"

namespace qrep {

// Output of a reflection functor at a vertex v, with the data needed to
// transport homomorphisms.
struct ReflectionResult {
  Rep rep;
  std::size_t vertex = 0;
  ReflectMode mode = ReflectMode::sink;
  // Orthonormal basis of the new space at v inside the direct sum of the
  // neighbouring spaces (sink: ker h_v; source: ker h_v^*).
  Mat kernel;
  std::vector<std::size_t> arrows;      // arrows at v, declaration order
  std::vector<std::size_t> far_vertex;  // the other endpoint of each
  std::vector<Eigen::Index> offset;     // block offset of each in the direct sum
};

// Phi^+ at a sink.
ReflectionResult reflect_sink(const Rep& r, std::string_view v);
// Phi^- at a source.
ReflectionResult reflect_source(const Rep& r, std::string_view v);
ReflectionResult reflect(const Rep& r, std::string_view v, ReflectMode mode);

// Phi(T) for T : from.input -> to.input, both reflected at the same vertex.
// S_v = K_to^* diag(T_far) K_from, S_u = T_u elsewhere.
Hom hom_transport(const ReflectionResult& from, const ReflectionResult& to, const Hom& t);

// Sink: the incoming maps jointly span H_v. Source: the adjoints of the
// outgoing maps jointly span H_v. Throws if v is not of the matching kind.
bool is_full_at(const Rep& r, std::string_view v, ReflectMode mode);

// Phi^*: adjoint matrices on the opposite quiver.
Rep dual(const Rep& r);

struct EndIsoReport {
  std::string hypothesis;  // "full at sink" or "co-full at source"
  bool hypothesis_holds = false;
  int dim_in = 0;
  int dim_out = 0;
  int transported_rank = 0;
  double membership_residual = 0;
  double multiplicativity_residual = 0;
  double unit_residual = 0;
  bool isomorphic = false;
};

// Checks that Phi restricts to an algebra isomorphism End(r) -> End(Phi r).
// A failed hypothesis is reported, not thrown; a vertex of the wrong kind throws.
EndIsoReport verify_end_isomorphism(const Rep& r, std::string_view v, ReflectMode mode);

// A_n on vertices "1".."n"; edge k joins k and k+1 and points right when
// rightward[k-1] is set. Arrow ids are "e1".."e(n-1)".
Quiver an_quiver(int n, const std::vector<bool>& rightward);

// Vertices v_1, v_2, ... (1-based) such that applying sigma^- at v_1, then
// v_2, ... to the all-rightward A_n gives the target orientation. Each v_k is
// a source when it is used and v_k != n.
std::vector<int> orientation_sequence_an(int n, const std::vector<bool>& rightward);

}  // namespace qrep
