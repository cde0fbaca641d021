#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qrep/rep.hpp"

namespace qrep {

// C_n: vertices "1".."n", arrows a_i : i -> i+1 (a_n : n -> 1).
Quiver cycle_quiver(int n);

// Connected components of the support {v : H_v != 0} under the relation
// generated by nonzero arrows, vertices in cycle order. Needs an oriented
// cycle. A matrix counts as zero when every entry is below the tolerance.
std::vector<std::vector<std::string>> hf_components(const Rep& r);

struct CnCriterion {
  bool dims_at_most_one = false;
  bool connected = false;
  bool transitive = false;  // dims_at_most_one && connected
  std::vector<std::vector<std::string>> components;
};

// Closed-form transitivity test on an oriented cycle. The zero
// representation is rejected.
CnCriterion cn_transitive_criterion(const Rep& r);

// Removes a vertex with H_k = 0 from C_n, giving a representation of C_{n-1}
// on cycle_quiver(n-1) with the same endomorphisms. Vertex indices follow the
// cycle order starting at the first vertex of r.
Rep reduce_zero_vertex(const Rep& r, std::string_view k);

}  // namespace qrep
