#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qrep {

struct Arrow {
  std::string id;
  std::size_t source;
  std::size_t target;
};

struct ArrowSpec {
  std::string id;
  std::string source;
  std::string target;
};

// Finite quiver (V, E, s, r). Multiple arrows and loops are allowed.
// Vertex and arrow order is the declaration order and is kept by every
// transformation.
class Quiver {
 public:
  Quiver() = default;
  static Quiver create(std::string name, std::vector<std::string> vertices,
                       const std::vector<ArrowSpec>& arrows);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t arrow_count() const { return arrows_.size(); }

  std::optional<std::size_t> find_vertex(std::string_view id) const;
  std::optional<std::size_t> find_arrow(std::string_view id) const;
  // Throws PreconditionError for unknown ids.
  std::size_t vertex_index(std::string_view id) const;
  std::size_t arrow_index(std::string_view id) const;

  // Same vertices and arrows in the same order; the name is ignored.
  bool same_structure(const Quiver& other) const;

 private:
  std::string name_;
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
};

enum class VertexKind { sink, source, internal, isolated };

std::vector<VertexKind> vertex_kinds(const Quiver& q);
const char* to_string(VertexKind k);
bool is_sink(const Quiver& q, std::size_t v);
bool is_source(const Quiver& q, std::size_t v);

bool is_oriented_cycle(const Quiver& q);

// Vertex order along an oriented cycle starting at vertex 0, and the arrow
// leaving each of them. Throws unless is_oriented_cycle(q).
struct CycleOrder {
  std::vector<std::size_t> vertices;
  std::vector<std::size_t> arrows;  // arrows[i] : vertices[i] -> vertices[i+1 mod n]
};
CycleOrder cycle_order(const Quiver& q);

enum class ReflectMode { sink, source };

// Reversed arrows keep their id with a trailing '~' toggled, so reversing
// twice restores the original ids.
std::string reversed_arrow_id(std::string_view id);

// sigma_v^+ (mode sink) or sigma_v^- (mode source): reverse every arrow at v.
Quiver reverse_at(const Quiver& q, std::string_view v, ReflectMode mode);
Quiver opposite(const Quiver& q);

enum class FamilyTag { A, D, E6, E7, E8, ATilde, DTilde, E6Tilde, E7Tilde, E8Tilde, Other };

struct GraphFamily {
  FamilyTag tag = FamilyTag::Other;
  int n = 0;  // A_n, D_n, A~_n, D~_n; unused for the E families
  bool oriented_cycle = false;
};

// Underlying-graph classification. Throws PreconditionError for an empty or
// disconnected quiver.
GraphFamily graph_family(const Quiver& q);
std::string to_string(const GraphFamily& f);

}  // namespace qrep
