#include "qrep/quiver.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

#include "qrep/errors.hpp"

namespace qrep {

Quiver Quiver::create(std::string name, std::vector<std::string> vertices,
                      const std::vector<ArrowSpec>& arrows) {
  Quiver q;
  q.name_ = std::move(name);
  std::unordered_set<std::string> seen;
  for (const std::string& v : vertices) {
    if (v.empty()) throw ValidationError("empty vertex id");
    if (!seen.insert(v).second) throw ValidationError("duplicate vertex id '" + v + "'");
  }
  q.vertices_ = std::move(vertices);
  seen.clear();
  for (const ArrowSpec& a : arrows) {
    if (a.id.empty()) throw ValidationError("empty arrow id");
    if (!seen.insert(a.id).second) throw ValidationError("duplicate arrow id '" + a.id + "'");
    auto s = q.find_vertex(a.source);
    auto t = q.find_vertex(a.target);
    if (!s) throw ValidationError("arrow '" + a.id + "' has unknown source '" + a.source + "'");
    if (!t) throw ValidationError("arrow '" + a.id + "' has unknown target '" + a.target + "'");
    q.arrows_.push_back({a.id, *s, *t});
  }
  return q;
}

std::optional<std::size_t> Quiver::find_vertex(std::string_view id) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i] == id) return i;
  return std::nullopt;
}

std::optional<std::size_t> Quiver::find_arrow(std::string_view id) const {
  for (std::size_t i = 0; i < arrows_.size(); ++i)
    if (arrows_[i].id == id) return i;
  return std::nullopt;
}

std::size_t Quiver::vertex_index(std::string_view id) const {
  auto v = find_vertex(id);
  if (!v) throw PreconditionError("unknown vertex '" + std::string(id) + "'");
  return *v;
}

std::size_t Quiver::arrow_index(std::string_view id) const {
  auto a = find_arrow(id);
  if (!a) throw PreconditionError("unknown arrow '" + std::string(id) + "'");
  return *a;
}

bool Quiver::same_structure(const Quiver& o) const {
  if (vertices_ != o.vertices_ || arrows_.size() != o.arrows_.size()) return false;
  for (std::size_t i = 0; i < arrows_.size(); ++i) {
    const Arrow& a = arrows_[i];
    const Arrow& b = o.arrows_[i];
    if (a.id != b.id || a.source != b.source || a.target != b.target) return false;
  }
  return true;
}

bool is_sink(const Quiver& q, std::size_t v) {
  for (const Arrow& a : q.arrows())
    if (a.source == v) return false;
  return true;
}

bool is_source(const Quiver& q, std::size_t v) {
  for (const Arrow& a : q.arrows())
    if (a.target == v) return false;
  return true;
}

std::vector<VertexKind> vertex_kinds(const Quiver& q) {
  std::vector<VertexKind> out;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    bool snk = is_sink(q, v), src = is_source(q, v);
    if (snk && src)
      out.push_back(VertexKind::isolated);
    else if (snk)
      out.push_back(VertexKind::sink);
    else if (src)
      out.push_back(VertexKind::source);
    else
      out.push_back(VertexKind::internal);
  }
  return out;
}

const char* to_string(VertexKind k) {
  switch (k) {
    case VertexKind::sink: return "sink";
    case VertexKind::source: return "source";
    case VertexKind::internal: return "internal";
    case VertexKind::isolated: return "isolated";
  }
  return "?";
}

namespace {

bool connected(const Quiver& q) {
  const std::size_t n = q.vertex_count();
  if (n == 0) return false;
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t comps = n;
  for (const Arrow& a : q.arrows()) {
    std::size_t x = find(a.source), y = find(a.target);
    if (x != y) {
      parent[x] = y;
      --comps;
    }
  }
  return comps == 1;
}

}  // namespace

bool is_oriented_cycle(const Quiver& q) {
  const std::size_t n = q.vertex_count();
  if (n == 0 || q.arrow_count() != n) return false;
  std::vector<int> out(n, 0), in(n, 0);
  for (const Arrow& a : q.arrows()) {
    ++out[a.source];
    ++in[a.target];
  }
  for (std::size_t v = 0; v < n; ++v)
    if (out[v] != 1 || in[v] != 1) return false;
  return connected(q);
}

CycleOrder cycle_order(const Quiver& q) {
  if (!is_oriented_cycle(q)) throw PreconditionError("quiver is not an oriented cycle");
  CycleOrder c;
  std::size_t v = 0;
  for (std::size_t i = 0; i < q.vertex_count(); ++i) {
    c.vertices.push_back(v);
    for (std::size_t a = 0; a < q.arrow_count(); ++a)
      if (q.arrows()[a].source == v) {
        c.arrows.push_back(a);
        v = q.arrows()[a].target;
        break;
      }
  }
  return c;
}

std::string reversed_arrow_id(std::string_view id) {
  if (!id.empty() && id.back() == '~') return std::string(id.substr(0, id.size() - 1));
  return std::string(id) + "~";
}

namespace {

Quiver rebuild(const Quiver& q, std::string name, const std::vector<bool>& flip) {
  std::vector<ArrowSpec> specs;
  for (std::size_t i = 0; i < q.arrow_count(); ++i) {
    const Arrow& a = q.arrows()[i];
    const std::string& s = q.vertices()[a.source];
    const std::string& t = q.vertices()[a.target];
    if (flip[i])
      specs.push_back({reversed_arrow_id(a.id), t, s});
    else
      specs.push_back({a.id, s, t});
  }
  return Quiver::create(std::move(name), q.vertices(), specs);
}

}  // namespace

Quiver reverse_at(const Quiver& q, std::string_view vid, ReflectMode mode) {
  const std::size_t v = q.vertex_index(vid);
  if (mode == ReflectMode::sink && !is_sink(q, v))
    throw PreconditionError("vertex '" + std::string(vid) + "' is not a sink");
  if (mode == ReflectMode::source && !is_source(q, v))
    throw PreconditionError("vertex '" + std::string(vid) + "' is not a source");
  std::vector<bool> flip(q.arrow_count());
  for (std::size_t i = 0; i < q.arrow_count(); ++i)
    flip[i] = q.arrows()[i].source == v || q.arrows()[i].target == v;
  return rebuild(q, q.name(), flip);
}

Quiver opposite(const Quiver& q) {
  return rebuild(q, q.name(), std::vector<bool>(q.arrow_count(), true));
}

namespace {

GraphFamily classify_tree(const Quiver& q, const std::vector<std::vector<std::size_t>>& adj) {
  const std::size_t n = q.vertex_count();
  GraphFamily f;
  std::vector<std::size_t> branch;
  std::size_t maxdeg = 0;
  for (std::size_t v = 0; v < n; ++v) {
    maxdeg = std::max(maxdeg, adj[v].size());
    if (adj[v].size() >= 3) branch.push_back(v);
  }
  if (maxdeg <= 2) {
    f.tag = FamilyTag::A;
    f.n = static_cast<int>(n);
    return f;
  }
  if (branch.size() == 1 && adj[branch[0]].size() == 4 && n == 5) {
    f.tag = FamilyTag::DTilde;
    f.n = 4;
    return f;
  }
  if (branch.size() == 1 && adj[branch[0]].size() == 3) {
    std::vector<int> arms;
    for (std::size_t start : adj[branch[0]]) {
      int len = 1;
      std::size_t prev = branch[0], cur = start;
      while (adj[cur].size() == 2) {
        std::size_t next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
        prev = cur;
        cur = next;
        ++len;
      }
      arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    const int p = arms[0], r1 = arms[1], r2 = arms[2];
    if (p == 1 && r1 == 1) {
      f.tag = FamilyTag::D;
      f.n = static_cast<int>(n);
    } else if (p == 1 && r1 == 2 && r2 == 2) {
      f.tag = FamilyTag::E6;
    } else if (p == 1 && r1 == 2 && r2 == 3) {
      f.tag = FamilyTag::E7;
    } else if (p == 1 && r1 == 2 && r2 == 4) {
      f.tag = FamilyTag::E8;
    } else if (p == 2 && r1 == 2 && r2 == 2) {
      f.tag = FamilyTag::E6Tilde;
    } else if (p == 1 && r1 == 3 && r2 == 3) {
      f.tag = FamilyTag::E7Tilde;
    } else if (p == 1 && r1 == 2 && r2 == 5) {
      f.tag = FamilyTag::E8Tilde;
    }
    return f;
  }
  if (branch.size() == 2 && maxdeg == 3) {
    for (std::size_t b : branch) {
      int leaves = 0;
      for (std::size_t u : adj[b])
        if (adj[u].size() == 1) ++leaves;
      if (leaves != 2) return f;
    }
    f.tag = FamilyTag::DTilde;
    f.n = static_cast<int>(n) - 1;
  }
  return f;
}

}  // namespace

GraphFamily graph_family(const Quiver& q) {
  if (q.vertex_count() == 0) throw PreconditionError("empty quiver");
  if (!connected(q)) throw PreconditionError("quiver is not connected");
  const std::size_t n = q.vertex_count();
  std::vector<std::vector<std::size_t>> adj(n);
  bool loop = false;
  for (const Arrow& a : q.arrows()) {
    adj[a.source].push_back(a.target);
    adj[a.target].push_back(a.source);
    if (a.source == a.target) loop = true;
  }
  GraphFamily f;
  if (q.arrow_count() + 1 == n && !loop) return classify_tree(q, adj);
  if (q.arrow_count() == n) {
    bool all2 = std::all_of(adj.begin(), adj.end(), [](const auto& x) { return x.size() == 2; });
    if (all2) {
      f.tag = FamilyTag::ATilde;
      f.n = static_cast<int>(n) - 1;
      f.oriented_cycle = is_oriented_cycle(q);
    }
  }
  return f;
}

std::string to_string(const GraphFamily& f) {
  const std::string n = std::to_string(f.n);
  switch (f.tag) {
    case FamilyTag::A: return "A_" + n;
    case FamilyTag::D: return "D_" + n;
    case FamilyTag::E6: return "E_6";
    case FamilyTag::E7: return "E_7";
    case FamilyTag::E8: return "E_8";
    case FamilyTag::ATilde: return "A~_" + n;
    case FamilyTag::DTilde: return "D~_" + n;
    case FamilyTag::E6Tilde: return "E~_6";
    case FamilyTag::E7Tilde: return "E~_7";
    case FamilyTag::E8Tilde: return "E~_8";
    case FamilyTag::Other: return "other";
  }
  return "other";
}

}  // namespace qrep
