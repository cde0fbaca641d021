#include "qrep/cyclic.hpp"

#include <numeric>

#include "qrep/errors.hpp"

namespace qrep {

Quiver cycle_quiver(int n) {
  if (n < 1) throw PreconditionError("a cycle needs at least one vertex");
  std::vector<std::string> v;
  std::vector<ArrowSpec> a;
  for (int i = 1; i <= n; ++i) v.push_back(std::to_string(i));
  for (int i = 1; i <= n; ++i) a.push_back({"a" + std::to_string(i), std::to_string(i), std::to_string(i % n + 1)});
  return Quiver::create("C" + std::to_string(n), v, a);
}

namespace {

bool nonzero(const Mat& m) { return m.size() > 0 && m.cwiseAbs().maxCoeff() > default_tolerances().relative; }

}  // namespace

std::vector<std::vector<std::string>> hf_components(const Rep& r) {
  const CycleOrder c = cycle_order(r.quiver());
  const std::size_t n = c.vertices.size();
  // position p is joined to p+1 when the arrow between them is nonzero
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t p = 0; p < n; ++p)
    if (nonzero(r.mat(c.arrows[p]))) {
      std::size_t x = find(p), y = find((p + 1) % n);
      if (x != y) parent[std::max(x, y)] = std::min(x, y);
    }
  std::vector<std::vector<std::string>> out;
  std::vector<long> slot(n, -1);
  for (std::size_t p = 0; p < n; ++p) {
    if (r.dim(c.vertices[p]) == 0) continue;
    std::size_t root = find(p);
    if (slot[root] < 0) {
      slot[root] = static_cast<long>(out.size());
      out.emplace_back();
    }
    out[slot[root]].push_back(r.quiver().vertices()[c.vertices[p]]);
  }
  return out;
}

CnCriterion cn_transitive_criterion(const Rep& r) {
  if (r.is_zero()) throw PreconditionError("transitivity is defined for nonzero representations only");
  CnCriterion out;
  out.components = hf_components(r);
  out.dims_at_most_one = true;
  for (int d : r.dims()) out.dims_at_most_one &= d <= 1;
  out.connected = out.components.size() == 1;
  out.transitive = out.dims_at_most_one && out.connected;
  return out;
}

Rep reduce_zero_vertex(const Rep& r, std::string_view k) {
  const CycleOrder c = cycle_order(r.quiver());
  const int n = static_cast<int>(c.vertices.size());
  if (n < 2) throw PreconditionError("C_1 has no vertex to remove");
  const std::size_t kv = r.quiver().vertex_index(k);
  if (r.dim(kv) != 0) throw PreconditionError("H at vertex '" + std::string(k) + "' is not zero");
  int p = 0;  // 1-based cycle position of k
  while (c.vertices[p] != kv) ++p;
  ++p;
  auto h = [&](int i) { return r.dim(c.vertices[i - 1]); };
  auto a = [&](int i) -> const Mat& { return r.mat(c.arrows[i - 1]); };

  const int m = n - 1;
  std::vector<int> dims;
  for (int i = 1; i <= m; ++i) dims.push_back(i < p ? h(i) : h(i + 1));
  std::vector<Mat> mats;
  for (int i = 1; i <= m; ++i) {
    const int next = i % m + 1;
    if (i == p - 1 || (p == 1 && i == m))
      mats.push_back(Mat::Zero(dims[next - 1], dims[i - 1]));
    else if (i < p - 1)
      mats.push_back(a(i));
    else
      mats.push_back(a(i + 1));
  }
  return Rep::create(cycle_quiver(m), std::move(dims), std::move(mats));
}

}  // namespace qrep
