#include "kiss12/hypermap.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace kiss12 {

namespace {

void require_permutation(const Perm& p, int n, const char* name) {
  if (static_cast<int>(p.size()) != n)
    throw NonPermutation(std::string(name) + ": wrong length");
  std::vector<char> seen(n, 0);
  for (int v : p) {
    if (v < 0 || v >= n || seen[v])
      throw NonPermutation(std::string(name) + ": not a bijection of the dart range");
    seen[v] = 1;
  }
}

Perm inverse(const Perm& p) {
  Perm q(p.size());
  for (int i = 0; i < static_cast<int>(p.size()); ++i) q[p[i]] = i;
  return q;
}

}  // namespace

Hypermap::Hypermap(int dart_count, Perm e, Perm n)
    : dart_count_(dart_count), e_(std::move(e)), n_(std::move(n)) {
  if (dart_count_ < 0) throw NonPermutation("negative dart count");
  require_permutation(e_, dart_count_, "e");
  require_permutation(n_, dart_count_, "n");
  Perm einv = inverse(e_);
  Perm ninv = inverse(n_);
  f_.resize(dart_count_);
  for (int x = 0; x < dart_count_; ++x) f_[x] = ninv[einv[x]];
}

OrbitPartition orbits(const Hypermap& h, OrbitKind kind) {
  const Perm& p = kind == OrbitKind::edge   ? h.e_perm()
                  : kind == OrbitKind::node ? h.n_perm()
                                            : h.f_perm();
  OrbitPartition part;
  part.kind = kind;
  part.class_of.assign(h.dart_count(), -1);
  for (int x = 0; x < h.dart_count(); ++x) {
    if (part.class_of[x] >= 0) continue;
    int id = part.count();
    std::vector<int> cyc;
    for (int y = x; part.class_of[y] < 0; y = p[y]) {
      part.class_of[y] = id;
      cyc.push_back(y);
    }
    part.classes.push_back(std::move(cyc));
  }
  return part;
}

namespace {

int component_count(const Hypermap& h) {
  int n = h.dart_count();
  std::vector<int> comp(n, -1);
  int count = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{s};
    comp[s] = count;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : {h.e(x), h.n(x), h.f(x)}) {
        if (comp[y] < 0) {
          comp[y] = count;
          stack.push_back(y);
        }
      }
    }
    ++count;
  }
  return count;
}

// Underlying node graph: one vertex per node orbit, one adjacency per edge
// orbit meeting two distinct nodes.
struct NodeGraph {
  int n = 0;
  std::vector<std::set<int>> adj;
};

NodeGraph node_graph(const Hypermap& h) {
  OrbitPartition nodes = orbits(h, OrbitKind::node);
  OrbitPartition edges = orbits(h, OrbitKind::edge);
  NodeGraph g;
  g.n = nodes.count();
  g.adj.resize(g.n);
  for (const auto& cyc : edges.classes) {
    std::set<int> met;
    for (int x : cyc) met.insert(nodes.class_of[x]);
    if (met.size() == 2) {
      auto it = met.begin();
      int a = *it++;
      int b = *it;
      g.adj[a].insert(b);
      g.adj[b].insert(a);
    }
  }
  return g;
}

bool graph_connected_without(const NodeGraph& g, int removed) {
  int start = -1;
  for (int i = 0; i < g.n; ++i)
    if (i != removed) { start = i; break; }
  if (start < 0) return true;
  std::vector<char> seen(g.n, 0);
  std::vector<int> stack{start};
  seen[start] = 1;
  int visited = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : g.adj[v]) {
      if (w == removed || seen[w]) continue;
      seen[w] = 1;
      ++visited;
      stack.push_back(w);
    }
  }
  int expected = g.n - (removed >= 0 && removed < g.n ? 1 : 0);
  return visited == expected;
}

bool has_articulation(const NodeGraph& g) {
  // Node counts are tiny (<= a few dozen); the direct removal test is plenty.
  for (int v = 0; v < g.n; ++v)
    if (!graph_connected_without(g, v)) return true;
  return false;
}

}  // namespace

StructureReport check_structure(const Hypermap& h) {
  StructureReport r;
  int n = h.dart_count();

  r.plain = true;
  r.nondegenerate = true;
  for (int x = 0; x < n; ++x) {
    if (h.e(h.e(x)) != x) r.plain = false;
    if (h.e(x) == x) r.nondegenerate = false;
  }

  r.connected = component_count(h) <= 1;

  OrbitPartition nodes = orbits(h, OrbitKind::node);
  OrbitPartition edges = orbits(h, OrbitKind::edge);
  OrbitPartition faces = orbits(h, OrbitKind::face);
  r.planar = r.connected && nodes.count() + edges.count() + faces.count() == n + 2;

  r.no_loops = true;
  for (int x = 0; x < n; ++x) {
    if (h.e(x) != x && nodes.class_of[x] == nodes.class_of[h.e(x)]) r.no_loops = false;
  }

  r.no_double_join = true;
  std::set<std::pair<int, int>> joins;
  for (const auto& cyc : edges.classes) {
    std::set<int> met;
    for (int x : cyc) met.insert(nodes.class_of[x]);
    if (met.size() == 2) {
      auto it = met.begin();
      int a = *it++;
      int b = *it;
      if (!joins.insert({a, b}).second) r.no_double_join = false;
    }
  }

  NodeGraph g = node_graph(h);
  r.biconnected = r.connected && !has_articulation(g);
  return r;
}

Hypermap opposite(const Hypermap& h) {
  for (int x = 0; x < h.dart_count(); ++x)
    if (h.e(h.e(x)) != x) throw NotPlain("opposite: edge map is not an involution");
  return Hypermap(h.dart_count(), h.e_perm(), inverse(h.n_perm()));
}

namespace {

std::vector<std::uint8_t> code_bytes_from(const Hypermap& h, int start) {
  int n = h.dart_count();
  std::vector<int> label(n, -1);
  std::vector<int> order;
  order.reserve(n);
  label[start] = 0;
  order.push_back(start);
  for (size_t i = 0; i < order.size(); ++i) {
    int x = order[i];
    for (int y : {h.n(x), h.e(x), h.f(x)}) {
      if (label[y] < 0) {
        label[y] = static_cast<int>(order.size());
        order.push_back(y);
      }
    }
  }
  std::vector<std::uint8_t> bytes;
  bytes.reserve(2 + 4 * n);
  auto put16 = [&bytes](int v) {
    bytes.push_back(static_cast<std::uint8_t>(v & 0xff));
    bytes.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
  };
  put16(n);
  for (int i = 0; i < n; ++i) {
    put16(label[h.e(order[i])]);
    put16(label[h.n(order[i])]);
  }
  return bytes;
}

std::vector<std::uint8_t> min_code_bytes(const Hypermap& h) {
  int n = h.dart_count();
  if (n == 0) return {0, 0};
  std::vector<std::uint8_t> best = code_bytes_from(h, 0);
  for (int s = 1; s < n; ++s) {
    std::vector<std::uint8_t> cand = code_bytes_from(h, s);
    if (cand < best) best = std::move(cand);
  }
  return best;
}

}  // namespace

CanonicalCode canonical_code(const Hypermap& h, bool fold_mirror) {
  if (component_count(h) > 1)
    throw Disconnected("canonical_code: hypermap is not connected");
  CanonicalCode code;
  code.mirror_folded = fold_mirror;
  code.bytes = min_code_bytes(h);
  if (fold_mirror) {
    std::vector<std::uint8_t> mirror = min_code_bytes(opposite(h));
    if (mirror < code.bytes) code.bytes = std::move(mirror);
  }
  return code;
}

Hypermap hypermap_from_code(const CanonicalCode& code) {
  const auto& b = code.bytes;
  if (b.size() < 2) throw HypermapError("hypermap_from_code: truncated code");
  auto get16 = [&b](size_t i) { return int(b[i]) | (int(b[i + 1]) << 8); };
  int n = get16(0);
  if (static_cast<int>(b.size()) != 2 + 4 * n)
    throw HypermapError("hypermap_from_code: length mismatch");
  Perm e(n), nn(n);
  for (int i = 0; i < n; ++i) {
    e[i] = get16(2 + 4 * i);
    nn[i] = get16(2 + 4 * i + 2);
  }
  return Hypermap(n, std::move(e), std::move(nn));
}

Hypermap dihedral(int k) {
  if (k < 1) throw HypermapError("dihedral: k must be positive");
  int n = 2 * k;
  Perm e(n), nn(n);
  for (int i = 0; i < k; ++i) {
    e[i] = k + (i + 1) % k;
    e[k + i] = (i - 1 + k) % k;
    nn[i] = k + i;
    nn[k + i] = i;
  }
  return Hypermap(n, std::move(e), std::move(nn));
}

std::optional<int> is_dihedral(const Hypermap& h) {
  int n = h.dart_count();
  if (n == 0 || n % 2 != 0) return std::nullopt;
  if (component_count(h) > 1) return std::nullopt;
  int k = n / 2;
  if (canonical_code(h, false) == canonical_code(dihedral(k), false)) return k;
  return std::nullopt;
}

std::string code_hex(const CanonicalCode& code) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  s.reserve(code.bytes.size() * 2);
  for (std::uint8_t b : code.bytes) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 0xf]);
  }
  return s;
}

}  // namespace kiss12
