#include "kiss12/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <set>
#include <thread>

#include "kiss12/geometry.hpp"
#include "kiss12/tame.hpp"

namespace kiss12 {

void SearchMetrics::add(const SearchMetrics& o) {
  expanded += o.expanded;
  children += o.children;
  pruned_weight += o.pruned_weight;
  pruned_type += o.pruned_type;
  pruned_geo += o.pruned_geo;
  pruned_walk += o.pruned_walk;
  completed += o.completed;
  tame += o.tame;
  duplicates += o.duplicates;
}

namespace {

int size_class(size_t k) { return k == 3 ? 0 : k == 4 ? 1 : 2; }

bool adjacent(const PartialHypermap& p, int a, int b) {
  return (p.adj[a] >> b) & 1;
}

void add_edge(PartialHypermap& p, int a, int b) {
  p.adj[a] |= static_cast<std::uint16_t>(1u << b);
  p.adj[b] |= static_cast<std::uint16_t>(1u << a);
  ++p.degree[a];
  ++p.degree[b];
}

void add_vertex(PartialHypermap& p) {
  ++p.vertex_count;
  p.degree.push_back(0);
  p.adj.push_back(0);
  p.type_at.push_back({0, 0, 0});
}

// The three node types (p,q,0) whose b-table entry stays below tgt.
bool pq_weightable(int tri, int quad) {
  return (tri == 0 && quad == 3) || (tri == 1 && quad == 3) ||
         (tri == 2 && quad == 2);
}

void register_face(PartialHypermap& p, const std::vector<int>& face,
                   const BoundTables& tb) {
  for (int v : face) ++p.type_at[v][size_class(face.size())];
  p.weight_lb += tb.d1(static_cast<int>(face.size()));
  p.final_faces.push_back(face);
}

bool on_any_walk(const PartialHypermap& p, int v) {
  for (const auto& w : p.open_walks)
    for (int x : w)
      if (x == v) return true;
  return false;
}

// A walk none of whose vertices can take a new edge must itself be a final
// face; otherwise the region can never be tiled.
bool walk_closable_check(const PartialHypermap& p, const EnumConfig& cfg,
                         const std::vector<int>& walk) {
  bool saturated = true;
  for (int v : walk)
    if (p.degree[v] < cfg.max_degree) {
      saturated = false;
      break;
    }
  if (!saturated) return true;
  int m = static_cast<int>(walk.size());
  int cap = std::min(cfg.max_face, p.seed_size);
  if (m < cfg.min_face || m > cap) return false;
  std::set<int> distinct(walk.begin(), walk.end());
  return static_cast<int>(distinct.size()) == m;
}

struct Move {
  bool walk;     // reuse the boundary dart to the next corner
  int next;      // corner position jumped to (bridge only)
  int new_cnt;   // new vertices on the bridge
};

}  // namespace

PartialHypermap seed_partial(int face_size) {
  if (face_size < 3) throw EnumerateError("seed face must have size >= 3");
  PartialHypermap p;
  p.seed_size = face_size;
  for (int i = 0; i < face_size; ++i) add_vertex(p);
  std::vector<int> face;
  for (int i = 0; i < face_size; ++i) {
    face.push_back(i);
    add_edge(p, i, (i + 1) % face_size);
  }
  register_face(p, face, tables());
  std::vector<int> walk;
  walk.push_back(0);
  for (int i = face_size - 1; i >= 1; --i) walk.push_back(i);
  p.open_walks.push_back(std::move(walk));
  return p;
}

namespace {

// Emits the child obtained by closing the face described by `moves` over the
// rotated walk W; returns false when a prune fires.
bool materialize(const PartialHypermap& parent, const EnumConfig& cfg,
                 const std::vector<int>& W, size_t walk_index,
                 const std::vector<Move>& moves, SearchMetrics& metrics,
                 std::vector<PartialHypermap>& out) {
  const BoundTables& tb = tables();
  PartialHypermap child = parent;
  child.open_walks.erase(child.open_walks.begin() + walk_index);
  int m = static_cast<int>(W.size());

  std::vector<int> fverts = {W[0], W[1]};
  int cur = 1;
  for (const Move& mv : moves) {
    if (mv.walk) {
      ++cur;
      if (cur < m) fverts.push_back(W[cur]);
    } else {
      std::vector<int> bridge_new;
      for (int i = 0; i < mv.new_cnt; ++i) {
        bridge_new.push_back(child.vertex_count);
        add_vertex(child);
        fverts.push_back(bridge_new.back());
      }
      int from = cur;
      cur = mv.next;
      int tv = W[cur % m];
      if (cur < m) fverts.push_back(tv);
      // New edges along the bridge.
      int prev = W[from];
      for (int nv : bridge_new) {
        add_edge(child, prev, nv);
        prev = nv;
      }
      add_edge(child, prev, tv);
      // The region cut off between the two corners: boundary darts
      // d_from..d_{next-1} followed by the reversed bridge.
      std::vector<int> cut;
      for (int i = from; i < mv.next; ++i) cut.push_back(W[i]);
      cut.push_back(W[mv.next % m]);
      for (auto it = bridge_new.rbegin(); it != bridge_new.rend(); ++it)
        cut.push_back(*it);
      if (cut.size() < 3) throw EnumerateError("internal: short cut walk");
      child.open_walks.push_back(std::move(cut));
    }
  }

  register_face(child, fverts, tb);

  if (cfg.weights && child.weight_lb >= tb.tgt - 1e-12) {
    ++metrics.pruned_weight;
    return false;
  }

  // Vertices that just left the boundary are finalized: test their types.
  for (int v : fverts) {
    if (on_any_walk(child, v)) continue;
    auto [tri, quad, big] = child.type_at[v];
    if (cfg.weights && big == 0 && !pq_weightable(tri, quad)) {
      ++metrics.pruned_type;
      return false;
    }
    if (cfg.geometric_prunes &&
        !type_admissible(NodeType{tri, quad, big})) {
      ++metrics.pruned_geo;
      return false;
    }
  }

  for (const auto& w : child.open_walks) {
    if (!walk_closable_check(child, cfg, w)) {
      ++metrics.pruned_walk;
      return false;
    }
  }

  out.push_back(std::move(child));
  ++metrics.children;
  return true;
}

}  // namespace

std::vector<PartialHypermap> extend(const PartialHypermap& p, const EnumConfig& cfg,
                                    SearchMetrics* metrics) {
  std::vector<PartialHypermap> out;
  if (p.finished()) return out;
  SearchMetrics scratch;
  SearchMetrics& local = metrics ? *metrics : scratch;
  const BoundTables& tb = tables();
  if (cfg.weights && p.weight_lb >= tb.tgt - 1e-12) {
    ++local.pruned_weight;
    return out;
  }

  // Most constrained corner: least remaining degree capacity.
  size_t best_w = 0;
  int best_j = 0, best_cap = INT32_MAX;
  for (size_t wi = 0; wi < p.open_walks.size(); ++wi) {
    const auto& w = p.open_walks[wi];
    for (size_t j = 0; j < w.size(); ++j) {
      int cap = cfg.max_degree - p.degree[w[j]];
      if (cap < best_cap) {
        best_cap = cap;
        best_w = wi;
        best_j = static_cast<int>(j);
      }
    }
  }
  const auto& stored = p.open_walks[best_w];
  int m = static_cast<int>(stored.size());
  std::vector<int> W(m);
  for (int i = 0; i < m; ++i) W[i] = stored[(best_j + i) % m];

  int face_cap = std::min(cfg.max_face, p.seed_size);

  // Depth-first construction of the face covering the dart (W[0], W[1]).
  std::vector<Move> moves;
  std::vector<char> used(cfg.node_count + 1, 0);  // membership of W-vertices in the face
  std::vector<int> used_list;
  auto mark = [&](int v) { used[v] = 1; used_list.push_back(v); };
  mark(W[0]);
  mark(W[1]);

  // Degree increments the face adds at existing vertices.
  std::vector<int> inc(p.vertex_count, 0);

  auto degree_ok = [&](int v) { return p.degree[v] + inc[v] < cfg.max_degree; };

  auto emit = [&]() { materialize(p, cfg, W, best_w, moves, local, out); };

  // cur: corner position reached so far; edges: face edges laid so far;
  // new_used: new vertices consumed so far.
  auto rec = [&](auto&& self, int cur, int edges, int new_used) -> void {
    // Walk move along the boundary dart (W[cur], W[cur+1]).
    if (edges + 1 <= face_cap) {
      if (cur + 1 == m) {
        if (edges + 1 >= cfg.min_face) {
          moves.push_back({true, 0, 0});
          emit();
          moves.pop_back();
        }
      } else {
        int v = W[cur + 1];
        if (!used[v]) {
          moves.push_back({true, 0, 0});
          mark(v);
          self(self, cur + 1, edges + 1, new_used);
          used[v] = 0;
          used_list.pop_back();
          moves.pop_back();
        }
      }
    }
    // Bridge moves to a later corner through t new vertices.
    int from_v = W[cur];
    if (!degree_ok(from_v)) return;
    for (int next = cur + 1; next <= m; ++next) {
      int tv = W[next % m];
      if (next < m && used[tv]) continue;
      if (!degree_ok(tv)) continue;  // the target also gains a bridge edge
      int max_new = std::min(cfg.node_count - p.vertex_count - new_used,
                             face_cap - edges - 1 - (next == m ? 0 : 1));
      for (int t = 0; t <= max_new; ++t) {
        int k_after = edges + t + 1;
        if (k_after > face_cap) break;
        if (next < m && k_after + 1 > face_cap) break;
        if (t == 0 && adjacent(p, from_v, tv)) continue;
        if (next == m) {
          if (k_after >= cfg.min_face) {
            inc[from_v]++;
            inc[tv]++;
            moves.push_back({false, next, t});
            emit();
            moves.pop_back();
            inc[from_v]--;
            inc[tv]--;
          }
        } else {
          inc[from_v]++;
          inc[tv]++;
          moves.push_back({false, next, t});
          mark(tv);
          self(self, next, k_after, new_used + t);
          used[tv] = 0;
          used_list.pop_back();
          moves.pop_back();
          inc[from_v]--;
          inc[tv]--;
        }
      }
    }
  };
  rec(rec, 1, 1, 0);
  return out;
}

Hypermap assemble(const PartialHypermap& p) {
  if (!p.finished()) throw EnumerateError("assemble: open walks remain");
  std::map<std::pair<int, int>, int> dart_id;
  std::vector<std::pair<int, int>> darts;
  for (const auto& face : p.final_faces) {
    for (size_t i = 0; i < face.size(); ++i) {
      int a = face[i], b = face[(i + 1) % face.size()];
      auto [it, fresh] = dart_id.insert({{a, b}, static_cast<int>(darts.size())});
      if (!fresh) throw EnumerateError("assemble: directed edge covered twice");
      darts.push_back({a, b});
    }
  }
  int nd = static_cast<int>(darts.size());
  Perm f(nd), e(nd);
  for (const auto& face : p.final_faces) {
    for (size_t i = 0; i < face.size(); ++i) {
      int a = face[i], b = face[(i + 1) % face.size()];
      int c = face[(i + 2) % face.size()];
      f[dart_id.at({a, b})] = dart_id.at({b, c});
    }
  }
  for (int x = 0; x < nd; ++x) {
    auto [a, b] = darts[x];
    auto it = dart_id.find({b, a});
    if (it == dart_id.end()) throw EnumerateError("assemble: missing reverse dart");
    e[x] = it->second;
  }
  Perm finv(nd), n(nd);
  for (int x = 0; x < nd; ++x) finv[f[x]] = x;
  for (int x = 0; x < nd; ++x) n[x] = e[finv[x]];
  Hypermap h(nd, std::move(e), std::move(n));
  for (int x = 0; x < nd; ++x)
    if (h.f(x) != f[x]) throw EnumerateError("assemble: face map mismatch");
  return h;
}

namespace {

// Conditions a finished candidate must satisfy under the given config.
bool candidate_ok(const Hypermap& h, const EnumConfig& cfg) {
  StructureReport sr = check_structure(h);
  if (!(sr.plain && sr.planar && sr.connected && sr.biconnected &&
        sr.nondegenerate && sr.no_loops && sr.no_double_join))
    return false;
  OrbitPartition faces = orbits(h, OrbitKind::face);
  OrbitPartition nodes = orbits(h, OrbitKind::node);
  if (faces.count() < 2) return false;
  for (const auto& f : faces.classes)
    if (static_cast<int>(f.size()) < cfg.min_face ||
        static_cast<int>(f.size()) > cfg.max_face)
      return false;
  if (nodes.count() != cfg.node_count) return false;
  for (const auto& nd : nodes.classes)
    if (static_cast<int>(nd.size()) < cfg.min_degree ||
        static_cast<int>(nd.size()) > cfg.max_degree)
      return false;
  if (cfg.weights && !weight_feasible(h, tables())) return false;
  return true;
}

bool is_default_tame_config(const EnumConfig& cfg) {
  return cfg.node_count == 12 && cfg.min_face == 3 && cfg.max_face == 8 &&
         cfg.min_degree == 2 && cfg.max_degree == 4 && cfg.weights;
}

struct Collector {
  std::mutex mu;
  std::map<CanonicalCode, ClassInfo> folded;
  std::set<CanonicalCode> unfolded;
  SearchMetrics metrics;
};

void record_candidate(const PartialHypermap& p, const EnumConfig& cfg,
                      Collector& col, SearchMetrics& local) {
  ++local.completed;
  if (p.vertex_count != cfg.node_count) return;
  Hypermap h = assemble(p);
  CanonicalCode folded = canonical_code(h, true);
  {
    std::lock_guard<std::mutex> lock(col.mu);
    if (col.folded.count(folded)) {
      ++local.duplicates;
      col.unfolded.insert(canonical_code(h, false));
      return;
    }
  }
  // Full re-validation, independent of the search bookkeeping.
  if (!candidate_ok(h, cfg)) return;
  if (is_default_tame_config(cfg) && !is_tame_contact(h).tame())
    throw EnumerateError("candidate passed config checks but failed tame recheck");
  ++local.tame;

  ClassInfo info{folded, hypermap_from_code(folded), {}, {}};
  OrbitPartition faces = orbits(h, OrbitKind::face);
  for (const auto& f : faces.classes) ++info.faces_by_size[static_cast<int>(f.size())];
  for (const auto& [node, t] : node_types(h)) {
    std::string key = "(" + std::to_string(t.p) + "," + std::to_string(t.q) + "," +
                      std::to_string(t.r) + ")";
    ++info.node_type_counts[key];
  }
  std::lock_guard<std::mutex> lock(col.mu);
  col.unfolded.insert(canonical_code(h, false));
  if (!col.folded.emplace(folded, std::move(info)).second) ++local.duplicates;
}

void dfs(PartialHypermap state, const EnumConfig& cfg, Collector& col,
         SearchMetrics& local, std::atomic<long long>& budget_used) {
  if (state.finished()) {
    record_candidate(state, cfg, col, local);
    return;
  }
  if (budget_used.fetch_add(1) >= cfg.budget)
    throw SearchBudgetExceeded("node expansion budget exhausted");
  ++local.expanded;
  for (PartialHypermap& child : extend(state, cfg, &local))
    dfs(std::move(child), cfg, col, local, budget_used);
}

}  // namespace

ClassificationResult enumerate_tame_contact(const EnumConfig& cfg) {
  Collector col;
  std::atomic<long long> budget_used{0};

  std::vector<PartialHypermap> frontier;
  for (int k = cfg.min_face; k <= cfg.max_face; ++k) {
    if (k > cfg.node_count) continue;  // seed already exceeds the vertex budget
    frontier.push_back(seed_partial(k));
  }

  int jobs = std::max(1, cfg.jobs);
  if (jobs > 1) {
    // Widen the frontier so the workers have independent subtrees.
    std::vector<PartialHypermap> next;
    SearchMetrics fm;
    while (!frontier.empty() && static_cast<int>(frontier.size()) < jobs * 8) {
      bool grew = false;
      next.clear();
      for (PartialHypermap& st : frontier) {
        if (st.finished()) {
          record_candidate(st, cfg, col, fm);
          continue;
        }
        ++fm.expanded;
        for (PartialHypermap& ch : extend(st, cfg, &fm)) {
          next.push_back(std::move(ch));
          grew = true;
        }
      }
      frontier.swap(next);
      if (!grew) break;
    }
    col.metrics.add(fm);
  }

  if (jobs <= 1) {
    SearchMetrics local;
    for (PartialHypermap& seed : frontier)
      dfs(std::move(seed), cfg, col, local, budget_used);
    col.metrics.add(local);
  } else {
    std::atomic<size_t> idx{0};
    std::vector<SearchMetrics> locals(jobs);
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex err_mu;
    for (int t = 0; t < jobs; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (;;) {
            size_t i = idx.fetch_add(1);
            if (i >= frontier.size()) break;
            dfs(frontier[i], cfg, col, locals[t], budget_used);
          }
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!err) err = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
    for (const auto& lm : locals) col.metrics.add(lm);
  }

  ClassificationResult result;
  result.metrics = col.metrics;
  for (auto& [code, info] : col.folded) result.classes.push_back(std::move(info));
  result.unfolded_class_count = static_cast<int>(col.unfolded.size());
  return result;
}

bool contains_reference(const ClassificationResult& result, const Hypermap& reference) {
  CanonicalCode code = canonical_code(reference, true);
  for (const ClassInfo& c : result.classes)
    if (c.code == code) return true;
  return false;
}

}  // namespace kiss12
