#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "kiss12/enumerate.hpp"
#include "kiss12/fan.hpp"
#include "kiss12/tame.hpp"
#include "test_util.hpp"

using namespace kiss12;
namespace tu = testutil;

namespace {

Hypermap reference_map(const KissingConfig& cfg) {
  Fan fan{cfg.points, contact_edges(cfg)};
  return build_hypermap(fan).map;
}

// Every plane map on exactly `nv` labeled vertices with the given degree and
// face-size windows, generated directly from rotation systems.
std::set<CanonicalCode> brute_force_classes(int nv, int max_degree, int max_face) {
  std::set<CanonicalCode> out;
  int npairs = nv * (nv - 1) / 2;
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < nv; ++a)
    for (int b = a + 1; b < nv; ++b) pairs.push_back({a, b});

  for (int mask = 0; mask < (1 << npairs); ++mask) {
    std::vector<std::vector<int>> nbrs(nv);
    for (int i = 0; i < npairs; ++i) {
      if (mask & (1 << i)) {
        nbrs[pairs[i].first].push_back(pairs[i].second);
        nbrs[pairs[i].second].push_back(pairs[i].first);
      }
    }
    bool deg_ok = true;
    for (const auto& nb : nbrs)
      if (static_cast<int>(nb.size()) < 2 || static_cast<int>(nb.size()) > max_degree)
        deg_ok = false;
    if (!deg_ok) continue;

    // All rotation systems: fix the first neighbor, permute the rest.
    std::vector<std::vector<std::vector<int>>> orders(nv);
    for (int v = 0; v < nv; ++v) {
      std::vector<int> rest(nbrs[v].begin() + 1, nbrs[v].end());
      std::sort(rest.begin(), rest.end());
      do {
        std::vector<int> rot = {nbrs[v][0]};
        rot.insert(rot.end(), rest.begin(), rest.end());
        orders[v].push_back(rot);
      } while (std::next_permutation(rest.begin(), rest.end()));
    }
    std::vector<size_t> pick(nv, 0);
    for (;;) {
      std::vector<std::vector<int>> rot(nv);
      for (int v = 0; v < nv; ++v) rot[v] = orders[v][pick[v]];
      Hypermap h = tu::rotation_system_hypermap(rot);
      StructureReport sr = check_structure(h);
      if (sr.plain && sr.planar && sr.connected && sr.biconnected &&
          sr.nondegenerate && sr.no_loops && sr.no_double_join) {
        OrbitPartition faces = orbits(h, OrbitKind::face);
        bool faces_ok = faces.count() >= 2;
        for (const auto& f : faces.classes)
          if (static_cast<int>(f.size()) < 3 || static_cast<int>(f.size()) > max_face)
            faces_ok = false;
        if (faces_ok) out.insert(canonical_code(h, true));
      }
      int v = 0;
      while (v < nv && ++pick[v] == orders[v].size()) pick[v++] = 0;
      if (v == nv) break;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("seed partial") {
  PartialHypermap p = seed_partial(3);
  CHECK(p.vertex_count == 3);
  CHECK(p.final_faces.size() == 1);
  CHECK(p.open_walks.size() == 1);
  CHECK(p.open_walks[0].size() == 3);
  CHECK_THROWS_AS(seed_partial(2), EnumerateError);
}

TEST_CASE("extend produces consistent children") {
  EnumConfig cfg;
  PartialHypermap seed = seed_partial(3);
  auto children = extend(seed, cfg);
  CHECK_FALSE(children.empty());
  for (const PartialHypermap& ch : children) {
    CHECK(ch.final_faces.size() == 2);
    for (const auto& w : ch.open_walks) CHECK(w.size() >= 3);
    for (int v = 0; v < ch.vertex_count; ++v) CHECK(ch.degree[v] <= cfg.max_degree);
    CHECK(ch.weight_lb < tables().tgt);
  }
}

TEST_CASE("extend stops at the weight target") {
  EnumConfig cfg;
  PartialHypermap p = seed_partial(8);
  p.weight_lb = tables().tgt;
  CHECK(extend(p, cfg).empty());
}

TEST_CASE("tiny node budget yields nothing") {
  EnumConfig cfg;
  cfg.node_count = 3;
  ClassificationResult r = enumerate_tame_contact(cfg);
  CHECK(r.classes.empty());
}

TEST_CASE("reduced instance matches brute force") {
  EnumConfig cfg;
  cfg.node_count = 6;
  cfg.max_face = 4;
  cfg.max_degree = 3;
  cfg.weights = false;
  cfg.geometric_prunes = false;
  ClassificationResult r = enumerate_tame_contact(cfg);
  std::set<CanonicalCode> got;
  for (const ClassInfo& c : r.classes) got.insert(c.code);
  std::set<CanonicalCode> want = brute_force_classes(6, 3, 4);
  CHECK(got == want);
  CHECK_FALSE(got.empty());  // the triangular prism map lives here
}

TEST_CASE("restricted faces still find the reference classes") {
  EnumConfig cfg;
  cfg.max_face = 4;
  ClassificationResult r = enumerate_tame_contact(cfg);
  CHECK(contains_reference(r, reference_map(fcc_points())));
  CHECK(contains_reference(r, reference_map(hcp_points())));
  for (const ClassInfo& c : r.classes) {
    auto it = c.faces_by_size.find(5);
    CHECK(it == c.faces_by_size.end());
  }
}

TEST_CASE("degree cap three excludes the references") {
  EnumConfig cfg;
  cfg.max_degree = 3;
  ClassificationResult r = enumerate_tame_contact(cfg);
  CHECK_FALSE(contains_reference(r, reference_map(fcc_points())));
  CHECK_FALSE(contains_reference(r, reference_map(hcp_points())));
}

TEST_CASE("determinism across runs and worker counts") {
  EnumConfig cfg;
  cfg.node_count = 6;
  cfg.max_face = 4;
  cfg.max_degree = 3;
  cfg.weights = false;
  cfg.geometric_prunes = false;
  ClassificationResult a = enumerate_tame_contact(cfg);
  ClassificationResult b = enumerate_tame_contact(cfg);
  EnumConfig par = cfg;
  par.jobs = 3;
  ClassificationResult c = enumerate_tame_contact(par);
  auto codes = [](const ClassificationResult& r) {
    std::vector<CanonicalCode> v;
    for (const auto& ci : r.classes) v.push_back(ci.code);
    return v;
  };
  CHECK(codes(a) == codes(b));
  CHECK(codes(a) == codes(c));
  CHECK(a.unfolded_class_count == c.unfolded_class_count);
}

TEST_CASE("budget exhaustion raises") {
  EnumConfig cfg;
  cfg.budget = 3;
  CHECK_THROWS_AS(enumerate_tame_contact(cfg), SearchBudgetExceeded);
}
