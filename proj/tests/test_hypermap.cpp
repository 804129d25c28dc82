#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kiss12/hypermap.hpp"
#include "test_util.hpp"

using namespace kiss12;
namespace tu = testutil;

TEST_CASE("construction and the composition axiom") {
  Hypermap empty(0, {}, {});
  CHECK(empty.dart_count() == 0);

  // One isolated dart: all maps fix it.
  Hypermap isolated(1, {0}, {0});
  CHECK(isolated.f(0) == 0);

  CHECK_THROWS_AS(Hypermap(2, {0, 0}, {0, 1}), NonPermutation);
  CHECK_THROWS_AS(Hypermap(2, {0}, {0, 1}), NonPermutation);

  std::mt19937 rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + static_cast<int>(rng() % 40);
    Hypermap h(n, tu::random_permutation(n, rng), tu::random_permutation(n, rng));
    for (int x = 0; x < n; ++x) CHECK(h.e(h.n(h.f(x))) == x);
  }
}

TEST_CASE("dihedral hypermaps") {
  for (int k = 1; k <= 6; ++k) {
    Hypermap d = dihedral(k);
    CHECK(d.dart_count() == 2 * k);
    OrbitPartition faces = orbits(d, OrbitKind::face);
    CHECK(faces.count() == 2);
    for (const auto& f : faces.classes) CHECK(static_cast<int>(f.size()) == k);
    OrbitPartition nodes = orbits(d, OrbitKind::node);
    CHECK(nodes.count() == k);
    // n and e are involutions; f has order k.
    for (int x = 0; x < 2 * k; ++x) {
      CHECK(d.n(d.n(x)) == x);
      CHECK(d.e(d.e(x)) == x);
    }
  }
}

TEST_CASE("orbit partitions cover and are disjoint") {
  std::mt19937 rng(102);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 1 + static_cast<int>(rng() % 30);
    Hypermap h(n, tu::random_permutation(n, rng), tu::random_permutation(n, rng));
    for (OrbitKind kind : {OrbitKind::edge, OrbitKind::node, OrbitKind::face}) {
      OrbitPartition part = orbits(h, kind);
      std::vector<int> seen(n, 0);
      for (const auto& cls : part.classes)
        for (int x : cls) ++seen[x];
      for (int x = 0; x < n; ++x) CHECK(seen[x] == 1);
      const Perm& p = kind == OrbitKind::edge   ? h.e_perm()
                      : kind == OrbitKind::node ? h.n_perm()
                                                : h.f_perm();
      for (int x = 0; x < n; ++x)
        CHECK(part.class_of[x] == part.class_of[p[x]]);
    }
  }
}

TEST_CASE("structure report basics") {
  // The triangle fan hypermap Dih_6: plain, planar, biconnected.
  StructureReport tri = check_structure(dihedral(3));
  CHECK(tri.plain);
  CHECK(tri.planar);
  CHECK(tri.connected);
  CHECK(tri.biconnected);
  CHECK(tri.nondegenerate);
  CHECK(tri.no_loops);
  CHECK(tri.no_double_join);

  // A dart fixed by e is degenerate.
  StructureReport fixed = check_structure(Hypermap(1, {0}, {0}));
  CHECK_FALSE(fixed.nondegenerate);

  // Two disjoint triangles: disconnected, hence not planar by definition.
  {
    Perm e(12), n(12);
    Hypermap d3 = dihedral(3);
    for (int x = 0; x < 6; ++x) {
      e[x] = d3.e(x);
      n[x] = d3.n(x);
      e[6 + x] = 6 + d3.e(x);
      n[6 + x] = 6 + d3.n(x);
    }
    StructureReport two = check_structure(Hypermap(12, e, n));
    CHECK_FALSE(two.connected);
    CHECK_FALSE(two.planar);
    CHECK_FALSE(two.biconnected);
  }

  // Dih_2 is a loop: both darts of its single edge share the node.
  StructureReport d1 = check_structure(dihedral(1));
  CHECK(d1.plain);
  CHECK_FALSE(d1.no_loops);

  // Two nodes joined by two edges: a double join.
  {
    Perm e = {1, 0, 3, 2};
    Perm n = {2, 3, 0, 1};
    StructureReport dj = check_structure(Hypermap(4, e, n));
    CHECK_FALSE(dj.no_double_join);
  }
}

TEST_CASE("biconnectivity matches the brute-force oracle") {
  std::mt19937 rng(103);
  int tested = 0;
  while (tested < 120) {
    int nv = 3 + static_cast<int>(rng() % 6);
    // Random graph with random rotation orders.
    std::vector<std::vector<int>> rot(nv);
    for (int a = 0; a < nv; ++a)
      for (int b = a + 1; b < nv; ++b)
        if (rng() % 3 == 0) {
          rot[a].push_back(b);
          rot[b].push_back(a);
        }
    bool any = false;
    for (auto& r : rot) {
      std::shuffle(r.begin(), r.end(), rng);
      if (!r.empty()) any = true;
    }
    if (!any) continue;
    std::vector<std::vector<int>> nonempty;
    std::vector<int> rename(nv, -1);
    for (int v = 0; v < nv; ++v)
      if (!rot[v].empty()) {
        rename[v] = static_cast<int>(nonempty.size());
        nonempty.push_back(rot[v]);
      }
    for (auto& r : nonempty)
      for (int& w : r) w = rename[w];
    bool skip = false;
    for (auto& r : nonempty)
      for (int w : r)
        if (w < 0) skip = true;
    if (skip) continue;
    Hypermap h = tu::rotation_system_hypermap(nonempty);
    if (h.dart_count() > 60) continue;
    CHECK(check_structure(h).biconnected == tu::brute_biconnected(h));
    ++tested;
  }
}

TEST_CASE("opposite is an involution up to isomorphism") {
  for (int k = 1; k <= 5; ++k) {
    Hypermap d = dihedral(k);
    Hypermap opp = opposite(d);
    CHECK(canonical_code(d, false) == canonical_code(opp, false));  // self-mirror
    CHECK(canonical_code(opposite(opp), false) == canonical_code(d, false));
  }
  // Non-plain hypermaps are rejected.
  Hypermap cyc(3, {1, 2, 0}, {0, 1, 2});
  CHECK_THROWS_AS(opposite(cyc), NotPlain);
}

TEST_CASE("canonical codes are relabeling invariant") {
  std::mt19937 rng(104);
  std::vector<Hypermap> objects;
  for (int k = 2; k <= 5; ++k) objects.push_back(dihedral(k));
  // A few random connected plain hypermaps via rotation systems.
  while (objects.size() < 10) {
    int nv = 4 + static_cast<int>(rng() % 3);
    std::vector<std::vector<int>> rot(nv);
    for (int a = 0; a < nv; ++a)
      for (int b = a + 1; b < nv; ++b)
        if (rng() % 2 == 0) {
          rot[a].push_back(b);
          rot[b].push_back(a);
        }
    bool ok = true;
    for (auto& r : rot)
      if (r.empty()) ok = false;
    if (!ok) continue;
    Hypermap h = tu::rotation_system_hypermap(rot);
    StructureReport sr = check_structure(h);
    if (!sr.connected) continue;
    objects.push_back(h);
  }
  for (const Hypermap& h : objects) {
    CanonicalCode base = canonical_code(h, false);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<int> phi = tu::random_permutation(h.dart_count(), rng);
      CHECK(canonical_code(tu::relabel(h, phi), false) == base);
    }
    Hypermap rebuilt = hypermap_from_code(base);
    CHECK(canonical_code(rebuilt, false) == base);
  }
}

TEST_CASE("mirror folding equates a hypermap with its opposite") {
  std::mt19937 rng(105);
  for (int k = 2; k <= 6; ++k) {
    Hypermap d = dihedral(k);
    CHECK(canonical_code(d, true) == canonical_code(opposite(d), true));
  }
}

TEST_CASE("disconnected hypermaps cannot be coded") {
  Perm e = {0, 1};
  Perm n = {0, 1};
  CHECK_THROWS_AS(canonical_code(Hypermap(2, e, n), false), Disconnected);
}

TEST_CASE("is_dihedral") {
  CHECK(is_dihedral(dihedral(4)) == 4);
  CHECK(is_dihedral(dihedral(1)) == 1);
  // The defining 2-dart shape: e and n swap, f is the identity.
  Hypermap two(2, {1, 0}, {1, 0});
  CHECK(two.f(0) == 0);
  CHECK(is_dihedral(two) == 1);
  // A 2-dart shape with n trivial is not dihedral.
  Hypermap edge(2, {1, 0}, {0, 1});
  CHECK_FALSE(is_dihedral(edge).has_value());
  // f of order 3 with trivial n: not dihedral either.
  CHECK_FALSE(is_dihedral(Hypermap(3, {1, 2, 0}, {0, 1, 2})).has_value());
}

TEST_CASE("Euler relation for dihedral hypermaps") {
  for (int k = 1; k <= 8; ++k) {
    Hypermap d = dihedral(k);
    int sum = orbits(d, OrbitKind::node).count() + orbits(d, OrbitKind::edge).count() +
              orbits(d, OrbitKind::face).count();
    CHECK(sum == d.dart_count() + 2);
  }
}
