#pragma once
// Dart-based combinatorial maps.  A hypermap is a finite dart set with three
// permutations e, n, f composing to the identity; edges, nodes and faces are
// the orbits of e, n and f.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kiss12 {

struct HypermapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonPermutation : HypermapError { using HypermapError::HypermapError; };
struct NotPlain : HypermapError { using HypermapError::HypermapError; };
struct Disconnected : HypermapError { using HypermapError::HypermapError; };

using Perm = std::vector<int>;

// Immutable after construction; e(n(f(x))) = x for every dart x.
class Hypermap {
 public:
  // f is derived as n^-1 . e^-1, so the composition axiom holds by
  // construction.  Throws NonPermutation if e or n is not a bijection of
  // {0..dart_count-1}.
  Hypermap(int dart_count, Perm e, Perm n);

  int dart_count() const { return dart_count_; }
  int e(int x) const { return e_[x]; }
  int n(int x) const { return n_[x]; }
  int f(int x) const { return f_[x]; }
  const Perm& e_perm() const { return e_; }
  const Perm& n_perm() const { return n_; }
  const Perm& f_perm() const { return f_; }

 private:
  int dart_count_;
  Perm e_, n_, f_;
};

enum class OrbitKind { edge, node, face };

struct OrbitPartition {
  OrbitKind kind;
  std::vector<std::vector<int>> classes;  // each cycle in traversal order
  std::vector<int> class_of;              // dart -> class index
  int count() const { return static_cast<int>(classes.size()); }
};

OrbitPartition orbits(const Hypermap& h, OrbitKind kind);

struct StructureReport {
  bool plain = false;         // e is an involution
  bool planar = false;        // connected and Euler's relation holds
  bool connected = false;
  bool biconnected = false;   // connected, no articulation node
  bool nondegenerate = false; // e has no fixed point
  bool no_loops = false;      // the two darts of each edge lie in distinct nodes
  bool no_double_join = false;
};

StructureReport check_structure(const Hypermap& h);

// Mirror image (D, e, n^-1, n.e).  Requires e to be an involution.
Hypermap opposite(const Hypermap& h);

struct CanonicalCode {
  std::vector<std::uint8_t> bytes;
  bool mirror_folded = false;
  auto operator<=>(const CanonicalCode&) const = default;
};

// Relabeling-invariant code; equal codes iff isomorphic (iff isomorphic or
// mirror when fold_mirror is set).  Requires a connected hypermap.
CanonicalCode canonical_code(const Hypermap& h, bool fold_mirror);

// Reconstruct the canonically labeled hypermap from its code.
Hypermap hypermap_from_code(const CanonicalCode& code);

// The dihedral hypermap with 2k darts: f of order k, n and e involutions.
Hypermap dihedral(int k);

// k such that h is isomorphic to the dihedral hypermap with 2k darts, if any.
std::optional<int> is_dihedral(const Hypermap& h);

std::string code_hex(const CanonicalCode& code);

}  // namespace kiss12
