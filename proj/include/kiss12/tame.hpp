#pragma once
// The bound tables and the full tame-contact predicate: node types,
// admissible types from the interior-angle scan, and existence of a contact
// weight assignment below the target.

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "kiss12/hypermap.hpp"
#include "kiss12/lpfeas.hpp"

namespace kiss12 {

struct TameError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotBiconnected : TameError { using TameError::TameError; };

struct NodeType {
  int p = 0;  // triangles at the node
  int q = 0;  // quadrilaterals
  int r = 0;  // faces of size five or more
  auto operator<=>(const NodeType&) const = default;
};

// Per-face and per-node lower bounds, and the interior-angle bounds for
// contact polygons.  The identity checks of `tables()` assert the cross
// relations (d1(k) = d2(k,0) for 4<=k<=8, d3(r,s,0) = d2(r,s)).
struct BoundTables {
  double tgt;
  double d1(int k) const;
  double d2(int r, int s) const;
  double d3(int r, int s, int t) const;
  double b(int p, int q) const;
  // Interior-angle bounds by face size class (index 3, 4, and >=5).
  double alpha(int k) const;
  double beta(int k) const;
  // Outward-rounded rational enclosures of the same angles.
  RationalEnclosure alpha_enc(int k) const;
  RationalEnclosure beta_enc(int k) const;
  RationalEnclosure two_pi_enc() const;

  double alpha34, alpha45, beta44;  // cached dihedral evaluations
};

const BoundTables& tables();

// Face-size class counts at every node.  Requires a biconnected hypermap so
// that each face meets each node at most once.
std::map<int, NodeType> node_types(const Hypermap& h);

// True when p*alpha + q*alpha4 + r*alpha5 <= 2*pi <= p*beta3 + ... holds
// robustly under the rational enclosures.
bool type_admissible(const NodeType& t);

// Scans all (p,q,r) with p+q+r <= 8 (6*alpha3 > 2*pi makes larger sums
// impossible, so the cap is sufficient); asserts that no type with
// p+q+r >= 5 passes and returns the surviving (p,q) pairs with r = 0.
std::set<std::pair<int, int>> admissible_node_types();

struct WeightAssignment {
  std::vector<double> per_face;  // indexed like orbits(h, face).classes
  double total = 0;
};

// Minimizes the total weight subject to tau(F) >= d1(k(F)) and the node
// bounds b(p,q) at every (p,q,0) node; returns an assignment iff the
// minimum is below tgt with at least 1e-9 slack.  Solved by bisection over
// the exact-rational feasibility engine.
std::optional<WeightAssignment> weight_feasible(const Hypermap& h, const BoundTables& tb);

struct TameReport {
  bool biconnected = false;
  bool plain_planar = false;
  bool nondegenerate = false;
  bool no_loops = false;
  bool no_double_join = false;
  bool face_count_ok = false;   // at least two faces
  bool face_sizes_ok = false;   // every face size in [3,8]
  bool node_count_ok = false;   // exactly twelve nodes
  bool node_sizes_ok = false;   // every node size in [2,4]
  bool weights_ok = false;      // contact weight assignment below tgt exists
  std::optional<WeightAssignment> weights;
  std::string failure;          // first failing condition, if any
  bool tame() const {
    return biconnected && plain_planar && nondegenerate && no_loops &&
           no_double_join && face_count_ok && face_sizes_ok && node_count_ok &&
           node_sizes_ok && weights_ok;
  }
};

TameReport is_tame_contact(const Hypermap& h);

}  // namespace kiss12
