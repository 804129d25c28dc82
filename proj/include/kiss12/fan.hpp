#pragma once
// Geometric fans from explicit point configurations: edge classification,
// fan axiom checking, the hypermap construction via azimuthal cyclic orders,
// localization, and the FCC/HCP reference configurations.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kiss12/geometry.hpp"
#include "kiss12/hypermap.hpp"

namespace kiss12 {

struct FanError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FanAxiomViolation : FanError { using FanError::FanError; };
struct NotAFace : FanError { using FanError::FanError; };
struct InvalidConfig : FanError { using FanError::FanError; };

using EdgeSet = std::vector<std::pair<int, int>>;  // index pairs, first < second

struct Fan {
  std::vector<Vec3> points;
  EdgeSet edges;
};

// Twelve points on the radius-2 sphere, pairwise at distance 2 or >= 2*h0.
struct KissingConfig {
  std::vector<Vec3> points;
};

// Throws InvalidConfig unless the twelve-point separation conditions hold.
void validate_config(const KissingConfig& cfg);

// Pairs at distance exactly 2 (within tolerance).
EdgeSet contact_edges(const KissingConfig& cfg);

// Pairs at distance in [2, sqrt(8)); strict upper cutoff.
EdgeSet extended_edges(const KissingConfig& cfg);

enum class FanAxiom { cardinality, origin, nonparallel, intersection };

struct FanVerdict {
  bool ok = true;
  std::optional<FanAxiom> violated;
  std::string detail;
};

// Checks the four fan axioms; blade intersections are tested pairwise over
// all edges and singleton rays.
FanVerdict check_fan(const std::vector<Vec3>& points, const EdgeSet& edges);

// Hypermap of a fan together with its dart labeling.  Dart i corresponds to
// the ordered pair (tail, head); isolated nodes contribute darts with
// tail == head fixed by all three structure maps.
struct FanHypermap {
  Hypermap map;
  std::vector<std::pair<int, int>> dart_label;  // dart -> (tail point, head point)
};

// Builds hyp(V,E).  The node map sends (v,w) to (v, sigma_v(w)) where
// sigma_v is the counterclockwise cyclic order of the neighbors of v by
// azimuth.  Throws FanAxiomViolation if check_fan fails or two neighbors of
// a node share an azimuth.
FanHypermap build_hypermap(const Fan& fan);

struct LocalFan {
  std::vector<int> nodes;   // point indices on the face
  EdgeSet edges;            // edges whose dart lies on the face
  std::vector<int> face;    // the face as a dart cycle of the parent hypermap
  int k = 0;                // face cardinality
};

// Restriction of the fan to one face; asserts the result is a local fan
// (its hypermap is dihedral with 2*card(F) darts).
LocalFan localize(const Fan& fan, const FanHypermap& fh, const std::vector<int>& face_darts);

// Weight of a face: solid angle of its region plus (2 - k) * sol0.
double face_tau(const Fan& fan, const FanHypermap& fh, const std::vector<int>& face_darts);

// Reference configurations: cuboctahedron (FCC pattern) and the twisted
// variant with aligned polar triangles (HCP pattern).
KissingConfig fcc_points();
KissingConfig hcp_points();

}  // namespace kiss12
