#pragma once
// Numerical verification of the main estimate's case analysis: circumradius
// edge caps, corner minimization of spherical areas over edge-length boxes,
// the per-triangle lower bound in every (r,s,t) case, superadditivity of the
// d3 table, and the face bound they combine into.

#include <array>
#include <string>
#include <vector>

#include "kiss12/geometry.hpp"

namespace kiss12 {

struct EstimateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoFeasibleTriangle : EstimateError { using EstimateError::EstimateError; };
struct NothingRealizable : EstimateError { using EstimateError::EstimateError; };

struct Interval {
  double lo = 0, hi = 0;
};

enum class EdgeClass { contact, small_gap, large };

struct EdgeBox {
  std::array<Interval, 3> edge;
  std::array<EdgeClass, 3> cls;
};

struct CaseReport {
  std::string id;
  std::string inequality;
  double computed = 0;
  double required = 0;
  double slack = 0;
  bool sharp = false;
  bool pass = false;
  std::string note;
};

// Largest long-edge length c in [3.0, 2*sqrt(3)] for which some (a,b) in the
// fixed intervals (samples clamped to a,b <= c, since c is the longest edge)
// yields circumradius(a,b,c) <= sqrt(3).  Bisection, with monotonicity of
// the box minimum in c cross-checked on a grid.  Throws NoFeasibleTriangle
// when even c = 3.0 admits no circumradius below sqrt(3).
double circumradius_edge_bound(const Interval& fixed1, const Interval& fixed2);

// Grid certification that no triangle with (a,b) in the fixed intervals and
// long edge c in [cap, 2*sqrt(3)] has circumradius meaningfully below
// sqrt(3).  Returns false if a sample beats sqrt(3) - 1e-9 at c > cap + 1e-6.
bool certify_cap(const Interval& fixed1, const Interval& fixed2, double cap);

// Minimum spherical area over the box: corner enumeration (edge lengths of a
// minimal-area triangle are extremal), cross-validated against a 21^3 grid
// that must never beat the corner minimum by more than 1e-9.
double min_area_over_box(const EdgeBox& box);

// Minimum circumradius over corners and a 21^3 grid of the box.
double min_circumradius_over_box(const EdgeBox& box);

// One report per (r,s,t) case with r+s+t = 3; the (1,1,1) case splits into
// its three branches (long edge capped at 3.45, mid edge at least 2.6, and
// the circumradius-vacuous remainder).
std::vector<CaseReport> verify_d3_cases();

// Exhaustive pairwise check of d3 superadditivity under both merge rules,
// with the two documented exclusions, plus random merge chains checking
// sum(d3 of parts) >= d3(total) = d2(r,s).
std::vector<CaseReport> verify_superadditivity();

// The face bound min(d2(r,s), tgt): bookkeeping on top of the two suites.
CaseReport verify_face_bound(int r, int s);

bool all_pass(const std::vector<CaseReport>& reports);

}  // namespace kiss12
