#pragma once
// Exact-rational linear feasibility with self-validating certificates, plus
// the angle-constraint systems used to eliminate classification candidates.

#include <boost/multiprecision/gmp.hpp>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kiss12/hypermap.hpp"

namespace kiss12 {

using Rational = boost::multiprecision::mpq_rational;

struct LpError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct Malformed : LpError { using LpError::LpError; };
struct UnsupportedFaceSize : LpError { using LpError::LpError; };

// Exact rational from a decimal literal such as "0.206" or "-1.5".
Rational rational_from_decimal(const std::string& s);

// Exact enclosure [lo,hi] of a double, outward-rounded on a fixed decimal
// grid; pad is added on both sides (default 1e-10, giving width ~3e-10).
struct RationalEnclosure {
  Rational lo, hi;
};
RationalEnclosure enclose(double value, int decimal_digits = 10, int pad_units = 1);

enum class Rel { LE, GE, EQ };

struct LpRow {
  std::vector<Rational> coeffs;  // one per variable
  Rel rel = Rel::LE;
  Rational rhs;
  std::string tag;  // provenance of the constraint
};

struct LpSystem {
  std::vector<std::string> vars;
  std::vector<LpRow> rows;
};

struct LpFeasible {
  std::vector<Rational> witness;  // one value per variable
};

// Farkas certificate over the rows normalized to the form a.x <= b
// (GE rows negated, EQ rows split into <= and >=).  Combining the normalized
// rows with these nonnegative multipliers yields 0 <= negative.
struct LpInfeasible {
  std::vector<Rational> multipliers;  // one per normalized row
};

using FeasibilityVerdict = std::variant<LpFeasible, LpInfeasible>;

// View of the system in normalized a.x <= b form, parallel to the
// certificate multipliers.
struct NormalizedSystem {
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  std::vector<std::string> tags;
};
NormalizedSystem normalize(const LpSystem& sys);

// Exact phase-1 simplex with Bland's rule.  Every verdict is re-validated
// against the system before being returned.
FeasibilityVerdict solve(const LpSystem& sys);

bool verdict_feasible(const FeasibilityVerdict& v);

// Independent validation helpers (no solver state involved).
bool validate_witness(const LpSystem& sys, const std::vector<Rational>& witness);
bool validate_certificate(const LpSystem& sys, const std::vector<Rational>& multipliers);

// Rational angle bounds for the candidate-elimination systems.
struct AngleBounds {
  RationalEnclosure alpha3;   // triangle interior angle
  RationalEnclosure alpha4;   // quadrilateral lower bound
  RationalEnclosure beta4;    // quadrilateral upper bound
  RationalEnclosure two_pi;
  RationalEnclosure pi;
  RationalEnclosure sol0;     // contact-triangle solid angle
};

// Constraint system over one angle variable per non-triangle dart:
//   - node sums equal 2*pi (triangle corners contribute the alpha3 constant);
//   - quadrilateral angles lie in [alpha4, beta4], opposite corners equal;
//   - angles of faces of size five or more lie in [alpha5, beta5] =
//     [alpha4, 2*pi] per the interior-angle table;
//   - per face, the angle sum is (k-2)*pi plus the face's solid angle, which
//     the face weight bound tau(F) >= d1(k) pushes up to
//     (k-2)*(pi + sol0) + d1(k).
// `widen > 0` relaxes every bound (an easier system, so infeasibility is
// robust); `widen < 0` tightens the interval rows while leaving the node-sum
// equalities at their enclosures.
LpSystem build_angle_system(const Hypermap& h, const AngleBounds& bounds,
                            const Rational& widen = Rational(0));

struct EliminationRecord {
  enum class Fate { survivor, lp_infeasible, hexagon_eliminated };
  Fate fate;
  std::string detail;
  std::optional<LpInfeasible> certificate;
  std::optional<LpFeasible> witness;
};

// Perimeter rule: a hexagonal face of a contact hypermap would have
// perimeter 6*(pi/3) = 2*pi, the strict upper bound for a geodesically
// convex spherical hexagon; such candidates cannot be realized.
std::optional<EliminationRecord> hexagon_rule(const Hypermap& h);

// Applies the hexagon rule, then LP elimination, to each candidate.
std::vector<EliminationRecord> eliminate(const std::vector<Hypermap>& candidates,
                                         const AngleBounds& bounds);

AngleBounds default_angle_bounds();

}  // namespace kiss12
