#include "kiss12/lpfeas.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kiss12/geometry.hpp"

namespace kiss12 {

Rational rational_from_decimal(const std::string& s) {
  size_t pos = 0;
  bool neg = false;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    neg = s[pos] == '-';
    ++pos;
  }
  Rational num = 0;
  Rational den = 1;
  bool seen_digit = false, seen_dot = false;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (c == '.') {
      if (seen_dot) throw Malformed("bad decimal literal: " + s);
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      num = num * 10 + (c - '0');
      if (seen_dot) den *= 10;
      seen_digit = true;
    } else {
      throw Malformed("bad decimal literal: " + s);
    }
  }
  if (!seen_digit) throw Malformed("bad decimal literal: " + s);
  Rational r = num / den;
  return neg ? -r : r;
}

RationalEnclosure enclose(double value, int decimal_digits, int pad_units) {
  Rational scale = 1;
  for (int i = 0; i < decimal_digits; ++i) scale *= 10;
  double scaled = value * std::pow(10.0, decimal_digits);
  if (std::abs(scaled) > 9e17) throw Malformed("enclose: value too large");
  long long n = static_cast<long long>(std::floor(scaled));
  RationalEnclosure enc;
  enc.lo = Rational(n - pad_units) / scale;
  enc.hi = Rational(n + 1 + pad_units) / scale;
  return enc;
}

NormalizedSystem normalize(const LpSystem& sys) {
  NormalizedSystem ns;
  size_t nv = sys.vars.size();
  for (const LpRow& row : sys.rows) {
    if (row.coeffs.size() != nv) throw Malformed("row width mismatch");
    auto push = [&ns](std::vector<Rational> a, Rational b, const std::string& tag) {
      ns.a.push_back(std::move(a));
      ns.b.push_back(std::move(b));
      ns.tags.push_back(tag);
    };
    switch (row.rel) {
      case Rel::LE:
        push(row.coeffs, row.rhs, row.tag);
        break;
      case Rel::GE: {
        std::vector<Rational> neg(nv);
        for (size_t j = 0; j < nv; ++j) neg[j] = -row.coeffs[j];
        push(std::move(neg), -row.rhs, row.tag);
        break;
      }
      case Rel::EQ: {
        push(row.coeffs, row.rhs, row.tag + "<=");
        std::vector<Rational> neg(nv);
        for (size_t j = 0; j < nv; ++j) neg[j] = -row.coeffs[j];
        push(std::move(neg), -row.rhs, row.tag + ">=");
        break;
      }
    }
  }
  return ns;
}

bool validate_witness(const LpSystem& sys, const std::vector<Rational>& witness) {
  if (witness.size() != sys.vars.size()) return false;
  for (const LpRow& row : sys.rows) {
    Rational lhs = 0;
    for (size_t j = 0; j < witness.size(); ++j) lhs += row.coeffs[j] * witness[j];
    if (row.rel == Rel::LE && lhs > row.rhs) return false;
    if (row.rel == Rel::GE && lhs < row.rhs) return false;
    if (row.rel == Rel::EQ && lhs != row.rhs) return false;
  }
  return true;
}

bool validate_certificate(const LpSystem& sys, const std::vector<Rational>& mult) {
  NormalizedSystem ns = normalize(sys);
  if (mult.size() != ns.a.size()) return false;
  for (const Rational& m : mult)
    if (m < 0) return false;
  size_t nv = sys.vars.size();
  for (size_t j = 0; j < nv; ++j) {
    Rational s = 0;
    for (size_t i = 0; i < ns.a.size(); ++i) s += mult[i] * ns.a[i][j];
    if (s != 0) return false;
  }
  Rational rhs = 0;
  for (size_t i = 0; i < ns.b.size(); ++i) rhs += mult[i] * ns.b[i];
  return rhs < 0;
}

namespace {

// Exact phase-1 simplex on the normalized system A x <= b with x free.
// Columns: x+ (nv), x- (nv), slack (m), artificial (m).
class PhaseOne {
 public:
  PhaseOne(const NormalizedSystem& ns, size_t nv) : m_(ns.a.size()), nv_(nv) {
    for (const auto& r : ns.a)
      if (r.size() != nv_) throw Malformed("normalized row width mismatch");
    ncols_ = 2 * nv_ + 2 * m_;
    tab_.assign(m_, std::vector<Rational>(ncols_ + 1, Rational(0)));
    eta_.resize(m_);
    basis_.resize(m_);
    for (size_t i = 0; i < m_; ++i) {
      int eta = ns.b[i] >= 0 ? 1 : -1;
      eta_[i] = eta;
      for (size_t j = 0; j < nv_; ++j) {
        tab_[i][j] = eta * ns.a[i][j];
        tab_[i][nv_ + j] = -eta * ns.a[i][j];
      }
      tab_[i][2 * nv_ + i] = Rational(eta);           // slack
      tab_[i][2 * nv_ + m_ + i] = Rational(1);        // artificial
      tab_[i][ncols_] = eta * ns.b[i];
      basis_[i] = static_cast<int>(2 * nv_ + m_ + i);
    }
    // Reduced costs for min sum(artificials) with the artificial basis.
    red_.assign(ncols_ + 1, Rational(0));
    for (size_t j = 0; j < ncols_; ++j) {
      Rational colsum = 0;
      for (size_t i = 0; i < m_; ++i) colsum += tab_[i][j];
      Rational cost = j >= 2 * nv_ + m_ ? Rational(1) : Rational(0);
      red_[j] = cost - colsum;
    }
    Rational rhssum = 0;
    for (size_t i = 0; i < m_; ++i) rhssum += tab_[i][ncols_];
    red_[ncols_] = -rhssum;  // negative of the current objective value
  }

  void run() {
    for (;;) {
      int enter = -1;
      for (size_t j = 0; j < ncols_; ++j) {
        if (red_[j] < 0) { enter = static_cast<int>(j); break; }  // Bland
      }
      if (enter < 0) return;
      int leave = -1;
      Rational best_ratio = 0;
      for (size_t i = 0; i < m_; ++i) {
        if (tab_[i][enter] <= 0) continue;
        Rational ratio = tab_[i][ncols_] / tab_[i][enter];
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = static_cast<int>(i);
          best_ratio = ratio;
        }
      }
      if (leave < 0) throw LpError("phase-1 unbounded; internal error");
      pivot(static_cast<size_t>(leave), static_cast<size_t>(enter));
    }
  }

  Rational objective() const { return -red_[ncols_]; }

  std::vector<Rational> witness() const {
    std::vector<Rational> x(nv_, Rational(0));
    std::vector<Rational> z(ncols_, Rational(0));
    for (size_t i = 0; i < m_; ++i) z[basis_[i]] = tab_[i][ncols_];
    for (size_t j = 0; j < nv_; ++j) x[j] = z[j] - z[nv_ + j];
    return x;
  }

  std::vector<Rational> farkas() const {
    // y_i = 1 - reduced cost of artificial i; lambda_i = -eta_i * y_i.
    std::vector<Rational> lambda(m_);
    for (size_t i = 0; i < m_; ++i) {
      Rational y = Rational(1) - red_[2 * nv_ + m_ + i];
      lambda[i] = -Rational(eta_[i]) * y;
    }
    return lambda;
  }

 private:
  void pivot(size_t r, size_t c) {
    Rational p = tab_[r][c];
    for (auto& v : tab_[r]) v /= p;
    for (size_t i = 0; i < m_; ++i) {
      if (i == r || tab_[i][c] == 0) continue;
      Rational factor = tab_[i][c];
      for (size_t j = 0; j <= ncols_; ++j) tab_[i][j] -= factor * tab_[r][j];
    }
    if (red_[c] != 0) {
      Rational factor = red_[c];
      for (size_t j = 0; j <= ncols_; ++j) red_[j] -= factor * tab_[r][j];
    }
    basis_[r] = static_cast<int>(c);
  }

  size_t m_, nv_, ncols_ = 0;
  std::vector<std::vector<Rational>> tab_;
  std::vector<Rational> red_;
  std::vector<int> basis_;
  std::vector<int> eta_;
};

}  // namespace

FeasibilityVerdict solve(const LpSystem& sys) {
  for (const LpRow& row : sys.rows)
    if (row.coeffs.size() != sys.vars.size())
      throw Malformed("row width does not match variable count");
  NormalizedSystem ns = normalize(sys);
  PhaseOne simplex(ns, sys.vars.size());
  simplex.run();
  if (simplex.objective() == 0) {
    LpFeasible f{simplex.witness()};
    if (!validate_witness(sys, f.witness))
      throw LpError("feasible verdict failed self-validation");
    return f;
  }
  LpInfeasible inf{simplex.farkas()};
  if (!validate_certificate(sys, inf.multipliers))
    throw LpError("infeasibility certificate failed self-validation");
  return inf;
}

bool verdict_feasible(const FeasibilityVerdict& v) {
  return std::holds_alternative<LpFeasible>(v);
}

namespace {

// d1 face weights as exact rationals.
Rational d1_rational(size_t k) {
  if (k <= 3) return Rational(0);
  if (k <= 8)
    return rational_from_decimal("0.206") +
           Rational(static_cast<int>(k) - 4) * rational_from_decimal("0.27");
  return rational_from_decimal("1.541");
}

}  // namespace

AngleBounds default_angle_bounds() {
  const double h0 = Constants::get().h0;
  AngleBounds b;
  b.alpha3 = enclose(dih(2, 2, 2, 2, 2, 2));
  b.alpha4 = enclose(dih(2, 2, 2, 2 * h0, 2, 2));
  b.beta4 = enclose(2 * dih(2, 2, 2, 2, 2 * h0, 2));
  b.two_pi = enclose(2 * std::numbers::pi);
  b.pi = enclose(std::numbers::pi);
  b.sol0 = enclose(Constants::get().sol0);
  return b;
}

LpSystem build_angle_system(const Hypermap& h, const AngleBounds& bounds,
                            const Rational& widen) {
  OrbitPartition faces = orbits(h, OrbitKind::face);
  OrbitPartition nodes = orbits(h, OrbitKind::node);
  for (const auto& f : faces.classes)
    if (f.size() < 3 || f.size() > 8)
      throw UnsupportedFaceSize("angle system needs faces of size 3..8, got " +
                                std::to_string(f.size()));

  LpSystem sys;
  std::vector<int> var_of(h.dart_count(), -1);
  std::vector<char> is_quad(h.dart_count(), 0);
  for (const auto& f : faces.classes) {
    if (f.size() == 3) continue;  // triangle corners are the alpha3 constant
    for (int d : f) {
      var_of[d] = static_cast<int>(sys.vars.size());
      is_quad[d] = f.size() == 4;
      sys.vars.push_back("angle_dart_" + std::to_string(d));
    }
  }
  size_t nv = sys.vars.size();

  auto zero_row = [nv]() { return std::vector<Rational>(nv, Rational(0)); };

  // Node sums are equalities: only positive widening touches them.
  Rational widen_eq = widen > 0 ? widen : Rational(0);

  // Angles around each node sum to 2*pi; triangle corners enter as the
  // alpha3 constant interval.
  for (const auto& nd : nodes.classes) {
    std::vector<Rational> coeffs = zero_row();
    int tri_corners = 0;
    for (int d : nd) {
      if (var_of[d] >= 0)
        coeffs[var_of[d]] += 1;
      else
        ++tri_corners;
    }
    LpRow lo;
    lo.coeffs = coeffs;
    lo.rel = Rel::GE;
    lo.rhs = bounds.two_pi.lo - Rational(tri_corners) * bounds.alpha3.hi - widen_eq;
    lo.tag = "node-sum";
    sys.rows.push_back(std::move(lo));
    LpRow hi;
    hi.coeffs = coeffs;
    hi.rel = Rel::LE;
    hi.rhs = bounds.two_pi.hi - Rational(tri_corners) * bounds.alpha3.lo + widen_eq;
    hi.tag = "node-sum";
    sys.rows.push_back(std::move(hi));
  }

  // Angle sum of a simple geodesic k-gon is (k-2)*pi plus its solid angle,
  // and the face weight bound gives solid angle >= (k-2)*sol0 + d1(k).
  for (const auto& f : faces.classes) {
    if (f.size() == 3) continue;
    std::vector<Rational> coeffs = zero_row();
    for (int d : f) coeffs[var_of[d]] += 1;
    Rational k2 = Rational(static_cast<int>(f.size()) - 2);
    LpRow lo;
    lo.coeffs = std::move(coeffs);
    lo.rel = Rel::GE;
    lo.rhs = k2 * (bounds.pi.lo + bounds.sol0.lo) + d1_rational(f.size()) - widen;
    lo.tag = "face-area";
    sys.rows.push_back(std::move(lo));
  }

  // Quadrilateral angles lie between alpha4 and beta4; angles of larger
  // faces between alpha5 = alpha4 and beta5 = 2*pi (the interior-angle
  // table for contact polygons).
  for (int d = 0; d < h.dart_count(); ++d) {
    if (var_of[d] < 0) continue;
    size_t j = static_cast<size_t>(var_of[d]);
    LpRow lo;
    lo.coeffs = zero_row();
    lo.coeffs[j] = 1;
    lo.rel = Rel::GE;
    lo.rhs = bounds.alpha4.lo - widen;
    lo.tag = is_quad[d] ? "quad-range" : "big-face-range";
    sys.rows.push_back(std::move(lo));
    LpRow hi;
    hi.coeffs = zero_row();
    hi.coeffs[j] = 1;
    hi.rel = Rel::LE;
    hi.rhs = (is_quad[d] ? bounds.beta4.hi : bounds.two_pi.hi) + widen;
    hi.tag = is_quad[d] ? "quad-range" : "big-face-range";
    sys.rows.push_back(std::move(hi));
  }

  // Opposite corners of each quadrilateral are equal: dart x pairs with
  // f^2(x) two steps around the face.
  for (const auto& f : faces.classes) {
    if (f.size() != 4) continue;
    for (int k = 0; k < 2; ++k) {
      LpRow eq;
      eq.coeffs = zero_row();
      eq.coeffs[var_of[f[k]]] += 1;
      eq.coeffs[var_of[f[k + 2]]] -= 1;
      eq.rel = Rel::EQ;
      eq.rhs = 0;
      eq.tag = "opposite-equality";
      sys.rows.push_back(std::move(eq));
    }
  }
  return sys;
}

std::optional<EliminationRecord> hexagon_rule(const Hypermap& h) {
  OrbitPartition faces = orbits(h, OrbitKind::face);
  for (const auto& f : faces.classes) {
    if (f.size() == 6) {
      EliminationRecord rec;
      rec.fate = EliminationRecord::Fate::hexagon_eliminated;
      rec.detail =
          "hexagonal face: contact sides have arc pi/3, so the perimeter is "
          "6*(pi/3) = 2*pi, but 2*pi is a strict upper bound on the perimeter "
          "of a geodesically convex spherical hexagon";
      return rec;
    }
  }
  return std::nullopt;
}

std::vector<EliminationRecord> eliminate(const std::vector<Hypermap>& candidates,
                                         const AngleBounds& bounds) {
  const Rational robust = rational_from_decimal("0.000001");
  std::vector<EliminationRecord> out;
  out.reserve(candidates.size());
  for (const Hypermap& h : candidates) {
    if (auto hex = hexagon_rule(h)) {
      out.push_back(std::move(*hex));
      continue;
    }
    // Widened bounds make the system easier; infeasibility is then robust.
    LpSystem widened = build_angle_system(h, bounds, robust);
    FeasibilityVerdict v = solve(widened);
    EliminationRecord rec;
    if (!verdict_feasible(v)) {
      rec.fate = EliminationRecord::Fate::lp_infeasible;
      rec.detail = "angle system infeasible under 1e-6 widened bounds";
      rec.certificate = std::get<LpInfeasible>(v);
      out.push_back(std::move(rec));
      continue;
    }
    // Survivors must stay feasible when the bounds are tightened.
    LpSystem tightened = build_angle_system(h, bounds, -robust);
    FeasibilityVerdict vt = solve(tightened);
    if (!verdict_feasible(vt))
      throw LpError("candidate feasible only in the widened system; margins too thin");
    rec.fate = EliminationRecord::Fate::survivor;
    rec.detail = "angle system feasible under 1e-6 tightened bounds";
    rec.witness = std::get<LpFeasible>(vt);
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace kiss12
