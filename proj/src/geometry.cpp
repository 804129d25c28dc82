#include "kiss12/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace kiss12 {

namespace {
constexpr double kPi = std::numbers::pi;
// Degeneracy guard, well below kEqTol: inputs this close to a degenerate
// configuration are rejected rather than silently clamped.
constexpr double kDegTol = 1e-12;
}  // namespace

Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
Vec3 normalized(const Vec3& a) {
  double n = norm(a);
  if (n < kDegTol) throw GeometryError("normalized: zero vector");
  return (1.0 / n) * a;
}
double dist(const Vec3& a, const Vec3& b) { return norm(a - b); }

const Constants& Constants::get() {
  static const Constants c = [] {
    Constants k;
    k.h0 = 1.26;
    k.tgt = 1.541;
    k.sol0 = 3.0 * std::acos(1.0 / 3.0) - kPi;
    k.total = 4.0 * kPi - 20.0 * k.sol0;
    return k;
  }();
  return c;
}

double lfun(double h) {
  const Constants& c = Constants::get();
  return (c.h0 - h) / (c.h0 - 1.0);
}

double chord_to_arc(double c) {
  if (c < -kDegTol || c > 4.0 + kDegTol)
    throw OutOfRange("chord_to_arc: chord outside [0,4]");
  return 2.0 * std::asin(std::clamp(c / 4.0, 0.0, 1.0));
}

double arc_between(const Vec3& a, const Vec3& b) {
  return std::atan2(norm(cross(a, b)), dot(a, b));
}

double spherical_angle(double opp, double adj1, double adj2) {
  if (opp <= 0 || opp >= kPi || adj1 <= 0 || adj1 >= kPi || adj2 <= 0 || adj2 >= kPi)
    throw DegenerateTriangle("spherical_angle: arc outside (0,pi)");
  double denom = std::sin(adj1) * std::sin(adj2);
  if (denom < kDegTol)
    throw DegenerateTriangle("spherical_angle: vanishing denominator");
  double q = (std::cos(opp) - std::cos(adj1) * std::cos(adj2)) / denom;
  if (q < -1.0 - kEqTol || q > 1.0 + kEqTol)
    throw DegenerateTriangle("spherical_angle: arcs violate triangle inequality");
  return std::acos(std::clamp(q, -1.0, 1.0));
}

double dih(double y1, double y2, double y3, double y4, double y5, double y6) {
  // Embed: v1 on the z-axis, v2 in the xz half-plane (x>0), v3 with y>0.
  if (y1 < kDegTol) throw NotEmbeddable("dih: y1 vanishes");
  double z2 = (y1 * y1 + y2 * y2 - y6 * y6) / (2.0 * y1);
  double x2sq = y2 * y2 - z2 * z2;
  if (x2sq < kDegTol) throw NotEmbeddable("dih: v2 collinear with 0-v1 axis");
  double x2 = std::sqrt(x2sq);
  double z3 = (y1 * y1 + y3 * y3 - y5 * y5) / (2.0 * y1);
  double x3 = (y2 * y2 + y3 * y3 - y4 * y4 - 2.0 * z2 * z3) / (2.0 * x2);
  double hsq = y3 * y3 - z3 * z3 - x3 * x3;
  if (hsq < kDegTol) throw NotEmbeddable("dih: simplex is flat or impossible");
  double y3c = std::sqrt(hsq);
  // Angle between the half-planes through the z-axis containing v2 and v3.
  return std::atan2(y3c, x3);
}

double triangle_area_from_arcs(double a, double b, double c) {
  if (a <= kDegTol || b <= kDegTol || c <= kDegTol ||
      a >= kPi - kDegTol || b >= kPi - kDegTol || c >= kPi - kDegTol)
    throw NotRealizable("spherical triangle: arc outside (0,pi)");
  if (a + b + c >= 2.0 * kPi - kDegTol)
    throw NotRealizable("spherical triangle: arcs sum to 2pi or more");
  double s = 0.5 * (a + b + c);
  if (s - a < -kDegTol || s - b < -kDegTol || s - c < -kDegTol)
    throw NotRealizable("spherical triangle: triangle inequality fails");
  double t = std::tan(0.5 * s) * std::tan(0.5 * std::max(s - a, 0.0)) *
             std::tan(0.5 * std::max(s - b, 0.0)) * std::tan(0.5 * std::max(s - c, 0.0));
  if (t < 0.0) t = 0.0;
  return 4.0 * std::atan(std::sqrt(t));
}

double triangle_area_from_chords(double c1, double c2, double c3) {
  return triangle_area_from_arcs(chord_to_arc(c1), chord_to_arc(c2), chord_to_arc(c3));
}

double circumradius(double a, double b, double c) {
  if (a <= 0 || b <= 0 || c <= 0) throw NotATriangle("circumradius: nonpositive side");
  if (a > b + c + kDegTol || b > a + c + kDegTol || c > a + b + kDegTol)
    throw NotATriangle("circumradius: triangle inequality fails");
  // Numerically stable Heron (Kahan ordering).
  double s[3] = {a, b, c};
  std::sort(s, s + 3);  // s[2] >= s[1] >= s[0]
  double A = s[2], B = s[1], C = s[0];
  double t = (A + (B + C)) * (C - (A - B)) * (C + (A - B)) * (A + (B - C));
  if (t <= kDegTol) return std::numeric_limits<double>::infinity();
  double area4 = std::sqrt(t);  // 4*area
  return a * b * c / area4;
}

namespace {

// True when the great-circle arcs (a,b) and (c,d) cross at an interior point
// of both.
bool arcs_cross(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  Vec3 n1 = cross(a, b);
  Vec3 n2 = cross(c, d);
  Vec3 t = cross(n1, n2);
  double tn = norm(t);
  if (tn < kDegTol) return false;  // same great circle; treated as touching
  t = (1.0 / tn) * t;
  auto strictly_inside = [](const Vec3& p, const Vec3& q, const Vec3& x) {
    Vec3 n = cross(p, q);
    return dot(cross(p, x), n) > kDegTol && dot(cross(x, q), n) > kDegTol;
  };
  Vec3 tneg = -1.0 * t;
  return (strictly_inside(a, b, t) && strictly_inside(c, d, t)) ||
         (strictly_inside(a, b, tneg) && strictly_inside(c, d, tneg));
}

}  // namespace

double solid_angle_polygon(const std::vector<Vec3>& verts) {
  size_t n = verts.size();
  if (n < 3) throw NotRealizable("solid_angle_polygon: fewer than three vertices");
  for (const Vec3& p : verts)
    if (std::abs(norm(p) - 2.0) > kEqTol)
      throw NotRealizable("solid_angle_polygon: vertex not on the radius-2 sphere");
  // No two non-adjacent boundary arcs may cross.
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (arcs_cross(verts[i], verts[(i + 1) % n], verts[j], verts[(j + 1) % n]))
        throw SelfIntersecting("solid_angle_polygon: boundary arcs cross");
    }
  }
  double total = 0.0;
  for (size_t i = 1; i + 1 < n; ++i) {
    total += triangle_area_from_arcs(arc_between(verts[0], verts[i]),
                                     arc_between(verts[i], verts[i + 1]),
                                     arc_between(verts[0], verts[i + 1]));
  }
  return total;
}

double azim(const Vec3& v, const Vec3& u, const Vec3& w) {
  Vec3 ez = normalized(v);
  Vec3 pu = u - dot(u, ez) * ez;
  Vec3 pw = w - dot(w, ez) * ez;
  if (norm(pu) < kDegTol || norm(pw) < kDegTol)
    throw Collinear("azim: point on the axis through 0 and v");
  Vec3 e1 = normalized(pu);
  Vec3 e2 = cross(ez, e1);
  double theta = std::atan2(dot(pw, e2), dot(pw, e1));
  if (theta < 0) theta += 2.0 * kPi;
  if (theta >= 2.0 * kPi) theta -= 2.0 * kPi;
  return theta;
}

}  // namespace kiss12
