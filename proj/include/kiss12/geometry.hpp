#pragma once
// Euclidean and spherical trigonometry kernels on the radius-2 sphere:
// arcs, interior angles, areas, circumradii, dihedral angles, solid angles,
// azimuth, and the global constants of the verification.

#include <stdexcept>
#include <vector>

namespace kiss12 {

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct OutOfRange : GeometryError { using GeometryError::GeometryError; };
struct DegenerateTriangle : GeometryError { using GeometryError::GeometryError; };
struct NotEmbeddable : GeometryError { using GeometryError::GeometryError; };
struct NotRealizable : GeometryError { using GeometryError::GeometryError; };
struct NotATriangle : GeometryError { using GeometryError::GeometryError; };
struct SelfIntersecting : GeometryError { using GeometryError::GeometryError; };
struct Collinear : GeometryError { using GeometryError::GeometryError; };

// Global tolerance for floating-point equality assertions.
inline constexpr double kEqTol = 1e-9;

struct Vec3 {
  double x = 0, y = 0, z = 0;
};

Vec3 operator+(const Vec3& a, const Vec3& b);
Vec3 operator-(const Vec3& a, const Vec3& b);
Vec3 operator*(double s, const Vec3& a);
double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);
Vec3 normalized(const Vec3& a);
double dist(const Vec3& a, const Vec3& b);

// The constants every verification step refers back to.  All ball
// radii are 1, so contact points live on the sphere of radius 2.
struct Constants {
  double h0;     // truncation parameter, 1.26
  double tgt;    // weight target, 1.541
  double sol0;   // 3*arccos(1/3) - pi, the contact-triangle solid angle
  double total;  // 4*pi - 20*sol0, total weight of a twelve-point packing
  static const Constants& get();
};

// Truncated linear weight: 1 at h=1, 0 at h=h0.
double lfun(double h);

// Central angle subtended by a chord of length c on the radius-2 sphere.
double chord_to_arc(double c);

// Central angle between two points (any radius, not both zero).
double arc_between(const Vec3& a, const Vec3& b);

// Interior vertex angle of a spherical triangle from its three arcs,
// opposite side first (spherical law of cosines).
double spherical_angle(double opp, double adj1, double adj2);

// Dihedral angle of the simplex {0,v1,v2,v3} along the edge 0-v1, given the
// six edge lengths y1=|v1|, y2=|v2|, y3=|v3|, y4=|v2-v3|, y5=|v1-v3|,
// y6=|v1-v2|.  Computed by explicit coordinate embedding.
double dih(double y1, double y2, double y3, double y4, double y5, double y6);

// Spherical excess of the triangle with the given arcs (l'Huilier).
double triangle_area_from_arcs(double a, double b, double c);

// Same, with the sides given as Euclidean chords on the radius-2 sphere.
double triangle_area_from_chords(double c1, double c2, double c3);

// Euclidean circumradius abc/(4*area).  Returns +infinity for a flat
// (degenerate but triangle-inequality-respecting) triple.
double circumradius(double a, double b, double c);

// Solid angle at the origin of the spherical polygon with the given
// cyclically ordered vertices on the radius-2 sphere.  The polygon must be
// simple; boundary arcs may not cross.
double solid_angle_polygon(const std::vector<Vec3>& verts);

// Counterclockwise angle in [0,2pi) from the projection of u to the
// projection of w in the plane orthogonal to v (right-handed frame with
// v/|v| as the pole).
double azim(const Vec3& v, const Vec3& u, const Vec3& w);

}  // namespace kiss12
