#include "kiss12/fan.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace kiss12 {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGeomTol = 1e-9;

double sqrt8() { return std::sqrt(8.0); }

}  // namespace

void validate_config(const KissingConfig& cfg) {
  if (cfg.points.size() != 12)
    throw InvalidConfig("kissing configuration must have exactly 12 points");
  const double h0 = Constants::get().h0;
  for (const Vec3& p : cfg.points)
    if (std::abs(norm(p) - 2.0) > kEqTol)
      throw InvalidConfig("point not on the radius-2 sphere");
  for (size_t i = 0; i < cfg.points.size(); ++i) {
    for (size_t j = i + 1; j < cfg.points.size(); ++j) {
      double d = dist(cfg.points[i], cfg.points[j]);
      if (std::abs(d - 2.0) > kEqTol && d < 2.0 * h0 - kEqTol)
        throw InvalidConfig("pair distance neither 2 nor >= 2*h0");
    }
  }
}

EdgeSet contact_edges(const KissingConfig& cfg) {
  validate_config(cfg);
  EdgeSet out;
  for (size_t i = 0; i < cfg.points.size(); ++i)
    for (size_t j = i + 1; j < cfg.points.size(); ++j)
      if (std::abs(dist(cfg.points[i], cfg.points[j]) - 2.0) <= kEqTol)
        out.push_back({static_cast<int>(i), static_cast<int>(j)});
  return out;
}

EdgeSet extended_edges(const KissingConfig& cfg) {
  validate_config(cfg);
  EdgeSet out;
  for (size_t i = 0; i < cfg.points.size(); ++i)
    for (size_t j = i + 1; j < cfg.points.size(); ++j) {
      double d = dist(cfg.points[i], cfg.points[j]);
      if (d >= 2.0 - kEqTol && d < sqrt8() - kEqTol)
        out.push_back({static_cast<int>(i), static_cast<int>(j)});
    }
  return out;
}

namespace {

// Coefficients of q in the 2D cone spanned by x and y (x, y independent).
// Solves q = a*x + b*y by normal equations restricted to span(x,y).
struct ConeCoeff {
  double a, b;
  bool in_span;
};

ConeCoeff decompose(const Vec3& q, const Vec3& x, const Vec3& y) {
  Vec3 nrm = cross(x, y);
  double nn = norm(nrm);
  ConeCoeff r{0, 0, false};
  if (nn < 1e-12) return r;
  double off = dot(q, nrm) / nn;
  r.in_span = std::abs(off) <= kGeomTol * std::max(1.0, norm(q));
  double xx = dot(x, x), xy = dot(x, y), yy = dot(y, y);
  double det = xx * yy - xy * xy;
  double qx = dot(q, x), qy = dot(q, y);
  r.a = (qx * yy - qy * xy) / det;
  r.b = (qy * xx - qx * xy) / det;
  return r;
}

bool nontrivially_in_cone(const ConeCoeff& c) {
  return c.in_span && c.a > -kGeomTol && c.b > -kGeomTol &&
         (c.a > kGeomTol || c.b > kGeomTol);
}

// True when the blades over {v,w} and {u,z} (disjoint endpoint sets) meet
// beyond the origin.
bool blades_overlap_disjoint(const Vec3& v, const Vec3& w, const Vec3& u, const Vec3& z) {
  Vec3 n1 = cross(v, w);
  Vec3 n2 = cross(u, z);
  Vec3 d = cross(n1, n2);
  double dn = norm(d);
  if (dn > kGeomTol * norm(n1) * norm(n2)) {
    // Transversal planes: the cones can meet only along the common line.
    d = (1.0 / dn) * d;
    Vec3 dneg = -1.0 * d;
    return (nontrivially_in_cone(decompose(d, v, w)) &&
            nontrivially_in_cone(decompose(d, u, z))) ||
           (nontrivially_in_cone(decompose(dneg, v, w)) &&
            nontrivially_in_cone(decompose(dneg, u, z)));
  }
  // Coplanar sectors: a 2D overlap exposes a generator of one cone inside
  // the other.
  return nontrivially_in_cone(decompose(u, v, w)) ||
         nontrivially_in_cone(decompose(z, v, w)) ||
         nontrivially_in_cone(decompose(v, u, z)) ||
         nontrivially_in_cone(decompose(w, u, z));
}

// Blades sharing the endpoint v: the intersection must be exactly ray(v).
bool blades_overlap_shared(const Vec3& v, const Vec3& w, const Vec3& z) {
  Vec3 n1 = cross(v, w);
  Vec3 n2 = cross(v, z);
  if (norm(cross(n1, n2)) > kGeomTol * norm(n1) * norm(n2))
    return false;  // distinct planes through v meet in the line of v only
  ConeCoeff cz = decompose(z, v, w);
  ConeCoeff cw = decompose(w, v, z);
  return (cz.in_span && cz.a > -kGeomTol && cz.b > kGeomTol) ||
         (cw.in_span && cw.a > -kGeomTol && cw.b > kGeomTol);
}

}  // namespace

FanVerdict check_fan(const std::vector<Vec3>& points, const EdgeSet& edges) {
  FanVerdict v;
  auto fail = [&v](FanAxiom a, std::string detail) {
    v.ok = false;
    v.violated = a;
    v.detail = std::move(detail);
    return v;
  };

  if (points.empty()) return fail(FanAxiom::cardinality, "empty point set");
  for (size_t i = 0; i < points.size(); ++i)
    if (norm(points[i]) <= kGeomTol)
      return fail(FanAxiom::origin, "point " + std::to_string(i) + " is the origin");
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= static_cast<int>(points.size()) ||
        b >= static_cast<int>(points.size()) || a == b)
      return fail(FanAxiom::cardinality, "edge references an invalid point");
    Vec3 c = cross(points[a], points[b]);
    if (norm(c) <= kGeomTol * norm(points[a]) * norm(points[b]))
      return fail(FanAxiom::nonparallel,
                  "edge {" + std::to_string(a) + "," + std::to_string(b) +
                      "} collinear with the origin");
  }

  auto edge_name = [](int a, int b) {
    return "{" + std::to_string(a) + "," + std::to_string(b) + "}";
  };

  // Pairwise blade intersections over E and the singleton rays.
  for (size_t i = 0; i < edges.size(); ++i) {
    for (size_t j = i + 1; j < edges.size(); ++j) {
      auto [a, b] = edges[i];
      auto [c, d] = edges[j];
      int shared = -1, w1 = -1, w2 = -1;
      if (a == c) { shared = a; w1 = b; w2 = d; }
      else if (a == d) { shared = a; w1 = b; w2 = c; }
      else if (b == c) { shared = b; w1 = a; w2 = d; }
      else if (b == d) { shared = b; w1 = a; w2 = c; }
      bool bad = shared >= 0
                     ? blades_overlap_shared(points[shared], points[w1], points[w2])
                     : blades_overlap_disjoint(points[a], points[b], points[c], points[d]);
      if (bad)
        return fail(FanAxiom::intersection,
                    "blades " + edge_name(a, b) + " and " + edge_name(c, d) + " overlap");
    }
  }
  for (size_t i = 0; i < points.size(); ++i) {
    for (const auto& [a, b] : edges) {
      int pi = static_cast<int>(i);
      if (pi == a || pi == b) continue;
      if (nontrivially_in_cone(decompose(points[i], points[a], points[b])))
        return fail(FanAxiom::intersection,
                    "ray " + std::to_string(i) + " lies in blade " + edge_name(a, b));
    }
    for (size_t j = i + 1; j < points.size(); ++j) {
      Vec3 c = cross(points[i], points[j]);
      if (norm(c) <= kGeomTol * norm(points[i]) * norm(points[j]) &&
          dot(points[i], points[j]) > 0)
        return fail(FanAxiom::intersection,
                    "rays " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
    }
  }
  return v;
}

FanHypermap build_hypermap(const Fan& fan) {
  FanVerdict verdict = check_fan(fan.points, fan.edges);
  if (!verdict.ok) throw FanAxiomViolation("fan axioms fail: " + verdict.detail);

  int np = static_cast<int>(fan.points.size());
  std::vector<std::vector<int>> nbrs(np);
  for (auto [a, b] : fan.edges) {
    nbrs[a].push_back(b);
    nbrs[b].push_back(a);
  }

  // sigma(v): neighbors in counterclockwise azimuthal order.
  std::vector<std::map<int, int>> sigma(np);  // neighbor -> cyclic successor
  for (int vtx = 0; vtx < np; ++vtx) {
    auto& list = nbrs[vtx];
    if (list.empty()) continue;
    std::sort(list.begin(), list.end());
    int ref = list.front();
    std::vector<std::pair<double, int>> by_angle;
    by_angle.reserve(list.size());
    for (int w : list) {
      double ang = w == ref ? 0.0 : azim(fan.points[vtx], fan.points[ref], fan.points[w]);
      by_angle.push_back({ang, w});
    }
    std::sort(by_angle.begin(), by_angle.end());
    for (size_t i = 0; i + 1 < by_angle.size(); ++i)
      if (std::abs(by_angle[i].first - by_angle[i + 1].first) <= kGeomTol)
        throw FanAxiomViolation("two neighbors of node " + std::to_string(vtx) +
                                " share an azimuth");
    for (size_t i = 0; i < by_angle.size(); ++i)
      sigma[vtx][by_angle[i].second] = by_angle[(i + 1) % by_angle.size()].second;
  }

  std::vector<std::pair<int, int>> labels;
  std::map<std::pair<int, int>, int> index;
  for (auto [a, b] : fan.edges) {
    index[{a, b}] = static_cast<int>(labels.size());
    labels.push_back({a, b});
    index[{b, a}] = static_cast<int>(labels.size());
    labels.push_back({b, a});
  }
  for (int vtx = 0; vtx < np; ++vtx) {
    if (nbrs[vtx].empty()) {
      index[{vtx, vtx}] = static_cast<int>(labels.size());
      labels.push_back({vtx, vtx});
    }
  }

  int nd = static_cast<int>(labels.size());
  Perm e(nd), n(nd);
  for (int x = 0; x < nd; ++x) {
    auto [a, b] = labels[x];
    if (a == b) {
      e[x] = x;
      n[x] = x;
    } else {
      e[x] = index.at({b, a});
      n[x] = index.at({a, sigma[a].at(b)});
    }
  }
  return FanHypermap{Hypermap(nd, std::move(e), std::move(n)), std::move(labels)};
}

namespace {

// The face as a node cycle; throws NotAFace unless the darts form one f-orbit.
std::vector<int> face_node_cycle(const FanHypermap& fh, const std::vector<int>& face_darts) {
  if (face_darts.empty()) throw NotAFace("empty dart set");
  const Hypermap& h = fh.map;
  std::vector<char> in_face(h.dart_count(), 0);
  for (int x : face_darts) {
    if (x < 0 || x >= h.dart_count()) throw NotAFace("dart out of range");
    in_face[x] = 1;
  }
  std::vector<int> cycle;
  int x = face_darts.front();
  for (size_t i = 0; i < face_darts.size(); ++i) {
    if (!in_face[x]) throw NotAFace("darts are not a single face orbit");
    cycle.push_back(x);
    x = h.f(x);
  }
  if (x != face_darts.front() || cycle.size() != face_darts.size())
    throw NotAFace("darts are not a single face orbit");
  std::vector<int> nodes;
  for (int d : cycle) nodes.push_back(fh.dart_label[d].first);
  return nodes;
}

}  // namespace

LocalFan localize(const Fan& fan, const FanHypermap& fh, const std::vector<int>& face_darts) {
  std::vector<int> node_cycle = face_node_cycle(fh, face_darts);
  LocalFan lf;
  lf.face = face_darts;
  lf.k = static_cast<int>(face_darts.size());
  std::vector<char> seen(fan.points.size(), 0);
  for (int v : node_cycle) {
    if (!seen[v]) {
      seen[v] = 1;
      lf.nodes.push_back(v);
    }
  }
  for (int d : face_darts) {
    auto [a, b] = fh.dart_label[d];
    if (a == b) throw NotAFace("isolated dart cannot bound a face region");
    lf.edges.push_back({std::min(a, b), std::max(a, b)});
  }
  std::sort(lf.edges.begin(), lf.edges.end());
  lf.edges.erase(std::unique(lf.edges.begin(), lf.edges.end()), lf.edges.end());

  // Local-fan property: the restricted hypermap is dihedral of size 2k.
  std::map<int, int> relabel;
  Fan sub;
  for (int v : lf.nodes) {
    relabel[v] = static_cast<int>(sub.points.size());
    sub.points.push_back(fan.points[v]);
  }
  for (auto [a, b] : lf.edges) sub.edges.push_back({relabel[a], relabel[b]});
  FanHypermap subh = build_hypermap(sub);
  std::optional<int> k = is_dihedral(subh.map);
  if (!k || *k != lf.k)
    throw NotAFace("localization is not a local fan of matching size");
  return lf;
}

double face_tau(const Fan& fan, const FanHypermap& fh, const std::vector<int>& face_darts) {
  std::vector<int> node_cycle = face_node_cycle(fh, face_darts);
  std::vector<Vec3> poly;
  for (int v : node_cycle) poly.push_back(fan.points[v]);
  double sol = solid_angle_polygon(poly);
  double k = static_cast<double>(face_darts.size());
  return sol + (2.0 - k) * Constants::get().sol0;
}

KissingConfig fcc_points() {
  const double r = std::sqrt(2.0);
  KissingConfig cfg;
  cfg.points = {
      {r, r, 0}, {r, -r, 0}, {-r, r, 0}, {-r, -r, 0},
      {r, 0, r}, {r, 0, -r}, {-r, 0, r}, {-r, 0, -r},
      {0, r, r}, {0, r, -r}, {0, -r, r}, {0, -r, -r},
  };
  validate_config(cfg);
  return cfg;
}

KissingConfig hcp_points() {
  KissingConfig cfg;
  // Hexagonal equator of contacts plus two aligned polar triangles.
  for (int i = 0; i < 6; ++i) {
    double a = i * kPi / 3.0;
    cfg.points.push_back({2.0 * std::cos(a), 2.0 * std::sin(a), 0.0});
  }
  const double rho = 2.0 / std::sqrt(3.0);
  const double z = 2.0 * std::sqrt(6.0) / 3.0;
  for (int i = 0; i < 3; ++i) {
    double a = kPi / 6.0 + i * 2.0 * kPi / 3.0;
    cfg.points.push_back({rho * std::cos(a), rho * std::sin(a), z});
  }
  for (int i = 0; i < 3; ++i) {
    double a = kPi / 6.0 + i * 2.0 * kPi / 3.0;
    cfg.points.push_back({rho * std::cos(a), rho * std::sin(a), -z});
  }
  validate_config(cfg);
  return cfg;
}

}  // namespace kiss12
