#include "kiss12/tame.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "kiss12/geometry.hpp"

namespace kiss12 {

namespace {
constexpr double kPi = std::numbers::pi;
}

double BoundTables::d1(int k) const {
  if (k <= 3) return 0.0;
  if (k <= 8) return 0.206 + 0.27 * (k - 4);
  return tgt;
}

double BoundTables::d2(int r, int s) const {
  if (r == 3 && s == 0) return 0.0;
  return 0.103 * (2 - s) + 0.27 * (r + 2 * s - 4);
}

double BoundTables::d3(int r, int s, int t) const {
  if (r == 3 && s == 0 && t == 0) return 0.0;
  if (r == 2 && s == 0 && t == 1) return 0.0;
  return 0.103 * (2 - s) + 0.27 * (r + 2 * s + 2 * t - 4);
}

double BoundTables::b(int p, int q) const {
  if (q == 3 && (p == 0 || p == 1)) return 0.618;
  if (p == 2 && q == 2) return 0.412;
  return tgt;
}

double BoundTables::alpha(int k) const {
  if (k <= 3) return alpha34;
  return alpha45;  // same lower bound for quadrilaterals and larger
}

double BoundTables::beta(int k) const {
  if (k <= 3) return alpha34;
  if (k == 4) return beta44;
  return 2.0 * kPi;
}

RationalEnclosure BoundTables::alpha_enc(int k) const { return enclose(alpha(k)); }
RationalEnclosure BoundTables::beta_enc(int k) const {
  if (k >= 5) {
    // beta5 = 2*pi exactly; reuse the 2*pi enclosure.
    return enclose(2.0 * kPi);
  }
  return enclose(beta(k));
}
RationalEnclosure BoundTables::two_pi_enc() const { return enclose(2.0 * kPi); }

const BoundTables& tables() {
  static const BoundTables tb = [] {
    BoundTables t;
    const double h0 = Constants::get().h0;
    t.tgt = Constants::get().tgt;
    t.alpha34 = dih(2, 2, 2, 2, 2, 2);
    t.alpha45 = dih(2, 2, 2, 2 * h0, 2, 2);
    t.beta44 = 2.0 * dih(2, 2, 2, 2, 2 * h0, 2);
    return t;
  }();
  return tb;
}

std::map<int, NodeType> node_types(const Hypermap& h) {
  StructureReport sr = check_structure(h);
  if (!sr.biconnected)
    throw NotBiconnected("node_types requires a biconnected hypermap");
  OrbitPartition nodes = orbits(h, OrbitKind::node);
  OrbitPartition faces = orbits(h, OrbitKind::face);
  std::map<int, NodeType> out;
  for (int ni = 0; ni < nodes.count(); ++ni) {
    NodeType t;
    for (int d : nodes.classes[ni]) {
      size_t k = faces.classes[faces.class_of[d]].size();
      if (k == 3)
        ++t.p;
      else if (k == 4)
        ++t.q;
      else
        ++t.r;
    }
    out[ni] = t;
  }
  return out;
}

bool type_admissible(const NodeType& t) {
  const BoundTables& tb = tables();
  RationalEnclosure a3 = tb.alpha_enc(3), a4 = tb.alpha_enc(4), a5 = tb.alpha_enc(5);
  RationalEnclosure b3 = tb.beta_enc(3), b4 = tb.beta_enc(4);
  RationalEnclosure two_pi = tb.two_pi_enc();
  Rational alo = t.p * a3.lo + t.q * a4.lo + t.r * a5.lo;
  Rational ahi = t.p * a3.hi + t.q * a4.hi + t.r * a5.hi;
  bool alpha_in = ahi <= two_pi.lo;
  bool alpha_out = alo > two_pi.hi;
  // beta5 is exactly 2*pi, so one large face settles the upper side; the
  // remaining cases use genuine enclosures.
  bool beta_in, beta_out;
  if (t.r >= 1) {
    beta_in = true;
    beta_out = false;
  } else {
    Rational blo = t.p * b3.lo + t.q * b4.lo;
    Rational bhi = t.p * b3.hi + t.q * b4.hi;
    beta_in = blo >= two_pi.hi;
    beta_out = bhi < two_pi.lo;
  }
  bool in = alpha_in && beta_in;
  bool out = alpha_out || beta_out;
  if (in == out)
    throw TameError("node type admissibility not robust under enclosures");
  return in;
}

std::set<std::pair<int, int>> admissible_node_types() {
  std::set<std::pair<int, int>> r0;
  for (int p = 0; p <= 8; ++p)
    for (int q = 0; p + q <= 8; ++q)
      for (int r = 0; p + q + r <= 8; ++r) {
        if (p + q + r == 0) continue;
        NodeType t{p, q, r};
        bool ok = type_admissible(t);
        if (ok && p + q + r >= 5)
          throw TameError("interior-angle scan admitted a node of size >= 5");
        if (ok && r == 0) r0.insert({p, q});
      }
  std::set<std::pair<int, int>> expected{{0, 3}, {1, 3}, {2, 2}};
  if (r0 != expected)
    throw TameError("interior-angle scan did not return the three expected types");
  return r0;
}

namespace {

// Feasibility of the weight constraints with total <= limit.
LpSystem weight_system(const std::vector<int>& face_sizes,
                       const std::vector<std::vector<int>>& faces_at_node,
                       const std::vector<NodeType>& types, const BoundTables& tb,
                       const Rational& limit) {
  LpSystem sys;
  size_t nf = face_sizes.size();
  for (size_t i = 0; i < nf; ++i) sys.vars.push_back("tau_" + std::to_string(i));
  auto zero = [nf]() { return std::vector<Rational>(nf, Rational(0)); };

  auto dec = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return rational_from_decimal(buf);
  };

  for (size_t i = 0; i < nf; ++i) {
    LpRow lo;
    lo.coeffs = zero();
    lo.coeffs[i] = 1;
    lo.rel = Rel::GE;
    lo.rhs = dec(tb.d1(face_sizes[i]));
    lo.tag = "face-bound";
    sys.rows.push_back(std::move(lo));
  }
  for (size_t v = 0; v < faces_at_node.size(); ++v) {
    const NodeType& t = types[v];
    if (t.r != 0) continue;  // b applies only at (p,q,0) nodes
    LpRow row;
    row.coeffs = zero();
    for (int fi : faces_at_node[v]) row.coeffs[fi] += 1;
    row.rel = Rel::GE;
    row.rhs = dec(tb.b(t.p, t.q));
    row.tag = "node-bound";
    sys.rows.push_back(std::move(row));
  }
  LpRow total;
  total.coeffs = std::vector<Rational>(nf, Rational(1));
  total.rel = Rel::LE;
  total.rhs = limit;
  total.tag = "total";
  sys.rows.push_back(std::move(total));
  return sys;
}

}  // namespace

std::optional<WeightAssignment> weight_feasible(const Hypermap& h, const BoundTables& tb) {
  OrbitPartition faces = orbits(h, OrbitKind::face);
  OrbitPartition nodes = orbits(h, OrbitKind::node);
  std::vector<int> face_sizes;
  for (const auto& f : faces.classes) face_sizes.push_back(static_cast<int>(f.size()));
  std::vector<std::vector<int>> faces_at_node(nodes.count());
  std::vector<NodeType> types(nodes.count());
  std::map<int, NodeType> tm = node_types(h);  // requires biconnected
  for (int v = 0; v < nodes.count(); ++v) {
    types[v] = tm.at(v);
    std::set<int> fs;
    for (int d : nodes.classes[v]) fs.insert(faces.class_of[d]);
    faces_at_node[v].assign(fs.begin(), fs.end());
  }

  const Rational slack = Rational(1) / Rational(1000000000);
  const Rational tgt = rational_from_decimal("1.541");
  Rational hi_limit = tgt - slack;

  LpSystem at_limit = weight_system(face_sizes, faces_at_node, types, tb, hi_limit);
  FeasibilityVerdict v = solve(at_limit);
  if (!verdict_feasible(v)) return std::nullopt;

  // Bisect the total-weight limit down to the optimum.
  Rational lo = 0, hi = hi_limit;
  std::vector<Rational> witness = std::get<LpFeasible>(v).witness;
  const Rational width = Rational(1) / Rational(2000000000);
  while (hi - lo > width) {
    Rational mid = (lo + hi) / 2;
    FeasibilityVerdict vm =
        solve(weight_system(face_sizes, faces_at_node, types, tb, mid));
    if (verdict_feasible(vm)) {
      hi = mid;
      witness = std::get<LpFeasible>(vm).witness;
    } else {
      lo = mid;
    }
  }

  WeightAssignment wa;
  wa.total = 0;
  for (const Rational& t : witness) {
    wa.per_face.push_back(t.convert_to<double>());
    wa.total += wa.per_face.back();
  }
  return wa;
}

TameReport is_tame_contact(const Hypermap& h) {
  TameReport r;
  StructureReport sr = check_structure(h);
  r.biconnected = sr.biconnected;
  r.plain_planar = sr.plain && sr.planar;
  r.nondegenerate = sr.nondegenerate;
  r.no_loops = sr.no_loops;
  r.no_double_join = sr.no_double_join;

  OrbitPartition faces = orbits(h, OrbitKind::face);
  OrbitPartition nodes = orbits(h, OrbitKind::node);
  r.face_count_ok = faces.count() >= 2;
  r.face_sizes_ok = true;
  for (const auto& f : faces.classes)
    if (f.size() < 3 || f.size() > 8) r.face_sizes_ok = false;
  r.node_count_ok = nodes.count() == 12;
  r.node_sizes_ok = true;
  for (const auto& nd : nodes.classes)
    if (nd.size() < 2 || nd.size() > 4) r.node_sizes_ok = false;

  bool structural = r.biconnected && r.plain_planar && r.nondegenerate &&
                    r.no_loops && r.no_double_join && r.face_count_ok &&
                    r.face_sizes_ok && r.node_count_ok && r.node_sizes_ok;
  if (structural) {
    r.weights = weight_feasible(h, tables());
    r.weights_ok = r.weights.has_value();
  }

  if (!r.biconnected) r.failure = "biconnected";
  else if (!r.plain_planar) r.failure = "plain-planar";
  else if (!r.nondegenerate) r.failure = "nondegenerate";
  else if (!r.no_loops) r.failure = "no-loops";
  else if (!r.no_double_join) r.failure = "no-double-join";
  else if (!r.face_count_ok) r.failure = "face-count";
  else if (!r.face_sizes_ok) r.failure = "face-size";
  else if (!r.node_count_ok) r.failure = "node-count";
  else if (!r.node_sizes_ok) r.failure = "node-size";
  else if (!r.weights_ok) r.failure = "weights";
  return r;
}

}  // namespace kiss12
