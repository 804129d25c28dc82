#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kiss12/enumerate.hpp"
#include "kiss12/fan.hpp"
#include "kiss12/lpfeas.hpp"
#include "test_util.hpp"

using namespace kiss12;

namespace {

Hypermap reference_map(const KissingConfig& cfg) {
  Fan fan{cfg.points, contact_edges(cfg)};
  return build_hypermap(fan).map;
}

LpRow row(std::vector<Rational> c, Rel rel, Rational rhs, std::string tag = "") {
  return LpRow{std::move(c), rel, std::move(rhs), std::move(tag)};
}

}  // namespace

TEST_CASE("rational parsing and enclosures") {
  CHECK(rational_from_decimal("0.206") == Rational(206, 1000));
  CHECK(rational_from_decimal("-1.5") == Rational(-3, 2));
  CHECK(rational_from_decimal("12") == Rational(12));
  CHECK_THROWS_AS(rational_from_decimal("1.2.3"), Malformed);

  for (double v : {0.0, 1.26, 3.14159265358979, -2.718281828}) {
    RationalEnclosure enc = enclose(v);
    CHECK(enc.lo.convert_to<double>() <= v);
    CHECK(enc.hi.convert_to<double>() >= v);
    CHECK((enc.hi - enc.lo).convert_to<double>() <= 1e-9);
  }
}

TEST_CASE("canonical infeasible pair") {
  LpSystem sys;
  sys.vars = {"x"};
  sys.rows.push_back(row({Rational(1)}, Rel::GE, Rational(1)));
  sys.rows.push_back(row({Rational(1)}, Rel::LE, Rational(0)));
  FeasibilityVerdict v = solve(sys);
  REQUIRE_FALSE(verdict_feasible(v));
  const auto& cert = std::get<LpInfeasible>(v).multipliers;
  CHECK(validate_certificate(sys, cert));
  // Normalized rows are -x <= -1 and x <= 0: multipliers (1,1) certify.
  CHECK(cert.size() == 2);
  CHECK(cert[0] == cert[1]);
  CHECK(cert[0] > 0);
}

TEST_CASE("simple feasible system") {
  LpSystem sys;
  sys.vars = {"x", "y"};
  sys.rows.push_back(row({Rational(1), Rational(1)}, Rel::EQ, Rational(2)));
  sys.rows.push_back(row({Rational(1), Rational(0)}, Rel::GE, Rational(0)));
  sys.rows.push_back(row({Rational(0), Rational(1)}, Rel::GE, Rational(0)));
  FeasibilityVerdict v = solve(sys);
  REQUIRE(verdict_feasible(v));
  CHECK(validate_witness(sys, std::get<LpFeasible>(v).witness));
}

TEST_CASE("random systems always self-validate") {
  std::mt19937 rng(555);
  std::uniform_int_distribution<int> coeff(-4, 4);
  int feas = 0, infeas = 0;
  for (int trial = 0; trial < 200; ++trial) {
    LpSystem sys;
    int nv = 1 + static_cast<int>(rng() % 4);
    for (int j = 0; j < nv; ++j) sys.vars.push_back("v" + std::to_string(j));
    int nr = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < nr; ++i) {
      std::vector<Rational> c(nv);
      for (auto& x : c) x = coeff(rng);
      Rel rel = static_cast<Rel>(rng() % 3);
      sys.rows.push_back(row(std::move(c), rel, Rational(coeff(rng))));
    }
    FeasibilityVerdict v = solve(sys);
    if (verdict_feasible(v)) {
      ++feas;
      CHECK(validate_witness(sys, std::get<LpFeasible>(v).witness));
    } else {
      ++infeas;
      CHECK(validate_certificate(sys, std::get<LpInfeasible>(v).multipliers));
    }
  }
  CHECK(feas > 0);
  CHECK(infeas > 0);
}

TEST_CASE("angle system structure for FCC") {
  Hypermap h = reference_map(fcc_points());
  LpSystem sys = build_angle_system(h, default_angle_bounds());
  CHECK(sys.vars.size() == 24);  // six quadrilaterals, four darts each
  int node_sum = 0, quad_range = 0, opposite = 0, face_area = 0;
  for (const LpRow& r : sys.rows) {
    if (r.tag == "node-sum") ++node_sum;
    if (r.tag == "quad-range") ++quad_range;
    if (r.tag == "opposite-equality") ++opposite;
    if (r.tag == "face-area") ++face_area;
  }
  CHECK(node_sum == 24);    // twelve nodes, two-sided enclosures
  CHECK(quad_range == 48);  // 24 variables, lower and upper
  CHECK(opposite == 12);    // two equalities per quadrilateral
  CHECK(face_area == 6);

  FeasibilityVerdict v = solve(sys);
  REQUIRE(verdict_feasible(v));

  // The geometric solution: every quadrilateral angle is pi - arccos(1/3).
  // A 1e-14 rational approximation sits well inside the 1e-10 enclosures.
  Rational angle = enclose(std::numbers::pi - std::acos(1.0 / 3.0), 14, 0).lo;
  std::vector<Rational> geometric(24, angle);
  CHECK(validate_witness(sys, geometric));
}

TEST_CASE("angle system for HCP is feasible") {
  Hypermap h = reference_map(hcp_points());
  LpSystem sys = build_angle_system(h, default_angle_bounds());
  CHECK(sys.vars.size() == 24);
  CHECK(verdict_feasible(solve(sys)));
}

TEST_CASE("hexagon perimeter rule") {
  CHECK_FALSE(hexagon_rule(reference_map(fcc_points())).has_value());
  CHECK_FALSE(hexagon_rule(reference_map(hcp_points())).has_value());

  // Hexagonal prism map: two hexagons and six squares on twelve nodes.
  std::vector<std::vector<int>> rot(12);
  for (int i = 0; i < 6; ++i) {
    int in = (i + 1) % 6, ip = (i + 5) % 6;
    rot[i] = {in, 6 + i, ip};          // top ring
    rot[6 + i] = {6 + in, i, 6 + ip};  // bottom ring
  }
  Hypermap prism = testutil::rotation_system_hypermap(rot);
  auto faces = orbits(prism, OrbitKind::face);
  bool has_hex = false;
  for (const auto& f : faces.classes)
    if (f.size() == 6) has_hex = true;
  REQUIRE(has_hex);
  auto rec = hexagon_rule(prism);
  REQUIRE(rec.has_value());
  CHECK(rec->fate == EliminationRecord::Fate::hexagon_eliminated);
}

TEST_CASE("eliminate keeps FCC as a survivor") {
  std::vector<Hypermap> cands = {reference_map(fcc_points())};
  auto recs = eliminate(cands, default_angle_bounds());
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].fate == EliminationRecord::Fate::survivor);
  REQUIRE(recs[0].witness.has_value());
}

TEST_CASE("full elimination of the classification output") {
  ClassificationResult r = enumerate_tame_contact(EnumConfig{});
  REQUIRE(r.classes.size() == 8);
  std::vector<Hypermap> cands;
  for (const auto& c : r.classes) cands.push_back(c.map);
  auto recs = eliminate(cands, default_angle_bounds());
  int survivors = 0, lp = 0, hex = 0;
  for (size_t i = 0; i < recs.size(); ++i) {
    switch (recs[i].fate) {
      case EliminationRecord::Fate::survivor:
        ++survivors;
        CHECK(recs[i].witness.has_value());
        break;
      case EliminationRecord::Fate::lp_infeasible: {
        ++lp;
        REQUIRE(recs[i].certificate.has_value());
        LpSystem widened = build_angle_system(cands[i], default_angle_bounds(),
                                              rational_from_decimal("0.000001"));
        CHECK(validate_certificate(widened, recs[i].certificate->multipliers));
        break;
      }
      case EliminationRecord::Fate::hexagon_eliminated:
        ++hex;
        break;
    }
  }
  CHECK(survivors == 2);
  CHECK(lp == 5);
  CHECK(hex == 1);

  CanonicalCode fcc = canonical_code(reference_map(fcc_points()), true);
  CanonicalCode hcp = canonical_code(reference_map(hcp_points()), true);
  std::set<CanonicalCode> surv;
  for (size_t i = 0; i < recs.size(); ++i)
    if (recs[i].fate == EliminationRecord::Fate::survivor)
      surv.insert(canonical_code(cands[i], true));
  CHECK(surv == std::set<CanonicalCode>{fcc, hcp});
}
