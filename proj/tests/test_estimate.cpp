#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "kiss12/estimate.hpp"
#include "kiss12/tame.hpp"

using namespace kiss12;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("circumradius edge bound reproduces sqrt(32/3)") {
  double cap = circumradius_edge_bound({2, 2}, {2, 2});
  CHECK(cap == doctest::Approx(std::sqrt(32.0 / 3.0)).epsilon(1e-10));
  CHECK(certify_cap({2, 2}, {2, 2}, cap));
  // At the bound, the box minimum circumradius hits sqrt(3).
  CHECK(circumradius(2, 2, cap) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));
}

TEST_CASE("cap 3.27 is certified for three long edges") {
  CHECK(circumradius(3.0, 3.0, 3.27) > std::sqrt(3.0));
  CHECK(certify_cap({3.0, 2 * std::sqrt(3.0)}, {3.0, 2 * std::sqrt(3.0)}, 3.27));
}

TEST_CASE("vacuity box has no feasible triangle") {
  EdgeBox box;
  box.edge = {Interval{2, 2}, Interval{2.52, 2.6}, Interval{3.45, 2 * std::sqrt(3.0)}};
  box.cls = {EdgeClass::contact, EdgeClass::small_gap, EdgeClass::large};
  CHECK(min_circumradius_over_box(box) > std::sqrt(3.0));
}

TEST_CASE("min area over boxes") {
  const double sol0 = Constants::get().sol0;
  EdgeBox contact;
  contact.edge = {Interval{2, 2}, Interval{2, 2}, Interval{2, 2}};
  contact.cls = {EdgeClass::contact, EdgeClass::contact, EdgeClass::contact};
  CHECK(min_area_over_box(contact) == doctest::Approx(sol0).epsilon(1e-12));

  // The sharp corner of the two-contacts-one-long case lands exactly on sol0.
  EdgeBox sharp;
  sharp.edge = {Interval{2, 2}, Interval{2, 2}, Interval{3.0, std::sqrt(32.0 / 3.0)}};
  sharp.cls = {EdgeClass::contact, EdgeClass::contact, EdgeClass::large};
  CHECK(min_area_over_box(sharp) == doctest::Approx(sol0).epsilon(1e-10));

  EdgeBox all_long;
  all_long.edge = {Interval{3.0, 3.27}, Interval{3.0, 3.27}, Interval{3.0, 3.27}};
  all_long.cls = {EdgeClass::large, EdgeClass::large, EdgeClass::large};
  CHECK(min_area_over_box(all_long) >= kPi / 2);

  EdgeBox degenerate;
  degenerate.edge = {Interval{2, 2}, Interval{2, 2}, Interval{3.9999999, 4.0}};
  degenerate.cls = {EdgeClass::contact, EdgeClass::contact, EdgeClass::large};
  CHECK_THROWS_AS(min_area_over_box(degenerate), NothingRealizable);
}

TEST_CASE("corner minimum never beaten by random grids") {
  // Lexell: minimal-area triangles have extremal edges; grids confirm.
  std::mt19937 rng(31337);
  std::uniform_real_distribution<double> lo(2.0, 3.2);
  int done = 0;
  while (done < 200) {
    EdgeBox box;
    for (int i = 0; i < 3; ++i) {
      double a = lo(rng);
      double b = a + std::uniform_real_distribution<double>(0.0, 0.5)(rng);
      box.edge[i] = {a, b};
      box.cls[i] = EdgeClass::large;
    }
    try {
      min_area_over_box(box);  // throws if the grid beats the corners
      ++done;
    } catch (const NothingRealizable&) {
    }
  }
  CHECK(done == 200);
}

TEST_CASE("d3 case reports") {
  std::vector<CaseReport> reps = verify_d3_cases();
  CHECK(all_pass(reps));
  int sharp = 0;
  for (const CaseReport& r : reps) {
    INFO(r.id, " computed=", r.computed, " required=", r.required, " slack=", r.slack);
    CHECK(r.pass);
    if (r.sharp) {
      ++sharp;
      CHECK(std::abs(r.slack) <= 1e-9);
    } else if (r.id.find("vacuous") == std::string::npos &&
               r.id.find("cap") == std::string::npos) {
      CHECK(r.slack >= 1e-6);
    }
  }
  CHECK(sharp == 2);  // (3,0,0) and (2,0,1)
  // The all-long case also clears pi/2.
  for (const CaseReport& r : reps)
    if (r.id == "(0,0,3)") CHECK(r.computed >= kPi / 2 - 1e-9);
}

TEST_CASE("superadditivity") {
  std::vector<CaseReport> reps = verify_superadditivity();
  CHECK(all_pass(reps));
  bool excl = false;
  for (const CaseReport& r : reps)
    if (r.id == "superadditivity exclusions" && r.pass) excl = true;
  CHECK(excl);
}

TEST_CASE("face bounds") {
  const BoundTables& tb = tables();
  CaseReport r30 = verify_face_bound(3, 0);
  CHECK(r30.pass);
  CHECK(r30.computed == 0.0);
  CaseReport r40 = verify_face_bound(4, 0);
  CHECK(r40.pass);
  CHECK(r40.computed == doctest::Approx(0.206).epsilon(1e-12));
  CaseReport r90 = verify_face_bound(9, 0);
  CHECK(r90.pass);
  CHECK(r90.computed == doctest::Approx(tb.tgt).epsilon(1e-12));
  CHECK_THROWS_AS(verify_face_bound(2, 0), EstimateError);
}
