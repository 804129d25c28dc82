// Command-line driver: individual verification stages and the full pipeline.

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "kiss12/enumerate.hpp"
#include "kiss12/estimate.hpp"
#include "kiss12/fan.hpp"
#include "kiss12/json_io.hpp"
#include "kiss12/lpfeas.hpp"
#include "kiss12/tame.hpp"

using nlohmann::json;
using namespace kiss12;

namespace {

namespace fs = std::filesystem;

json constants_json() {
  const Constants& c = Constants::get();
  const BoundTables& tb = tables();
  return json{{"h0", c.h0},
              {"tgt", c.tgt},
              {"sol0", c.sol0},
              {"total", c.total},
              {"alpha3", tb.alpha(3)},
              {"alpha4", tb.alpha(4)},
              {"beta4", tb.beta(4)},
              {"beta5", tb.beta(5)},
              {"tolerance", kEqTol}};
}

Hypermap reference_map(const std::string& which) {
  KissingConfig cfg = which == "hcp" ? hcp_points() : fcc_points();
  Fan fan{cfg.points, contact_edges(cfg)};
  return build_hypermap(fan).map;
}

json tame_report_json(const TameReport& rep) {
  json j{{"biconnected", rep.biconnected},
         {"plain_planar", rep.plain_planar},
         {"nondegenerate", rep.nondegenerate},
         {"no_loops", rep.no_loops},
         {"no_double_join", rep.no_double_join},
         {"face_count", rep.face_count_ok},
         {"face_size", rep.face_sizes_ok},
         {"node_count", rep.node_count_ok},
         {"node_size", rep.node_sizes_ok},
         {"weights", rep.weights_ok},
         {"tame", rep.tame()}};
  if (!rep.failure.empty()) j["first_failure"] = rep.failure;
  if (rep.weights) {
    j["weight_assignment"] = rep.weights->per_face;
    j["weight_total"] = rep.weights->total;
  }
  return j;
}

json case_report_json(const CaseReport& r) {
  return json{{"case", r.id},           {"inequality", r.inequality},
              {"computed", r.computed}, {"required", r.required},
              {"slack", r.slack},       {"sharp", r.sharp},
              {"pass", r.pass},         {"note", r.note}};
}

json class_info_json(const ClassInfo& c) {
  json faces = json::object();
  for (auto [k, n] : c.faces_by_size) faces[std::to_string(k)] = n;
  json types = json::object();
  for (const auto& [t, n] : c.node_type_counts) types[t] = n;
  return json{{"code", code_hex(c.code)},
              {"hypermap", hypermap_to_json(c.map)},
              {"faces_by_size", faces},
              {"node_types", types}};
}

json metrics_json(const SearchMetrics& m) {
  return json{{"expanded", m.expanded},
              {"children", m.children},
              {"pruned_weight", m.pruned_weight},
              {"pruned_type", m.pruned_type},
              {"pruned_geometric", m.pruned_geo},
              {"pruned_walk", m.pruned_walk},
              {"completed", m.completed},
              {"tame", m.tame},
              {"duplicates", m.duplicates}};
}

json summary_json(const ClassificationResult& r) {
  json classes = json::array();
  for (const ClassInfo& c : r.classes) classes.push_back(class_info_json(c));
  return json{{"class_count", static_cast<int>(r.classes.size())},
              {"unfolded_class_count", r.unfolded_class_count},
              {"classes", classes},
              {"metrics", metrics_json(r.metrics)}};
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  json j;
  in >> j;
  return j;
}

json elimination_json(const std::vector<EliminationRecord>& recs,
                      const std::vector<std::string>& codes) {
  json arr = json::array();
  for (size_t i = 0; i < recs.size(); ++i) {
    json rec{{"code", codes[i]}};
    switch (recs[i].fate) {
      case EliminationRecord::Fate::survivor:
        rec["fate"] = "survivor";
        break;
      case EliminationRecord::Fate::lp_infeasible:
        rec["fate"] = "lp-infeasible";
        break;
      case EliminationRecord::Fate::hexagon_eliminated:
        rec["fate"] = "hexagon-eliminated";
        break;
    }
    rec["detail"] = recs[i].detail;
    if (recs[i].certificate) {
      json mults = json::array();
      for (const Rational& m : recs[i].certificate->multipliers)
        mults.push_back(m.str());
      rec["certificate"] = mults;
    }
    if (recs[i].witness) {
      json w = json::array();
      for (const Rational& x : recs[i].witness->witness) w.push_back(x.str());
      rec["witness"] = w;
    }
    arr.push_back(std::move(rec));
  }
  return arr;
}

struct StageClock {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

int run_prove(int jobs, const std::string& out_dir) {
  fs::create_directories(out_dir);
  json report;
  json timings;
  bool overall = true;

  {  // constants
    StageClock clock;
    const Constants& c = Constants::get();
    bool pass = std::abs(c.sol0 - 0.551285598) <= 1e-8 &&
                std::abs(c.total - 1.5406586) <= 1e-6 && c.total < c.tgt;
    report["stages"]["constants"] = {{"pass", pass}};
    report["constants"] = constants_json();
    timings["constants"] = clock.seconds();
    overall &= pass;
    std::cerr << (pass ? "[pass] " : "[FAIL] ") << "constants\n";
  }

  {  // main estimate cases + superadditivity
    StageClock clock;
    std::vector<CaseReport> cases = verify_d3_cases();
    std::vector<CaseReport> super = verify_superadditivity();
    json arr = json::array();
    for (const CaseReport& r : cases) arr.push_back(case_report_json(r));
    for (const CaseReport& r : super) arr.push_back(case_report_json(r));
    bool pass = all_pass(cases) && all_pass(super);
    report["stages"]["estimates"] = {{"pass", pass},
                                     {"cases", static_cast<int>(arr.size())}};
    report["estimates"] = arr;
    timings["estimates"] = clock.seconds();
    overall &= pass;
    std::cerr << (pass ? "[pass] " : "[FAIL] ") << "estimates\n";
  }

  {  // admissible node types
    StageClock clock;
    bool pass = false;
    try {
      auto types = admissible_node_types();
      pass = types == std::set<std::pair<int, int>>{{0, 3}, {1, 3}, {2, 2}};
      json arr = json::array();
      for (auto [p, q] : types) arr.push_back({p, q});
      report["node_types"] = arr;
    } catch (const TameError& err) {
      report["node_types"] = {{"error", err.what()}};
    }
    report["stages"]["node_types"] = {{"pass", pass}};
    timings["node_types"] = clock.seconds();
    overall &= pass;
    std::cerr << (pass ? "[pass] " : "[FAIL] ") << "node-types\n";
  }

  ClassificationResult result;
  {  // enumeration
    StageClock clock;
    EnumConfig cfg;
    cfg.jobs = jobs;
    result = enumerate_tame_contact(cfg);
    bool pass = result.classes.size() == 8;
    report["stages"]["enumeration"] = {
        {"pass", pass},
        {"classes", static_cast<int>(result.classes.size())},
        {"unfolded", result.unfolded_class_count}};
    json summary = summary_json(result);
    report["enumeration"] = summary;
    write_json(fs::path(out_dir) / "summary.json", summary);
    for (size_t i = 0; i < result.classes.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "class_%02zu.json", i);
      write_json(fs::path(out_dir) / name, hypermap_to_json(result.classes[i].map));
    }
    timings["enumeration"] = clock.seconds();
    overall &= pass;
    std::cerr << (pass ? "[pass] " : "[FAIL] ") << "enumeration ("
              << result.classes.size() << " classes)\n";
  }

  {  // elimination
    StageClock clock;
    std::vector<Hypermap> cands;
    std::vector<std::string> codes;
    for (const ClassInfo& c : result.classes) {
      cands.push_back(c.map);
      codes.push_back(code_hex(c.code));
    }
    auto recs = eliminate(cands, default_angle_bounds());
    int survivors = 0, lp = 0, hex = 0;
    std::set<CanonicalCode> surv;
    for (size_t i = 0; i < recs.size(); ++i) {
      if (recs[i].fate == EliminationRecord::Fate::survivor) {
        ++survivors;
        surv.insert(result.classes[i].code);
      }
      if (recs[i].fate == EliminationRecord::Fate::lp_infeasible) ++lp;
      if (recs[i].fate == EliminationRecord::Fate::hexagon_eliminated) ++hex;
    }
    CanonicalCode fcc = canonical_code(reference_map("fcc"), true);
    CanonicalCode hcp = canonical_code(reference_map("hcp"), true);
    bool surv_match = surv == std::set<CanonicalCode>{fcc, hcp};
    bool pass = survivors == 2 && lp == 5 && hex == 1 && surv_match;
    json fates = elimination_json(recs, codes);
    report["stages"]["elimination"] = {{"pass", pass},
                                       {"survivors", survivors},
                                       {"lp_infeasible", lp},
                                       {"hexagon_eliminated", hex},
                                       {"survivors_are_fcc_hcp", surv_match}};
    report["fates"] = fates;
    write_json(fs::path(out_dir) / "fates.json", fates);
    timings["elimination"] = clock.seconds();
    overall &= pass;
    std::cerr << (pass ? "[pass] " : "[FAIL] ") << "elimination (" << survivors
              << " survivors, " << lp << " lp, " << hex << " hexagon)\n";
  }

  {  // realization
    StageClock clock;
    bool pass = true;
    for (const std::string which : {"fcc", "hcp"}) {
      KissingConfig cfg = which == "fcc" ? fcc_points() : hcp_points();
      Fan fan{cfg.points, contact_edges(cfg)};
      FanHypermap fh = build_hypermap(fan);
      TameReport rep = is_tame_contact(fh.map);
      OrbitPartition faces = orbits(fh.map, OrbitKind::face);
      double total = 0;
      for (const auto& f : faces.classes) total += face_tau(fan, fh, f);
      bool ok = rep.tame() && fh.map.dart_count() == 48 &&
                std::abs(total - Constants::get().total) <= 1e-8;
      report["stages"]["realization"][which] = {
          {"tame", rep.tame()}, {"weight_total", total}, {"pass", ok}};
      pass &= ok;
    }
    report["stages"]["realization"]["pass"] = pass;
    timings["realization"] = clock.seconds();
    overall &= pass;
    std::cerr << (pass ? "[pass] " : "[FAIL] ") << "realization\n";
  }

  report["overall"] = overall;
  write_json(fs::path(out_dir) / "report.json", report);
  write_json(fs::path(out_dir) / "timings.json", timings);
  std::cout << report.dump(2) << "\n";
  std::cerr << (overall ? "overall: pass\n" : "overall: FAIL\n");
  return overall ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification engine for twelve-sphere contact structure"};
  app.require_subcommand(1);

  auto* cmd_constants =
      app.add_subcommand("constants", "print the verification constants");

  std::string realize_config = "fcc";
  std::string realize_out;
  auto* cmd_realize =
      app.add_subcommand("realize", "hypermap of a reference configuration");
  cmd_realize->add_option("--config", realize_config, "fcc or hcp")
      ->check(CLI::IsMember({"fcc", "hcp"}));
  cmd_realize->add_option("--out", realize_out, "output file (default stdout)");

  std::string tame_file;
  auto* cmd_tame =
      app.add_subcommand("check-tame", "evaluate the tame-contact conditions");
  cmd_tame->add_option("hypermap", tame_file, "hypermap JSON file")->required();

  int jobs = 1;
  std::string enum_out;
  int max_face = 8;
  bool no_geo = false;
  long long budget = 2'000'000'000;
  auto* cmd_enum =
      app.add_subcommand("enumerate", "classify the tame-contact hypermaps");
  cmd_enum->add_option("--jobs", jobs, "worker threads");
  cmd_enum->add_option("--out", enum_out, "output directory");
  cmd_enum->add_option("--max-face", max_face, "largest face size to search");
  cmd_enum->add_flag("--no-geometric-prunes", no_geo,
                     "disable the interior-angle node-type prune");
  cmd_enum->add_option("--budget", budget, "node expansion cap");

  auto* cmd_est = app.add_subcommand("verify-estimates", "run the area case analysis");

  std::string elim_dir;
  std::string elim_out;
  auto* cmd_elim =
      app.add_subcommand("lp-eliminate", "eliminate enumerated candidates");
  cmd_elim->add_option("dir", elim_dir, "directory with summary.json")->required();
  cmd_elim->add_option("--out", elim_out, "fates file (default <dir>/fates.json)");

  int prove_jobs = 1;
  std::string prove_out = "out";
  auto* cmd_prove = app.add_subcommand("prove", "run the full pipeline");
  cmd_prove->add_option("--jobs", prove_jobs, "worker threads");
  cmd_prove->add_option("--out", prove_out, "output directory");

  std::string export_file;
  std::string export_dot;
  auto* cmd_export = app.add_subcommand("export", "export a hypermap");
  cmd_export->add_option("hypermap", export_file, "hypermap JSON file")->required();
  cmd_export->add_option("--dot", export_dot, "graphviz output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*cmd_constants) {
      std::cout << constants_json().dump(2) << "\n";
      return 0;
    }
    if (*cmd_realize) {
      json j = hypermap_to_json(reference_map(realize_config));
      if (realize_out.empty())
        std::cout << j.dump(2) << "\n";
      else
        write_json(realize_out, j);
      return 0;
    }
    if (*cmd_tame) {
      Hypermap h = hypermap_from_json(read_json(tame_file));
      TameReport rep = is_tame_contact(h);
      std::cout << tame_report_json(rep).dump(2) << "\n";
      return rep.tame() ? 0 : 1;
    }
    if (*cmd_enum) {
      EnumConfig cfg;
      cfg.jobs = jobs;
      cfg.max_face = max_face;
      cfg.geometric_prunes = !no_geo;
      cfg.budget = budget;
      ClassificationResult r = enumerate_tame_contact(cfg);
      json summary = summary_json(r);
      if (!enum_out.empty()) {
        fs::create_directories(enum_out);
        write_json(fs::path(enum_out) / "summary.json", summary);
        for (size_t i = 0; i < r.classes.size(); ++i) {
          char name[32];
          std::snprintf(name, sizeof name, "class_%02zu.json", i);
          write_json(fs::path(enum_out) / name, hypermap_to_json(r.classes[i].map));
        }
      }
      std::cout << summary.dump(2) << "\n";
      return 0;
    }
    if (*cmd_est) {
      std::vector<CaseReport> reps = verify_d3_cases();
      std::vector<CaseReport> super = verify_superadditivity();
      reps.insert(reps.end(), super.begin(), super.end());
      for (int r = 3; r <= 9; ++r) reps.push_back(verify_face_bound(r, 0));
      json arr = json::array();
      bool pass = true;
      for (const CaseReport& r : reps) {
        arr.push_back(case_report_json(r));
        pass &= r.pass;
      }
      std::cout << arr.dump(2) << "\n";
      return pass ? 0 : 1;
    }
    if (*cmd_elim) {
      json summary = read_json(fs::path(elim_dir) / "summary.json");
      std::vector<Hypermap> cands;
      std::vector<std::string> codes;
      for (const json& c : summary.at("classes")) {
        cands.push_back(hypermap_from_json(c.at("hypermap")));
        codes.push_back(c.at("code").get<std::string>());
      }
      auto recs = eliminate(cands, default_angle_bounds());
      json fates = elimination_json(recs, codes);
      fs::path out =
          elim_out.empty() ? fs::path(elim_dir) / "fates.json" : fs::path(elim_out);
      write_json(out, fates);
      std::cout << fates.dump(2) << "\n";
      return 0;
    }
    if (*cmd_prove) return run_prove(prove_jobs, prove_out);
    if (*cmd_export) {
      Hypermap h = hypermap_from_json(read_json(export_file));
      std::ofstream out(export_dot);
      if (!out) throw std::runtime_error("cannot write " + export_dot);
      out << hypermap_to_dot(h);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
