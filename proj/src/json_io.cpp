#include "kiss12/json_io.hpp"

#include <set>
#include <sstream>

namespace kiss12 {

nlohmann::json hypermap_to_json(const Hypermap& h) {
  return nlohmann::json{{"dart_count", h.dart_count()},
                        {"e", h.e_perm()},
                        {"n", h.n_perm()}};
}

Hypermap hypermap_from_json(const nlohmann::json& j) {
  int dc = j.at("dart_count").get<int>();
  Perm e = j.at("e").get<Perm>();
  Perm n = j.at("n").get<Perm>();
  return Hypermap(dc, std::move(e), std::move(n));
}

nlohmann::json points_to_json(const std::vector<Vec3>& pts) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Vec3& p : pts) arr.push_back({p.x, p.y, p.z});
  return arr;
}

std::vector<Vec3> points_from_json(const nlohmann::json& j) {
  std::vector<Vec3> pts;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != 3)
      throw std::runtime_error("point rows must be [x,y,z]");
    pts.push_back({row[0].get<double>(), row[1].get<double>(), row[2].get<double>()});
  }
  return pts;
}

std::string hypermap_to_dot(const Hypermap& h) {
  OrbitPartition nodes = orbits(h, OrbitKind::node);
  OrbitPartition edges = orbits(h, OrbitKind::edge);
  OrbitPartition faces = orbits(h, OrbitKind::face);
  std::ostringstream out;
  out << "graph hypermap {\n";
  for (int i = 0; i < nodes.count(); ++i)
    out << "  n" << i << " [label=\"n" << i << "\"];\n";
  for (const auto& cyc : edges.classes) {
    std::set<int> met;
    for (int d : cyc) met.insert(nodes.class_of[d]);
    if (met.size() == 2) {
      auto it = met.begin();
      int a = *it++;
      out << "  n" << a << " -- n" << *it << ";\n";
    } else if (met.size() == 1) {
      out << "  n" << *met.begin() << " -- n" << *met.begin() << ";\n";
    }
  }
  for (int i = 0; i < faces.count(); ++i) {
    out << "  // face " << i << " (size " << faces.classes[i].size() << "): nodes";
    std::set<int> met;
    for (int d : faces.classes[i]) met.insert(nodes.class_of[d]);
    for (int v : met) out << " n" << v;
    out << "\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace kiss12
