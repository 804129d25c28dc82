#pragma once
// Exhaustive generation of the hypermaps with tame contact: plane maps are
// grown face by face inside the unexplored regions, pruned by the weight
// tables, and deduplicated by mirror-folded canonical codes.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "kiss12/hypermap.hpp"

namespace kiss12 {

struct EnumerateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SearchBudgetExceeded : EnumerateError {
  using EnumerateError::EnumerateError;
};

struct EnumConfig {
  int node_count = 12;
  int min_face = 3;
  int max_face = 8;
  int min_degree = 2;
  int max_degree = 4;
  bool weights = true;           // weight-table pruning and the final LP check
  bool geometric_prunes = true;  // interior-angle admissible-type filter
  long long budget = 2'000'000'000;
  int jobs = 1;
};

// A partially grown plane map: final faces are fixed; open walks bound the
// regions still to be tiled.  Every edge has at least one dart on a final
// face, so each open walk dart is the unique free dart of its edge.
struct PartialHypermap {
  int vertex_count = 0;
  int seed_size = 0;                       // size of the seed face = max face size
  std::vector<std::uint8_t> degree;
  std::vector<std::uint16_t> adj;          // adjacency bitmask per vertex
  std::vector<std::vector<int>> final_faces;
  std::vector<std::array<std::uint8_t, 3>> type_at;  // (tri, quad, big) facing each vertex
  std::vector<std::vector<int>> open_walks;           // vertex cycles
  double weight_lb = 0;                    // sum of d1 over final faces

  bool finished() const { return open_walks.empty(); }
};

struct SearchMetrics {
  long long expanded = 0;
  long long children = 0;
  long long pruned_weight = 0;
  long long pruned_type = 0;
  long long pruned_geo = 0;
  long long pruned_walk = 0;
  long long completed = 0;
  long long tame = 0;
  long long duplicates = 0;
  void add(const SearchMetrics& o);
};

struct ClassInfo {
  CanonicalCode code;                       // mirror-folded
  Hypermap map;                             // canonical representative
  std::map<int, int> faces_by_size;
  std::map<std::string, int> node_type_counts;
};

struct ClassificationResult {
  std::vector<ClassInfo> classes;           // sorted by code
  int unfolded_class_count = 0;
  SearchMetrics metrics;
};

// Initial state: one final face of the given size and its complement.
PartialHypermap seed_partial(int face_size);

// All consistent ways to place the final face covering the distinguished
// dart of the most constrained open corner.  Children violating the hard
// constraints or the weight lower bound are not emitted.  Prune counters are
// accumulated into `metrics` when given.
std::vector<PartialHypermap> extend(const PartialHypermap& p, const EnumConfig& cfg,
                                    SearchMetrics* metrics = nullptr);

// Hypermap of a finished partial (faces become the f-orbits).
Hypermap assemble(const PartialHypermap& p);

ClassificationResult enumerate_tame_contact(const EnumConfig& cfg = EnumConfig{});

enum class Reference { FCC, HCP };
bool contains_reference(const ClassificationResult& result, const Hypermap& reference);

}  // namespace kiss12
