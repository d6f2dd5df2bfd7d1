#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "topoalign/geometry.hpp"

namespace topoalign {

struct weighted_edge {
  std::uint32_t u = 0;  // u < v, no self-loops
  std::uint32_t v = 0;
  double w = 0.0;
};

struct weighted_graph {
  std::size_t num_vertices = 0;
  std::vector<weighted_edge> edges;  // canonical order: sorted by (u, v)
};

struct diagram_point {
  double birth = 0.0;
  double death = 0.0;  // +infinity for essential classes
};

struct persistence_diagram {
  int dimension = 0;
  std::vector<diagram_point> points;
  bool includes_essential = false;

  // Points with finite death, in diagram order.
  std::vector<diagram_point> finite_points() const;
  std::size_t essential_count() const;
};

class union_find {
 public:
  explicit union_find(std::size_t n);
  std::uint32_t find(std::uint32_t x);
  // Returns false when x and y were already connected.
  bool unite(std::uint32_t x, std::uint32_t y);
  std::size_t component_count() const { return components_; }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
  std::size_t components_;
};

enum class sparsify_mode {
  drop,          // remove edges with w > epsilon
  clamp_to_one,  // keep them with weight exactly 1 (requires weights <= 1)
};

struct merge_event {
  double w = 0.0;
  std::uint32_t root_a = 0;  // component roots immediately before the union
  std::uint32_t root_b = 0;
  std::uint32_t edge_u = 0;  // the edge that caused the merge
  std::uint32_t edge_v = 0;
};

struct mst_result {
  std::vector<weighted_edge> mst_edges;           // in processing order
  std::vector<merge_event> merge_events;          // one per union
  std::vector<double> h1_birth_candidates;        // weights of cycle-creating edges
  // Endpoints of each cycle-creating edge, parallel to h1_birth_candidates.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> h1_birth_edges;
};

struct bound_certificate {
  double epsilon = 0.0;
  double p = 2.0;
  std::size_t m_eps = 0;   // finite deaths strictly above epsilon
  std::size_t c_eps = 1;   // components at scale epsilon; always m_eps + 1
  double exact_wp = 0.0;   // exact, or a certified upper bound
  bool wp_is_upper_bound = false;
  double bound = 0.0;      // m_eps^(1/p) * (1 - epsilon)
  bool satisfied = false;
};

// All N(N-1)/2 edges of the distance matrix; weights divided by the max
// off-diagonal entry when normalized (degenerate_input if that max is zero).
weighted_graph complete_graph(const distance_matrix& dm, bool normalized);

// Edges with w > epsilon are dropped or clamped to weight 1. Output edges
// stay sorted by (u, v).
weighted_graph sparsify(const weighted_graph& g, double epsilon, sparsify_mode mode);

// Kruskal with (w, u, v) lexicographic tie-breaking; output is invariant
// under permutation of the input edge list.
mst_result kruskal_mst(const weighted_graph& g);

// One point (0, w) per merge event. Components never merged either become
// one essential class plus (count-1) points dying at finite_death_for_unmerged
// (realizing the clamp of pruned edges arriving together at that scale), or,
// when no value is given, one essential class each.
persistence_diagram h0_diagram(const weighted_graph& g,
                               std::optional<double> finite_death_for_unmerged = std::nullopt);

// Ascending weights of cycle-creating edges. Zero-persistence classes are
// not filtered out.
std::vector<double> h1_births(const weighted_graph& g);

// Components of the subgraph with edges of weight <= epsilon.
std::size_t count_components_at(const weighted_graph& g, double epsilon);

// Certifies W_p(D0(G), D0(G_eps)) <= m(eps)^(1/p) * (1 - eps) on the
// normalized graph of dm. Uses the exact assignment solver while combined
// diagram size fits the budget, otherwise the explicit death->1 matching as
// a certified upper bound.
bound_certificate verify_bound(const distance_matrix& dm, double epsilon, double p,
                               std::size_t exact_solver_budget = 512);

}  // namespace topoalign
