#include "topoalign/filtration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "topoalign/errors.hpp"
#include "topoalign/transport.hpp"

namespace topoalign {

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();
}

std::vector<diagram_point> persistence_diagram::finite_points() const {
  std::vector<diagram_point> out;
  out.reserve(points.size());
  for (const auto& pt : points)
    if (std::isfinite(pt.death)) out.push_back(pt);
  return out;
}

std::size_t persistence_diagram::essential_count() const {
  std::size_t c = 0;
  for (const auto& pt : points)
    if (!std::isfinite(pt.death)) ++c;
  return c;
}

union_find::union_find(std::size_t n) : parent_(n), size_(n, 1), components_(n) {
  std::iota(parent_.begin(), parent_.end(), 0u);
}

std::uint32_t union_find::find(std::uint32_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];  // path halving
    x = parent_[x];
  }
  return x;
}

bool union_find::unite(std::uint32_t x, std::uint32_t y) {
  std::uint32_t rx = find(x);
  std::uint32_t ry = find(y);
  if (rx == ry) return false;
  if (size_[rx] < size_[ry]) std::swap(rx, ry);
  if (size_[rx] == size_[ry] && rx > ry) std::swap(rx, ry);  // deterministic root
  parent_[ry] = rx;
  size_[rx] += size_[ry];
  --components_;
  return true;
}

weighted_graph complete_graph(const distance_matrix& dm, bool normalized) {
  if (dm.size == 0) throw invalid_input("complete_graph requires at least one vertex");
  double scale = 1.0;
  if (normalized) {
    const double m = dm.max_off_diagonal();
    if (m <= 0.0)
      throw degenerate_input("cannot normalize the complete graph of an all-zero matrix");
    scale = m;
  }
  weighted_graph g;
  g.num_vertices = dm.size;
  g.edges.reserve(dm.num_pairs());
  for (std::uint32_t i = 0; i < dm.size; ++i)
    for (std::uint32_t j = i + 1; j < dm.size; ++j)
      g.edges.push_back({i, j, dm.at(i, j) / scale});
  return g;
}

weighted_graph sparsify(const weighted_graph& g, double epsilon, sparsify_mode mode) {
  if (epsilon < 0.0) throw invalid_input("sparsify requires epsilon >= 0");
  weighted_graph out;
  out.num_vertices = g.num_vertices;
  out.edges.reserve(g.edges.size());
  for (const auto& e : g.edges) {
    if (mode == sparsify_mode::clamp_to_one && e.w > 1.0)
      throw invalid_input("clamp_to_one requires a normalized graph (weight > 1 found)");
    if (e.w > epsilon) {
      if (mode == sparsify_mode::clamp_to_one) out.edges.push_back({e.u, e.v, 1.0});
    } else {
      out.edges.push_back(e);
    }
  }
  std::sort(out.edges.begin(), out.edges.end(), [](const weighted_edge& a, const weighted_edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  return out;
}

mst_result kruskal_mst(const weighted_graph& g) {
  std::vector<weighted_edge> order = g.edges;
  std::sort(order.begin(), order.end(), [](const weighted_edge& a, const weighted_edge& b) {
    if (a.w != b.w) return a.w < b.w;
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
  });

  mst_result result;
  union_find uf(g.num_vertices);
  for (const auto& e : order) {
    const std::uint32_t ra = uf.find(e.u);
    const std::uint32_t rb = uf.find(e.v);
    if (ra == rb) {
      result.h1_birth_candidates.push_back(e.w);
      result.h1_birth_edges.emplace_back(e.u, e.v);
    } else {
      result.mst_edges.push_back(e);
      result.merge_events.push_back({e.w, ra, rb, e.u, e.v});
      uf.unite(e.u, e.v);
    }
  }
  return result;
}

persistence_diagram h0_diagram(const weighted_graph& g,
                               std::optional<double> finite_death_for_unmerged) {
  const mst_result mst = kruskal_mst(g);
  persistence_diagram diagram;
  diagram.dimension = 0;
  diagram.includes_essential = true;
  diagram.points.reserve(g.num_vertices);
  for (const auto& ev : mst.merge_events) diagram.points.push_back({0.0, ev.w});

  const std::size_t components = g.num_vertices - mst.merge_events.size();
  if (finite_death_for_unmerged.has_value()) {
    // Pruned edges of the clamped graph all arrive at this scale, leaving a
    // single essential class.
    for (std::size_t k = 1; k < components; ++k)
      diagram.points.push_back({0.0, *finite_death_for_unmerged});
    diagram.points.push_back({0.0, inf});
  } else {
    for (std::size_t k = 0; k < components; ++k) diagram.points.push_back({0.0, inf});
  }
  return diagram;
}

std::vector<double> h1_births(const weighted_graph& g) {
  std::vector<double> births = kruskal_mst(g).h1_birth_candidates;
  std::sort(births.begin(), births.end());
  return births;
}

std::size_t count_components_at(const weighted_graph& g, double epsilon) {
  union_find uf(g.num_vertices);
  for (const auto& e : g.edges)
    if (e.w <= epsilon) uf.unite(e.u, e.v);
  return uf.component_count();
}

bound_certificate verify_bound(const distance_matrix& dm, double epsilon, double p,
                               std::size_t exact_solver_budget) {
  if (epsilon < 0.0 || epsilon > 1.0)
    throw invalid_input("verify_bound requires epsilon in [0, 1], got " + std::to_string(epsilon));
  if (p < 1.0) throw invalid_input("verify_bound requires p >= 1");

  const weighted_graph g = complete_graph(dm, /*normalized=*/true);
  const persistence_diagram exact = h0_diagram(g);
  const weighted_graph g_eps = sparsify(g, epsilon, sparsify_mode::drop);
  const persistence_diagram approx = h0_diagram(g_eps, /*finite_death_for_unmerged=*/1.0);

  bound_certificate cert;
  cert.epsilon = epsilon;
  cert.p = p;

  const std::vector<diagram_point> exact_finite = exact.finite_points();
  for (const auto& pt : exact_finite)
    if (pt.death > epsilon) ++cert.m_eps;
  cert.c_eps = cert.m_eps + 1;
  cert.bound = std::pow(static_cast<double>(cert.m_eps), 1.0 / p) * (1.0 - epsilon);

  persistence_diagram exact_part;
  exact_part.points = exact_finite;
  persistence_diagram approx_part;
  approx_part.points = approx.finite_points();

  // The single essential class of each diagram pairs with the other's at
  // zero cost, so W_p reduces to the finite parts.
  const std::size_t combined = exact_part.points.size() + approx_part.points.size();
  if (combined <= exact_solver_budget) {
    cert.exact_wp = wasserstein_exact_diagrams(exact_part, approx_part, p, exact_solver_budget);
    cert.wp_is_upper_bound = false;
  } else {
    // Explicit matching: deaths <= epsilon map identically, the rest map to
    // death 1; both essentials pair at zero cost.
    double cost = 0.0;
    for (const auto& pt : exact_finite)
      if (pt.death > epsilon) cost += std::pow(std::abs(1.0 - pt.death), p);
    cert.exact_wp = std::pow(cost, 1.0 / p);
    cert.wp_is_upper_bound = true;
  }

  cert.satisfied = cert.exact_wp <= cert.bound + 1e-9;
  return cert;
}

}  // namespace topoalign
