#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "topoalign/filtration.hpp"
#include "topoalign/geometry.hpp"

namespace topoalign {

// K unit directions on S^(dimension-1), Gaussian vectors normalized.
// Direction k is drawn from counter stream (seed, k), so it depends only on
// (seed, k, dimension) and not on K.
struct projection_sampler {
  std::uint64_t seed = 0;
  std::size_t count = 50;
  std::size_t dimension = 2;

  std::vector<double> direction(std::size_t k) const;
};

// ((1/N) * sum |a_(i) - b_(i)|^p)^(1/p) over ascending inputs of equal length.
double wasserstein_1d(std::span<const double> a_sorted, std::span<const double> b_sorted,
                      double p);

// Monte-Carlo sliced Wasserstein over the sampler's directions, summed in
// direction order.
double sliced_wasserstein_points(const point_cloud& x, const point_cloud& y, double p,
                                 const projection_sampler& sampler);

// Diagrams as 2-D point sets. Unequal cardinalities are balanced by
// augmenting each side with the diagonal projections ((b+d)/2, (b+d)/2) of
// the other's points. Inputs must contain finite points only.
double sliced_wasserstein_diagrams(const persistence_diagram& d1, const persistence_diagram& d2,
                                   double p, const projection_sampler& sampler);

// Exact p-Wasserstein between diagrams with diagonal matching allowed,
// via an assignment problem on the (m+n) x (m+n) augmented cost matrix.
double wasserstein_exact_diagrams(const persistence_diagram& d1, const persistence_diagram& d2,
                                  double p, std::size_t budget = 512);

// W_infinity: smallest radius admitting a perfect matching, found by binary
// search over candidate radii with bipartite feasibility tests.
double bottleneck_diagrams(const persistence_diagram& d1, const persistence_diagram& d2,
                           std::size_t budget = 512);

// Exact p-Wasserstein between equal-size point clouds as uniform empirical
// measures, assignment on ||x_i - y_j||_2^p costs.
double wasserstein_point_clouds(const point_cloud& x, const point_cloud& y, double p,
                                std::size_t budget = 512);

// Exact min-cost perfect matching on a dense n x n cost matrix, O(n^3)
// shortest-augmenting-path with potentials. row_of_col[j] = assigned row.
double solve_assignment(std::span<const double> cost, std::size_t n,
                        std::vector<int>* row_of_col = nullptr);

}  // namespace topoalign
