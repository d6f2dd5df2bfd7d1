#include "topoalign/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "topoalign/errors.hpp"
#include "topoalign/rng.hpp"

namespace topoalign {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// ||u - v||_p^p on the plane.
double plane_lp_pow(const diagram_point& a, const diagram_point& b, double p) {
  return std::pow(std::abs(a.birth - b.birth), p) + std::pow(std::abs(a.death - b.death), p);
}

// (L_p distance to the diagonal)^p; nearest diagonal point is the midpoint.
double diagonal_lp_pow(const diagram_point& a, double p) {
  return 2.0 * std::pow(0.5 * (a.death - a.birth), p);
}

double plane_linf(const diagram_point& a, const diagram_point& b) {
  return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

double diagonal_linf(const diagram_point& a) { return 0.5 * (a.death - a.birth); }

std::vector<diagram_point> checked_finite_points(const persistence_diagram& d,
                                                 const char* caller) {
  std::vector<diagram_point> pts;
  pts.reserve(d.points.size());
  for (const auto& pt : d.points) {
    if (!std::isfinite(pt.death) || !std::isfinite(pt.birth))
      throw invalid_input(std::string(caller) +
                          " requires finite diagram points; strip essential classes first");
    if (pt.birth > pt.death)
      throw invalid_input(std::string(caller) + " found a point with birth > death");
    pts.push_back(pt);
  }
  return pts;
}

point_cloud diagram_as_cloud(const std::vector<diagram_point>& pts) {
  point_cloud cloud;
  cloud.num_points = pts.size();
  cloud.dimension = 2;
  cloud.coords.reserve(pts.size() * 2);
  for (const auto& pt : pts) {
    cloud.coords.push_back(pt.birth);
    cloud.coords.push_back(pt.death);
  }
  return cloud;
}

// Kuhn's augmenting-path matching over the implicit augmented structure:
// left/right nodes are the points of one diagram followed by diagonal slots
// for the other's points. allowed(i, j) tests edge feasibility at the
// current radius.
template <typename Allowed>
bool has_perfect_matching(std::size_t n, const Allowed& allowed) {
  std::vector<int> match_right(n, -1);
  std::vector<char> visited(n, 0);

  auto try_augment = [&](auto&& self, std::size_t i) -> bool {
    for (std::size_t j = 0; j < n; ++j) {
      if (visited[j] || !allowed(i, j)) continue;
      visited[j] = 1;
      if (match_right[j] < 0 || self(self, static_cast<std::size_t>(match_right[j]))) {
        match_right[j] = static_cast<int>(i);
        return true;
      }
    }
    return false;
  };

  for (std::size_t i = 0; i < n; ++i) {
    std::fill(visited.begin(), visited.end(), 0);
    if (!try_augment(try_augment, i)) return false;
  }
  return true;
}

}  // namespace

std::vector<double> projection_sampler::direction(std::size_t k) const {
  if (dimension < 2) throw invalid_input("projection sampler requires dimension >= 2");
  counter_rng rng(seed, k);
  std::vector<double> theta(dimension);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (std::size_t c = 0; c < dimension; ++c) {
      theta[c] = rng.next_gaussian();
      norm += theta[c] * theta[c];
    }
    norm = std::sqrt(norm);
  } while (norm < 1e-12);
  for (double& t : theta) t /= norm;
  return theta;
}

double wasserstein_1d(std::span<const double> a_sorted, std::span<const double> b_sorted,
                      double p) {
  if (a_sorted.size() != b_sorted.size())
    throw invalid_input("wasserstein_1d requires equal lengths, got " +
                        std::to_string(a_sorted.size()) + " vs " +
                        std::to_string(b_sorted.size()));
  if (a_sorted.empty()) return 0.0;
  if (p < 1.0) throw invalid_input("wasserstein_1d requires p >= 1");
  double sum = 0.0;
  for (std::size_t i = 0; i < a_sorted.size(); ++i)
    sum += std::pow(std::abs(a_sorted[i] - b_sorted[i]), p);
  return std::pow(sum / static_cast<double>(a_sorted.size()), 1.0 / p);
}

double sliced_wasserstein_points(const point_cloud& x, const point_cloud& y, double p,
                                 const projection_sampler& sampler) {
  if (x.num_points != y.num_points)
    throw invalid_input("sliced_wasserstein_points requires equal cardinalities, got " +
                        std::to_string(x.num_points) + " vs " + std::to_string(y.num_points));
  if (x.dimension != y.dimension || x.dimension != sampler.dimension)
    throw invalid_input("sliced_wasserstein_points dimension mismatch");
  if (sampler.count < 1) throw invalid_input("sliced Wasserstein requires K >= 1");
  if (p < 1.0) throw invalid_input("sliced Wasserstein requires p >= 1");
  if (x.num_points == 0) return 0.0;

  const std::size_t n = x.num_points;
  std::vector<double> px(n), py(n);
  double total = 0.0;
  for (std::size_t k = 0; k < sampler.count; ++k) {
    const std::vector<double> theta = sampler.direction(k);
    for (std::size_t i = 0; i < n; ++i) {
      double sx = 0.0, sy = 0.0;
      for (std::size_t c = 0; c < x.dimension; ++c) {
        sx += x.coords[i * x.dimension + c] * theta[c];
        sy += y.coords[i * y.dimension + c] * theta[c];
      }
      px[i] = sx;
      py[i] = sy;
    }
    std::sort(px.begin(), px.end());
    std::sort(py.begin(), py.end());
    double cost_pow = 0.0;
    for (std::size_t i = 0; i < n; ++i) cost_pow += std::pow(std::abs(px[i] - py[i]), p);
    total += cost_pow / static_cast<double>(n);
  }
  return std::pow(total / static_cast<double>(sampler.count), 1.0 / p);
}

double sliced_wasserstein_diagrams(const persistence_diagram& d1, const persistence_diagram& d2,
                                   double p, const projection_sampler& sampler) {
  std::vector<diagram_point> a = checked_finite_points(d1, "sliced_wasserstein_diagrams");
  std::vector<diagram_point> b = checked_finite_points(d2, "sliced_wasserstein_diagrams");
  if (a.size() != b.size()) {
    // Balance with the other side's diagonal projections.
    std::vector<diagram_point> a_aug = a;
    for (const auto& pt : b) {
      const double mid = 0.5 * (pt.birth + pt.death);
      a_aug.push_back({mid, mid});
    }
    for (const auto& pt : a) {
      const double mid = 0.5 * (pt.birth + pt.death);
      b.push_back({mid, mid});
    }
    a = std::move(a_aug);
  }
  if (a.empty()) return 0.0;
  projection_sampler plane = sampler;
  plane.dimension = 2;
  return sliced_wasserstein_points(diagram_as_cloud(a), diagram_as_cloud(b), p, plane);
}

double wasserstein_exact_diagrams(const persistence_diagram& d1, const persistence_diagram& d2,
                                  double p, std::size_t budget) {
  if (p < 1.0) throw invalid_input("wasserstein_exact_diagrams requires p >= 1");
  const std::vector<diagram_point> a = checked_finite_points(d1, "wasserstein_exact_diagrams");
  const std::vector<diagram_point> b = checked_finite_points(d2, "wasserstein_exact_diagrams");
  const std::size_t m = a.size(), n = b.size();
  if (m + n > budget)
    throw budget_exceeded("diagram sizes " + std::to_string(m) + "+" + std::to_string(n) +
                          " exceed the exact solver budget " + std::to_string(budget));
  if (m + n == 0) return 0.0;

  const std::size_t dim = m + n;
  std::vector<double> cost(dim * dim, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) cost[i * dim + j] = plane_lp_pow(a[i], b[j], p);
    const double diag = diagonal_lp_pow(a[i], p);
    for (std::size_t j = n; j < dim; ++j) cost[i * dim + j] = diag;
  }
  for (std::size_t i = m; i < dim; ++i)
    for (std::size_t j = 0; j < n; ++j) cost[i * dim + j] = diagonal_lp_pow(b[j], p);

  return std::pow(solve_assignment(cost, dim), 1.0 / p);
}

double bottleneck_diagrams(const persistence_diagram& d1, const persistence_diagram& d2,
                           std::size_t budget) {
  const std::vector<diagram_point> a = checked_finite_points(d1, "bottleneck_diagrams");
  const std::vector<diagram_point> b = checked_finite_points(d2, "bottleneck_diagrams");
  const std::size_t m = a.size(), n = b.size();
  if (m + n > budget)
    throw budget_exceeded("diagram sizes " + std::to_string(m) + "+" + std::to_string(n) +
                          " exceed the exact solver budget " + std::to_string(budget));
  if (m + n == 0) return 0.0;

  std::vector<double> candidates;
  candidates.reserve(m * n + m + n + 1);
  candidates.push_back(0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) candidates.push_back(plane_linf(a[i], b[j]));
    candidates.push_back(diagonal_linf(a[i]));
  }
  for (std::size_t j = 0; j < n; ++j) candidates.push_back(diagonal_linf(b[j]));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  const std::size_t dim = m + n;
  auto feasible = [&](double r) {
    auto allowed = [&](std::size_t i, std::size_t j) {
      const bool left_point = i < m;
      const bool right_point = j < n;
      if (left_point && right_point) return plane_linf(a[i], b[j]) <= r;
      if (left_point) return diagonal_linf(a[i]) <= r;
      if (right_point) return diagonal_linf(b[j]) <= r;
      return true;  // diagonal to diagonal
    };
    return has_perfect_matching(dim, allowed);
  };

  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (feasible(candidates[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return candidates[lo];
}

double wasserstein_point_clouds(const point_cloud& x, const point_cloud& y, double p,
                                std::size_t budget) {
  x.validate();
  y.validate();
  if (x.num_points != y.num_points)
    throw invalid_input("wasserstein_point_clouds requires equal cardinalities");
  if (x.dimension != y.dimension)
    throw invalid_input("wasserstein_point_clouds requires equal dimensions");
  if (p < 1.0) throw invalid_input("wasserstein_point_clouds requires p >= 1");
  const std::size_t n = x.num_points;
  if (n > budget)
    throw budget_exceeded("point count " + std::to_string(n) +
                          " exceeds the exact solver budget " + std::to_string(budget));

  std::vector<double> cost(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double sq = 0.0;
      for (std::size_t c = 0; c < x.dimension; ++c) {
        const double d = x.coords[i * x.dimension + c] - y.coords[j * y.dimension + c];
        sq += d * d;
      }
      cost[i * n + j] = std::pow(std::sqrt(sq), p);
    }
  // Uniform empirical measures carry mass 1/n per point.
  return std::pow(solve_assignment(cost, n) / static_cast<double>(n), 1.0 / p);
}

double solve_assignment(std::span<const double> cost, std::size_t n,
                        std::vector<int>* row_of_col) {
  if (cost.size() != n * n) throw invalid_input("solve_assignment requires an n x n cost matrix");
  if (n == 0) {
    if (row_of_col) row_of_col->clear();
    return 0.0;
  }

  // Shortest augmenting path with potentials, 1-based internals.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      std::size_t j1 = 0;
      double delta = inf;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  double total = 0.0;
  for (std::size_t j = 1; j <= n; ++j) total += cost[(p[j] - 1) * n + (j - 1)];
  if (row_of_col) {
    row_of_col->assign(n, -1);
    for (std::size_t j = 1; j <= n; ++j) (*row_of_col)[j - 1] = static_cast<int>(p[j] - 1);
  }
  return total;
}

}  // namespace topoalign
