#include "topoalign/losses.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "topoalign/errors.hpp"
#include "topoalign/filtration.hpp"

namespace topoalign {

namespace {

void require_same_points(const point_cloud& teacher, const point_cloud& student,
                         const char* caller) {
  if (teacher.num_points != student.num_points)
    throw invalid_input(std::string(caller) + " requires equal point counts, got " +
                        std::to_string(teacher.num_points) + " vs " +
                        std::to_string(student.num_points));
}

// Finite H0 deaths plus the point pair whose distance realizes each death.
// Edges above the threshold are pruned in approx mode; components still
// alive then die together at the cloud's max pairwise distance (the scale at
// which the pruned edges all arrive).
struct h0_forward {
  std::vector<double> deaths;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
};

h0_forward build_h0(const distance_matrix& dm, const threshold_rule& rule, bool approx) {
  h0_forward out;
  const std::size_t n = dm.size;
  if (n < 2) return out;

  weighted_graph g = complete_graph(dm, /*normalized=*/false);
  if (approx) g = sparsify(g, threshold(dm, rule), sparsify_mode::drop);

  const mst_result mst = kruskal_mst(g);
  out.deaths.reserve(n - 1);
  out.pairs.reserve(n - 1);
  for (const auto& ev : mst.merge_events) {
    out.deaths.push_back(ev.w);
    out.pairs.emplace_back(ev.edge_u, ev.edge_v);
  }

  const std::size_t components = n - mst.merge_events.size();
  if (components > 1) {
    double max_dist = -1.0;
    std::pair<std::uint32_t, std::uint32_t> max_pair{0, 0};
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = i + 1; j < n; ++j)
        if (dm.at(i, j) > max_dist) {
          max_dist = dm.at(i, j);
          max_pair = {i, j};
        }
    for (std::size_t k = 1; k < components; ++k) {
      out.deaths.push_back(max_dist);
      out.pairs.push_back(max_pair);
    }
  }
  return out;
}

// Sliced Wasserstein between H0 diagrams {(0, death)} and, optionally, its
// derivative w.r.t. every student death. Combinatorics (sort orders) are
// those of the forward pass.
struct swd_h0_result {
  double value = 0.0;
  std::vector<double> d_student_death;
};

swd_h0_result swd_h0(const std::vector<double>& teacher_deaths,
                     const std::vector<double>& student_deaths, double p,
                     const projection_sampler& sampler, bool with_grad) {
  swd_h0_result out;
  const std::size_t m = teacher_deaths.size();
  if (m == 0) return out;
  if (with_grad) out.d_student_death.assign(m, 0.0);

  // Diagram points live on the plane; directions are drawn on S^1 from the
  // sampler's (seed, k) streams so the value matches
  // sliced_wasserstein_diagrams with the same sampler.
  projection_sampler plane = sampler;
  plane.dimension = 2;

  std::vector<double> t_proj(m);
  std::vector<double> s_proj(m);
  std::vector<std::size_t> s_order(m);
  std::vector<double> raw_grad;  // d(SW^p * K * m) / d(student death)
  if (with_grad) raw_grad.assign(m, 0.0);

  double total_pow = 0.0;
  for (std::size_t k = 0; k < plane.count; ++k) {
    const std::vector<double> theta = plane.direction(k);
    const double ty = theta[1];  // births are all zero, only deaths project
    for (std::size_t i = 0; i < m; ++i) {
      t_proj[i] = teacher_deaths[i] * ty;
      s_proj[i] = student_deaths[i] * ty;
    }
    std::sort(t_proj.begin(), t_proj.end());
    std::iota(s_order.begin(), s_order.end(), std::size_t{0});
    std::stable_sort(s_order.begin(), s_order.end(),
                     [&](std::size_t a, std::size_t b) { return s_proj[a] < s_proj[b]; });

    double cost_pow = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double gap = s_proj[s_order[i]] - t_proj[i];
      cost_pow += std::pow(std::abs(gap), p);
      if (with_grad && gap != 0.0) {
        const double sign = gap > 0.0 ? 1.0 : -1.0;
        raw_grad[s_order[i]] += p * std::pow(std::abs(gap), p - 1.0) * sign * ty;
      }
    }
    total_pow += cost_pow / static_cast<double>(m);
  }

  const double x = total_pow / static_cast<double>(sampler.count);
  out.value = std::pow(x, 1.0 / p);
  if (with_grad && x > 0.0) {
    const double outer = (1.0 / p) * std::pow(x, 1.0 / p - 1.0) /
                         (static_cast<double>(sampler.count) * static_cast<double>(m));
    for (std::size_t j = 0; j < m; ++j) out.d_student_death[j] = outer * raw_grad[j];
  }
  return out;
}

std::vector<double> padded_births(const weighted_graph& g, std::size_t target) {
  std::vector<double> births = h1_births(g);
  if (births.size() < target) births.insert(births.begin(), target - births.size(), 0.0);
  return births;
}

}  // namespace

double loss_pw(const point_cloud& teacher, const point_cloud& student) {
  teacher.validate();
  student.validate();
  require_same_points(teacher, student, "loss_pw");
  if (teacher.dimension != student.dimension)
    throw invalid_input("loss_pw requires equal dimensions, got " +
                        std::to_string(teacher.dimension) + " vs " +
                        std::to_string(student.dimension));
  double sum = 0.0;
  for (std::size_t k = 0; k < teacher.coords.size(); ++k) {
    const double d = student.coords[k] - teacher.coords[k];
    sum += d * d;
  }
  return sum / static_cast<double>(teacher.coords.size());
}

double loss_dm(const point_cloud& teacher, const point_cloud& student) {
  teacher.validate();
  student.validate();
  require_same_points(teacher, student, "loss_dm");
  const distance_matrix dt = pairwise_distances(teacher);
  const distance_matrix ds = pairwise_distances(student);
  double sum = 0.0;
  for (std::size_t k = 0; k < dt.entries.size(); ++k) {
    const double d = ds.entries[k] - dt.entries[k];
    sum += d * d;
  }
  return sum / static_cast<double>(dt.entries.size());
}

double loss_ta(const point_cloud& teacher, const point_cloud& student, double p,
               const projection_sampler& sampler, const threshold_rule& rule, bool approx) {
  teacher.validate();
  student.validate();
  require_same_points(teacher, student, "loss_ta");
  if (teacher.num_points < 2) return 0.0;
  const h0_forward ht = build_h0(pairwise_distances(teacher), rule, approx);
  const h0_forward hs = build_h0(pairwise_distances(student), rule, approx);
  return swd_h0(ht.deaths, hs.deaths, p, sampler, /*with_grad=*/false).value;
}

double loss_ta_h1(const point_cloud& teacher, const point_cloud& student, double p,
                  const threshold_rule& rule, bool approx) {
  teacher.validate();
  student.validate();
  require_same_points(teacher, student, "loss_ta_h1");
  if (teacher.num_points < 2) return 0.0;

  auto graph_of = [&](const point_cloud& cloud) {
    const distance_matrix dm = pairwise_distances(cloud);
    weighted_graph g = complete_graph(dm, /*normalized=*/false);
    if (approx) g = sparsify(g, threshold(dm, rule), sparsify_mode::drop);
    return g;
  };
  const weighted_graph gt = graph_of(teacher);
  const weighted_graph gs = graph_of(student);
  const std::size_t nt = kruskal_mst(gt).h1_birth_candidates.size();
  const std::size_t ns = kruskal_mst(gs).h1_birth_candidates.size();
  const std::size_t target = std::max(nt, ns);
  if (target == 0) return 0.0;
  return wasserstein_1d(padded_births(gt, target), padded_births(gs, target), p);
}

double loss_ta_combined(const point_cloud& teacher, const point_cloud& student, double p,
                        const projection_sampler& sampler, const threshold_rule& rule,
                        bool approx) {
  return 0.5 * loss_ta(teacher, student, p, sampler, rule, approx) +
         0.5 * loss_ta_h1(teacher, student, p, rule, approx);
}

loss_breakdown loss_total(const point_cloud& teacher, const point_cloud& student,
                          const loss_coefficients& coeffs, double p,
                          const projection_sampler& sampler, const threshold_rule& rule,
                          bool approx, bool with_grad) {
  teacher.validate();
  student.validate();
  require_same_points(teacher, student, "loss_total");
  if (teacher.dimension != student.dimension)
    throw invalid_input("loss_total requires equal dimensions");
  if (coeffs.alpha < 0.0 || coeffs.beta < 0.0 || coeffs.gamma < 0.0)
    throw invalid_input("loss coefficients must be nonnegative");
  if (coeffs.alpha == 0.0 && coeffs.beta == 0.0 && coeffs.gamma == 0.0)
    throw invalid_input("at least one loss coefficient must be positive");

  const std::size_t n = teacher.num_points;
  const std::size_t dim = teacher.dimension;
  const distance_matrix dt = pairwise_distances(teacher);
  const distance_matrix ds = pairwise_distances(student);

  loss_breakdown out;

  // Pointwise term.
  double pw_sum = 0.0;
  for (std::size_t k = 0; k < teacher.coords.size(); ++k) {
    const double d = student.coords[k] - teacher.coords[k];
    pw_sum += d * d;
  }
  out.l_pw = pw_sum / static_cast<double>(teacher.coords.size());

  // Distance-matrix term.
  double dm_sum = 0.0;
  for (std::size_t k = 0; k < dt.entries.size(); ++k) {
    const double d = ds.entries[k] - dt.entries[k];
    dm_sum += d * d;
  }
  out.l_dm = dm_sum / static_cast<double>(dt.entries.size());

  // Topology term.
  h0_forward hs;
  swd_h0_result ta;
  if (n >= 2) {
    const h0_forward ht = build_h0(dt, rule, approx);
    hs = build_h0(ds, rule, approx);
    ta = swd_h0(ht.deaths, hs.deaths, p, sampler, with_grad);
  }
  out.l_ta = ta.value;

  out.l_total = coeffs.alpha * out.l_pw + coeffs.beta * out.l_ta + coeffs.gamma * out.l_dm;

  if (!with_grad) return out;

  std::vector<double> grad(n * dim, 0.0);

  if (coeffs.alpha != 0.0) {
    const double scale = coeffs.alpha * 2.0 / static_cast<double>(n * dim);
    for (std::size_t k = 0; k < grad.size(); ++k)
      grad[k] += scale * (student.coords[k] - teacher.coords[k]);
  }

  if (coeffs.gamma != 0.0) {
    // d/ds_i of (1/N^2) sum_{i,j} (||s_i-s_j|| - ||t_i-t_j||)^2; each
    // unordered pair appears twice in the sum.
    const double scale = coeffs.gamma * 4.0 / static_cast<double>(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double dist = ds.at(i, j);
        if (dist <= 0.0) continue;  // coincident points: subgradient 0
        const double factor = scale * (dist - dt.at(i, j)) / dist;
        for (std::size_t c = 0; c < dim; ++c) {
          const double diff = student.coords[i * dim + c] - student.coords[j * dim + c];
          grad[i * dim + c] += factor * diff;
          grad[j * dim + c] -= factor * diff;
        }
      }
  }

  if (coeffs.beta != 0.0 && n >= 2) {
    for (std::size_t k = 0; k < hs.deaths.size(); ++k) {
      const double g = coeffs.beta * ta.d_student_death[k];
      if (g == 0.0) continue;
      const auto [a, b] = hs.pairs[k];
      const double dist = hs.deaths[k];
      if (dist <= 0.0) continue;
      for (std::size_t c = 0; c < dim; ++c) {
        const double diff = student.coords[a * dim + c] - student.coords[b * dim + c];
        grad[a * dim + c] += g * diff / dist;
        grad[b * dim + c] -= g * diff / dist;
      }
    }
  }

  out.grad_student = std::move(grad);
  return out;
}

}  // namespace topoalign
