#include "topoalign/bench.hpp"

#include <chrono>
#include <cmath>

#include "topoalign/errors.hpp"
#include "topoalign/fixtures.hpp"
#include "topoalign/losses.hpp"
#include "topoalign/rng.hpp"
#include "topoalign/transport.hpp"

namespace topoalign {

namespace {

using clock = std::chrono::steady_clock;

double seconds_since(clock::time_point start) {
  return std::chrono::duration<double>(clock::now() - start).count();
}

// The sparsified H0 pipeline measured by the sweeps: threshold, prune, MST
// with death-at-max clamp semantics.
persistence_diagram sparsified_h0(const weighted_graph& g, const distance_matrix& dm_norm,
                                  double lambda) {
  const double eps = threshold(dm_norm, threshold_rule::mean_minus_std(lambda));
  const weighted_graph pruned = sparsify(g, eps, sparsify_mode::drop);
  return h0_diagram(pruned, /*finite_death_for_unmerged=*/1.0);
}

}  // namespace

const char* distribution_name(cloud_distribution d) {
  return d == cloud_distribution::uniform_unit_cube ? "uniform" : "gaussian";
}

const sweep_cell* sweep_report::find(cloud_distribution d, std::size_t n, double lambda) const {
  for (const auto& cell : cells)
    if (cell.distribution == d && cell.num_points == n && cell.lambda == lambda) return &cell;
  return nullptr;
}

sweep_report run_sweep(const sweep_config& config) {
  if (config.trials < 1) throw invalid_input("sweep requires trials >= 1");
  if (config.dimension < 1) throw invalid_input("sweep requires dimension >= 1");

  sweep_report report;
  report.config = config;

  std::size_t cell_index = 0;
  for (const cloud_distribution dist : config.distributions) {
    for (const std::size_t n : config.sizes) {
      for (const double lambda : config.lambdas) {
        sweep_cell cell;
        cell.distribution = dist;
        cell.num_points = n;
        cell.lambda = lambda;

        double sum_components = 0.0;
        double sum_sparsity = 0.0;
        double sum_seconds = 0.0;
        for (std::size_t trial = 0; trial < config.trials; ++trial) {
          const std::uint64_t seed =
              derive_seed(derive_seed(config.master_seed, cell_index), trial);
          const point_cloud cloud = random_cloud(n, config.dimension, dist, seed);
          const distance_matrix dm_norm = normalize_weights(pairwise_distances(cloud));
          const weighted_graph g = complete_graph(dm_norm, /*normalized=*/false);
          const double eps = threshold(dm_norm, threshold_rule::mean_minus_std(lambda));

          std::size_t retained = 0;
          for (const auto& e : g.edges)
            if (e.w <= eps) ++retained;
          sum_sparsity += static_cast<double>(retained) / static_cast<double>(g.edges.size());
          sum_components += static_cast<double>(count_components_at(g, eps));

          const auto start = clock::now();
          const persistence_diagram diagram = sparsified_h0(g, dm_norm, lambda);
          sum_seconds += seconds_since(start);
          (void)diagram;
        }
        const double t = static_cast<double>(config.trials);
        cell.mean_components = sum_components / t;
        cell.mean_sparsity = sum_sparsity / t;
        cell.mean_pd_time_seconds = sum_seconds / t;
        report.cells.push_back(cell);
        ++cell_index;
      }
    }
  }
  return report;
}

std::vector<bound_certificate> run_bound_campaign(std::size_t trials, std::size_t max_n,
                                                  const std::vector<double>& p_values,
                                                  std::uint64_t master_seed) {
  if (max_n < 2) throw invalid_input("bound campaign requires max_n >= 2");
  if (p_values.empty()) throw invalid_input("bound campaign requires at least one p");

  std::vector<bound_certificate> certificates;
  certificates.reserve(trials * p_values.size());
  for (std::size_t trial = 0; trial < trials; ++trial) {
    counter_rng rng(derive_seed(master_seed, trial));
    const std::size_t n = 2 + static_cast<std::size_t>(rng.next_u64() % (max_n - 1));
    const std::size_t dim = 2 + static_cast<std::size_t>(rng.next_u64() % 15);
    const cloud_distribution dist = (rng.next_u64() & 1) ? cloud_distribution::standard_gaussian
                                                         : cloud_distribution::uniform_unit_cube;
    const double epsilon = rng.next_double();

    const point_cloud cloud =
        random_cloud(n, dim, dist, derive_seed(derive_seed(master_seed, trial), 1));
    const distance_matrix dm = pairwise_distances(cloud);
    const weighted_graph g_norm = complete_graph(dm, /*normalized=*/true);
    const std::size_t components = count_components_at(g_norm, epsilon);

    for (const double p : p_values) {
      bound_certificate cert = verify_bound(dm, epsilon, p);
      // Independent component count must reproduce c(eps) and the
      // (c(eps)-1)^(1/p) * (1-eps) form of the bound.
      if (components != cert.c_eps) cert.satisfied = false;
      const double corollary =
          std::pow(static_cast<double>(components) - 1.0, 1.0 / p) * (1.0 - epsilon);
      if (std::abs(corollary - cert.bound) > 1e-12) cert.satisfied = false;
      certificates.push_back(cert);
    }
  }
  return certificates;
}

std::vector<timing_row> run_timing_sweep(std::size_t num_points, std::size_t dimension,
                                         const std::vector<double>& lambdas, std::size_t trials,
                                         std::uint64_t master_seed) {
  if (trials < 1) throw invalid_input("timing sweep requires trials >= 1");
  std::vector<timing_row> rows;
  rows.reserve(lambdas.size());
  for (const double lambda : lambdas) rows.push_back({lambda, 0.0});

  for (std::size_t trial = 0; trial < trials; ++trial) {
    const point_cloud cloud = random_cloud(num_points, dimension,
                                           cloud_distribution::uniform_unit_cube,
                                           derive_seed(master_seed, trial));
    const distance_matrix dm_norm = normalize_weights(pairwise_distances(cloud));
    const weighted_graph g = complete_graph(dm_norm, /*normalized=*/false);
    // Interleave lambdas within the trial so clock drift hits all of them.
    for (std::size_t li = 0; li < lambdas.size(); ++li) {
      const auto start = clock::now();
      const persistence_diagram diagram = sparsified_h0(g, dm_norm, lambdas[li]);
      rows[li].mean_seconds += seconds_since(start);
      (void)diagram;
    }
  }
  for (auto& row : rows) row.mean_seconds /= static_cast<double>(trials);
  return rows;
}

std::vector<k_sweep_row> run_k_sweep(const point_cloud& teacher, const point_cloud& student,
                                     const std::vector<std::size_t>& ks,
                                     std::size_t seeds_per_k, std::uint64_t master_seed,
                                     double p) {
  teacher.validate();
  student.validate();
  if (seeds_per_k < 1) throw invalid_input("k sweep requires seeds_per_k >= 1");

  // The diagrams of the topology loss do not depend on the direction seed,
  // so they are built once; each (K, seed) pair re-slices them.
  const threshold_rule rule = threshold_rule::mean_minus_std(0.5);
  auto diagram_of = [&](const point_cloud& cloud) {
    const distance_matrix dm = pairwise_distances(cloud);
    weighted_graph g = complete_graph(dm, /*normalized=*/false);
    g = sparsify(g, threshold(dm, rule), sparsify_mode::drop);
    persistence_diagram full = h0_diagram(g, dm.max_off_diagonal());
    persistence_diagram finite;
    finite.points = full.finite_points();
    return finite;
  };
  const persistence_diagram diag_t = diagram_of(teacher);
  const persistence_diagram diag_s = diagram_of(student);

  std::vector<k_sweep_row> rows;
  rows.reserve(ks.size());
  for (const std::size_t k : ks) {
    k_sweep_row row;
    row.projections = k;
    std::vector<double> values(seeds_per_k);
    const auto start = clock::now();
    for (std::size_t s = 0; s < seeds_per_k; ++s) {
      projection_sampler sampler{derive_seed(derive_seed(master_seed, k), s), k, 2};
      values[s] = sliced_wasserstein_diagrams(diag_t, diag_s, p, sampler);
    }
    row.mean_seconds = seconds_since(start) / static_cast<double>(seeds_per_k);

    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(seeds_per_k);
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var = seeds_per_k > 1 ? var / static_cast<double>(seeds_per_k - 1) : 0.0;
    row.mean_swd = mean;
    row.stderr_swd = std::sqrt(var / static_cast<double>(seeds_per_k));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace topoalign
