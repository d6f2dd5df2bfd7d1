#pragma once

#include <cstdint>
#include <vector>

#include "topoalign/filtration.hpp"
#include "topoalign/geometry.hpp"

namespace topoalign {

enum class cloud_distribution {
  uniform_unit_cube,  // i.i.d. coordinates on [0, 1)
  standard_gaussian,  // i.i.d. standard normal coordinates
};

const char* distribution_name(cloud_distribution d);

struct sweep_config {
  std::vector<cloud_distribution> distributions = {cloud_distribution::uniform_unit_cube,
                                                   cloud_distribution::standard_gaussian};
  std::size_t dimension = 512;
  std::vector<std::size_t> sizes = {64, 128, 256, 512};
  std::vector<double> lambdas = {1.0, 0.5, 0.0, -0.5, -1.0};
  std::size_t trials = 10;
  std::uint64_t master_seed = 0;
};

struct sweep_cell {
  cloud_distribution distribution;
  std::size_t num_points = 0;
  double lambda = 0.0;
  double mean_components = 0.0;
  double mean_sparsity = 0.0;       // retained fraction of the N(N-1)/2 edges
  double mean_pd_time_seconds = 0.0;
};

struct sweep_report {
  sweep_config config;
  std::vector<sweep_cell> cells;  // distribution-major, then size, then lambda

  const sweep_cell* find(cloud_distribution d, std::size_t n, double lambda) const;
};

// Connectivity/sparsity sweep: per cell, `trials` clouds with per-trial
// derived seeds, normalized weights, epsilon = mu - lambda*sigma, components
// and retained-edge fraction averaged. Timing covers the sparsified H0
// pipeline given the distance matrix.
sweep_report run_sweep(const sweep_config& config);

// Random certificates: cloud size 2..max_n, epsilon ~ U[0,1], one
// certificate per (trial, p). Every certificate also re-checks
// c(eps) = m(eps) + 1.
std::vector<bound_certificate> run_bound_campaign(std::size_t trials, std::size_t max_n,
                                                  const std::vector<double>& p_values,
                                                  std::uint64_t master_seed);

struct timing_row {
  double lambda = 0.0;
  double mean_seconds = 0.0;
};

// Mean wall-clock of the sparsified H0 pipeline per lambda, distance matrix
// precomputed and shared across lambdas within a trial.
std::vector<timing_row> run_timing_sweep(std::size_t num_points, std::size_t dimension,
                                         const std::vector<double>& lambdas, std::size_t trials,
                                         std::uint64_t master_seed);

struct k_sweep_row {
  std::size_t projections = 0;  // K
  double mean_swd = 0.0;
  double stderr_swd = 0.0;      // across seeds
  double mean_seconds = 0.0;    // per sliced-distance evaluation
};

// Sliced distance between the clouds' H0 diagrams (diagrams built once) for
// each K, over seeds_per_k independent direction seeds.
std::vector<k_sweep_row> run_k_sweep(const point_cloud& teacher, const point_cloud& student,
                                     const std::vector<std::size_t>& ks,
                                     std::size_t seeds_per_k, std::uint64_t master_seed,
                                     double p = 2.0);

}  // namespace topoalign
