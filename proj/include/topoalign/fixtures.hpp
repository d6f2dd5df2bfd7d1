#pragma once

#include <cstdint>
#include <vector>

#include "topoalign/bench.hpp"
#include "topoalign/geometry.hpp"

namespace topoalign {

point_cloud random_cloud(std::size_t num_points, std::size_t dimension,
                         cloud_distribution distribution, std::uint64_t seed);

// Haar-ish orthogonal matrix: Gram-Schmidt (two passes) of a Gaussian
// matrix, columns sign-fixed so the triangular factor has positive diagonal.
std::vector<double> random_orthogonal(std::size_t dimension, std::uint64_t seed);

// x -> R x + t applied to every point.
point_cloud apply_rigid_motion(const point_cloud& cloud, const std::vector<double>& rotation,
                               const std::vector<double>& translation);

point_cloud random_rigid_motion(const point_cloud& cloud, std::uint64_t seed);

// Teacher plus i.i.d. Gaussian noise of scale sigma.
point_cloud noisy_copy(const point_cloud& cloud, double sigma, std::uint64_t seed);

struct fixture_pair {
  point_cloud teacher;
  point_cloud student;
};

// Two views of a shared latent cloud: independent per-view noise, and an
// optional rigid motion applied to the student view.
fixture_pair bilingual_fixture(std::size_t num_points, std::size_t dimension, double noise_sigma,
                               bool rigid_motion, std::uint64_t seed);

}  // namespace topoalign
