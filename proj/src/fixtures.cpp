#include "topoalign/fixtures.hpp"

#include <cmath>

#include "topoalign/errors.hpp"
#include "topoalign/rng.hpp"

namespace topoalign {

point_cloud random_cloud(std::size_t num_points, std::size_t dimension,
                         cloud_distribution distribution, std::uint64_t seed) {
  if (num_points == 0 || dimension == 0)
    throw invalid_input("random_cloud requires num_points >= 1 and dimension >= 1");
  counter_rng rng(seed);
  point_cloud cloud;
  cloud.num_points = num_points;
  cloud.dimension = dimension;
  cloud.coords.resize(num_points * dimension);
  for (double& c : cloud.coords)
    c = distribution == cloud_distribution::uniform_unit_cube ? rng.next_double()
                                                              : rng.next_gaussian();
  return cloud;
}

std::vector<double> random_orthogonal(std::size_t dimension, std::uint64_t seed) {
  if (dimension == 0) throw invalid_input("random_orthogonal requires dimension >= 1");
  counter_rng rng(seed);
  const std::size_t n = dimension;
  std::vector<double> a(n * n);
  for (double& x : a) x = rng.next_gaussian();

  // Modified Gram-Schmidt on columns, two orthogonalization passes.
  std::vector<double> q(n * n, 0.0);
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<double> v(n);
    for (std::size_t r = 0; r < n; ++r) v[r] = a[r * n + col];
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t prev = 0; prev < col; ++prev) {
        double dot = 0.0;
        for (std::size_t r = 0; r < n; ++r) dot += v[r] * q[r * n + prev];
        for (std::size_t r = 0; r < n; ++r) v[r] -= dot * q[r * n + prev];
      }
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < n; ++r) norm += v[r] * v[r];
    norm = std::sqrt(norm);
    if (norm < 1e-12) throw degenerate_input("Gaussian matrix nearly singular");
    // Sign-fix: diagonal of the triangular factor positive.
    double head = 0.0;
    for (std::size_t r = 0; r < n; ++r) head += v[r] * a[r * n + col];
    const double sign = head >= 0.0 ? 1.0 : -1.0;
    for (std::size_t r = 0; r < n; ++r) q[r * n + col] = sign * v[r] / norm;
  }
  return q;
}

point_cloud apply_rigid_motion(const point_cloud& cloud, const std::vector<double>& rotation,
                               const std::vector<double>& translation) {
  cloud.validate();
  const std::size_t n = cloud.dimension;
  if (rotation.size() != n * n || translation.size() != n)
    throw invalid_input("rigid motion shapes do not match the cloud dimension");
  point_cloud out = cloud;
  for (std::size_t i = 0; i < cloud.num_points; ++i) {
    const double* x = cloud.coords.data() + i * n;
    double* y = out.coords.data() + i * n;
    for (std::size_t r = 0; r < n; ++r) {
      double acc = translation[r];
      for (std::size_t c = 0; c < n; ++c) acc += rotation[r * n + c] * x[c];
      y[r] = acc;
    }
  }
  return out;
}

point_cloud random_rigid_motion(const point_cloud& cloud, std::uint64_t seed) {
  const std::vector<double> rotation = random_orthogonal(cloud.dimension, seed);
  counter_rng rng(derive_seed(seed, 1));
  std::vector<double> translation(cloud.dimension);
  for (double& t : translation) t = rng.next_gaussian();
  return apply_rigid_motion(cloud, rotation, translation);
}

point_cloud noisy_copy(const point_cloud& cloud, double sigma, std::uint64_t seed) {
  cloud.validate();
  counter_rng rng(seed);
  point_cloud out = cloud;
  for (double& c : out.coords) c += sigma * rng.next_gaussian();
  return out;
}

fixture_pair bilingual_fixture(std::size_t num_points, std::size_t dimension, double noise_sigma,
                               bool rigid_motion, std::uint64_t seed) {
  const point_cloud latent = random_cloud(num_points, dimension,
                                          cloud_distribution::standard_gaussian, seed);
  fixture_pair pair;
  pair.teacher = noisy_copy(latent, noise_sigma, derive_seed(seed, 2));
  pair.student = noisy_copy(latent, noise_sigma, derive_seed(seed, 3));
  if (rigid_motion) pair.student = random_rigid_motion(pair.student, derive_seed(seed, 4));
  return pair;
}

}  // namespace topoalign
