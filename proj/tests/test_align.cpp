#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "topoalign/align.hpp"
#include "topoalign/errors.hpp"
#include "topoalign/fixtures.hpp"
#include "topoalign/rng.hpp"

using namespace topoalign;

namespace {

optimizer_config small_config(std::size_t steps, double lr, loss_coefficients coeffs,
                              std::uint64_t seed) {
  optimizer_config config;
  config.steps = steps;
  config.learning_rate = lr;
  config.coeffs = coeffs;
  config.projections = 20;
  config.seed = seed;
  config.log_every = steps;  // log first and last
  return config;
}

}  // namespace

TEST_CASE("student map application") {
  const point_cloud init = random_cloud(6, 3, cloud_distribution::standard_gaussian, 1);
  SUBCASE("identity affine map is a no-op") {
    const student_map map = student_map::affine_identity(3);
    CHECK(apply_student_map(map, init).coords == init.coords);
  }
  SUBCASE("free points replace the coordinates") {
    student_map map = student_map::free_points(init);
    map.points[0] = 42.0;
    const point_cloud moved = apply_student_map(map, init);
    CHECK(moved.coords[0] == 42.0);
    CHECK(moved.coords[1] == init.coords[1]);
  }
}

TEST_CASE("metrics of a cloud against itself vanish") {
  const point_cloud t = random_cloud(20, 4, cloud_distribution::standard_gaussian, 2);
  const alignment_metrics m = compute_alignment_metrics(t, t, 7);
  CHECK(m.w2_clouds == 0.0);
  CHECK(m.w2_h0_diagrams == 0.0);
  CHECK(m.sw2_h0_diagrams == 0.0);
  CHECK(m.h1_birth_w1 == 0.0);
  CHECK(m.dm_mean == 0.0);
  CHECK(m.dm_rmse == 0.0);
}

TEST_CASE("optimizer fixed point at zero loss") {
  const point_cloud t = random_cloud(16, 4, cloud_distribution::standard_gaussian, 3);
  const student_map map = student_map::free_points(t);
  const auto [final_map, report] = optimize(t, t, map, small_config(10, 0.1, {}, 5));
  CHECK(final_map.points == t.coords);  // no update ever happened
  for (const auto& step : report.steps) CHECK(step.l_total == 0.0);
  CHECK(report.final_metrics.w2_clouds == 0.0);
}

TEST_CASE("noisy student improves under the default objective") {
  const point_cloud t = random_cloud(32, 6, cloud_distribution::standard_gaussian, 8);
  const point_cloud s = noisy_copy(t, 0.1, 9);
  optimizer_config config = small_config(120, 0.05, {}, 10);
  const auto [final_map, report] = optimize(t, s, student_map::free_points(s), config);
  REQUIRE(report.steps.size() == 2);
  CHECK(report.steps.back().l_total < report.steps.front().l_total);
  CHECK(report.final_metrics.w2_clouds < report.initial_metrics.w2_clouds);
  CHECK(report.final_metrics.dm_rmse < report.initial_metrics.dm_rmse);
}

TEST_CASE("log cadence controls the report length") {
  const point_cloud t = random_cloud(10, 3, cloud_distribution::standard_gaussian, 11);
  const point_cloud s = noisy_copy(t, 0.05, 12);
  optimizer_config config = small_config(30, 0.02, {}, 13);
  config.log_every = 7;
  const auto report = optimize(t, s, student_map::free_points(s), config).second;
  CHECK(report.steps.size() == 1 + 30 / 7);
}

TEST_CASE("optimizer runs are bitwise reproducible") {
  const point_cloud t = random_cloud(14, 4, cloud_distribution::standard_gaussian, 14);
  const point_cloud s = noisy_copy(t, 0.1, 15);
  const optimizer_config config = small_config(25, 0.05, {}, 16);
  const auto a = optimize(t, s, student_map::free_points(s), config);
  const auto b = optimize(t, s, student_map::free_points(s), config);
  CHECK(a.first.points == b.first.points);
  REQUIRE(a.second.steps.size() == b.second.steps.size());
  for (std::size_t i = 0; i < a.second.steps.size(); ++i)
    CHECK(a.second.steps[i].l_total == b.second.steps[i].l_total);
  CHECK(a.second.final_metrics.w2_clouds == b.second.final_metrics.w2_clouds);
}

TEST_CASE("rigid-motion drift needs the pointwise term") {
  const point_cloud t = random_cloud(24, 5, cloud_distribution::standard_gaussian, 17);
  const point_cloud s = random_rigid_motion(t, 18);

  optimizer_config geometric = small_config(40, 0.05, {0.0, 0.01, 0.01}, 19);
  const auto geometric_report = optimize(t, s, student_map::free_points(s), geometric).second;
  CHECK(geometric_report.steps.front().l_total < 1e-9);
  CHECK(geometric_report.final_metrics.w2_clouds >
        0.99 * geometric_report.initial_metrics.w2_clouds);

  optimizer_config anchored = small_config(40, 0.5, {1.0, 0.01, 0.01}, 19);
  const auto anchored_report = optimize(t, s, student_map::free_points(s), anchored).second;
  CHECK(anchored_report.final_metrics.w2_clouds < 0.99 * anchored_report.initial_metrics.w2_clouds);
}

TEST_CASE("affine parameter gradients agree with finite differences") {
  const point_cloud t = random_cloud(8, 3, cloud_distribution::standard_gaussian, 20);
  const point_cloud s = noisy_copy(t, 0.2, 21);
  const double lr = 0.01;
  optimizer_config config = small_config(1, lr, {}, 22);

  const auto [after, report] = optimize(t, s, student_map::affine_identity(3), config);
  (void)report;

  // One gradient step from the identity: W_after = I - lr * dL/dW.
  const projection_sampler sampler{derive_seed(config.seed, 0), config.projections, 2};
  auto loss_of_affine = [&](const std::vector<double>& weight, const std::vector<double>& bias) {
    student_map map = student_map::affine_identity(3);
    map.weight = weight;
    map.bias = bias;
    return loss_total(t, apply_student_map(map, s), config.coeffs, config.p, sampler, config.rule,
                      config.approx, false)
        .l_total;
  };

  std::vector<double> weight(9, 0.0);
  for (std::size_t i = 0; i < 3; ++i) weight[i * 3 + i] = 1.0;
  std::vector<double> bias(3, 0.0);
  const double h = 1e-6;
  for (std::size_t k = 0; k < 9; ++k) {
    std::vector<double> up = weight, down = weight;
    up[k] += h;
    down[k] -= h;
    const double fd = (loss_of_affine(up, bias) - loss_of_affine(down, bias)) / (2.0 * h);
    const double implied = (weight[k] - after.weight[k]) / lr;
    CHECK(implied == doctest::Approx(fd).epsilon(5e-4));
  }
  for (std::size_t k = 0; k < 3; ++k) {
    std::vector<double> up = bias, down = bias;
    up[k] += h;
    down[k] -= h;
    const double fd = (loss_of_affine(weight, up) - loss_of_affine(weight, down)) / (2.0 * h);
    const double implied = (bias[k] - after.bias[k]) / lr;
    CHECK(implied == doctest::Approx(fd).epsilon(5e-4));
  }
}

TEST_CASE("runaway learning rate raises a divergence error") {
  const point_cloud t = random_cloud(6, 2, cloud_distribution::standard_gaussian, 23);
  const point_cloud s = noisy_copy(t, 0.5, 24);
  optimizer_config config = small_config(60, 1e12, {}, 25);
  CHECK_THROWS_AS(optimize(t, s, student_map::free_points(s), config), divergence_error);
}

TEST_CASE("ablation suite") {
  SUBCASE("degenerate pair reports zeros everywhere") {
    const point_cloud t = random_cloud(12, 3, cloud_distribution::standard_gaussian, 26);
    const auto table =
        ablation_suite(t, t, student_map::free_points(t), small_config(5, 0.05, {}, 27));
    for (const auto& entry : table) {
      CHECK(entry.report.steps.front().l_total == 0.0);
      CHECK(entry.report.steps.back().l_total == 0.0);
      CHECK(entry.report.final_metrics.w2_clouds == 0.0);
    }
  }
  SUBCASE("coefficient settings follow the published grid") {
    const point_cloud t = random_cloud(10, 3, cloud_distribution::standard_gaussian, 28);
    const point_cloud s = noisy_copy(t, 0.1, 29);
    const auto table =
        ablation_suite(t, s, student_map::free_points(s), small_config(5, 0.05, {}, 30));
    CHECK(table[0].coeffs.beta == 0.0);
    CHECK(table[0].coeffs.gamma == 0.0);
    CHECK(table[1].coeffs.beta == 0.01);
    CHECK(table[1].coeffs.gamma == 0.0);
    CHECK(table[2].coeffs.beta == 0.0);
    CHECK(table[2].coeffs.gamma == 0.01);
    CHECK(table[3].coeffs.beta == 0.01);
    CHECK(table[3].coeffs.gamma == 0.01);
  }
}
