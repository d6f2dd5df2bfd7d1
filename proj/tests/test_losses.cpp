#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "topoalign/errors.hpp"
#include "topoalign/filtration.hpp"
#include "topoalign/fixtures.hpp"
#include "topoalign/losses.hpp"
#include "topoalign/rng.hpp"

using namespace topoalign;

namespace {

point_cloud constant_cloud(std::size_t n, std::size_t dim, double value) {
  point_cloud cloud;
  cloud.num_points = n;
  cloud.dimension = dim;
  cloud.coords.assign(n * dim, value);
  return cloud;
}

point_cloud two_points_at(double distance, std::size_t dim = 2) {
  point_cloud cloud = constant_cloud(2, dim, 0.0);
  cloud.coords[dim] = distance;
  return cloud;
}

double max_mst_weight(const point_cloud& cloud) {
  const mst_result mst = kruskal_mst(complete_graph(pairwise_distances(cloud), false));
  double w = 0.0;
  for (const auto& e : mst.mst_edges) w = std::max(w, e.w);
  return w;
}

struct gradient_comparison {
  double max_rel_error;
  std::size_t coords;
};

gradient_comparison compare_gradients(const point_cloud& teacher, const point_cloud& student,
                                      const loss_coefficients& coeffs,
                                      const projection_sampler& sampler,
                                      const threshold_rule& rule, bool approx,
                                      double step = 1e-5) {
  const loss_breakdown breakdown =
      loss_total(teacher, student, coeffs, 2.0, sampler, rule, approx, /*with_grad=*/true);
  REQUIRE(breakdown.grad_student.has_value());

  auto f = [&](const std::vector<double>& coords) {
    point_cloud moved = student;
    moved.coords = coords;
    return loss_total(teacher, moved, coeffs, 2.0, sampler, rule, approx, false).l_total;
  };
  const std::vector<double> fd = oracles::finite_difference_gradient(f, student.coords, step);

  gradient_comparison cmp{0.0, student.coords.size()};
  for (std::size_t k = 0; k < fd.size(); ++k) {
    const double analytic = (*breakdown.grad_student)[k];
    const double numeric = fd[k];
    const double err = std::abs(analytic) < 1e-8
                           ? std::abs(analytic - numeric) / 1e-8 * 1e-8  // absolute at 1e-8
                           : std::abs(analytic - numeric) / std::abs(analytic);
    if (std::abs(analytic) < 1e-8) {
      CHECK(std::abs(analytic - numeric) <= 1e-8);
    } else {
      cmp.max_rel_error = std::max(cmp.max_rel_error, err);
    }
  }
  return cmp;
}

}  // namespace

TEST_CASE("pointwise loss") {
  SUBCASE("identical clouds") {
    const point_cloud t = random_cloud(6, 3, cloud_distribution::standard_gaussian, 1);
    CHECK(loss_pw(t, t) == 0.0);
  }
  SUBCASE("constant offset of one") {
    CHECK(loss_pw(constant_cloud(5, 7, 0.0), constant_cloud(5, 7, 1.0)) == 1.0);
  }
  SUBCASE("random pair matches a double loop") {
    const point_cloud t = random_cloud(16, 8, cloud_distribution::standard_gaussian, 2);
    const point_cloud s = random_cloud(16, 8, cloud_distribution::standard_gaussian, 3);
    double sum = 0.0;
    for (std::size_t i = 0; i < 16; ++i)
      for (std::size_t c = 0; c < 8; ++c) {
        const double d = s.coords[i * 8 + c] - t.coords[i * 8 + c];
        sum += d * d;
      }
    CHECK(loss_pw(t, s) == doctest::Approx(sum / 128.0).epsilon(1e-12));
  }
  SUBCASE("shape mismatch") {
    const point_cloud t = random_cloud(4, 3, cloud_distribution::standard_gaussian, 4);
    const point_cloud s = random_cloud(5, 3, cloud_distribution::standard_gaussian, 5);
    CHECK_THROWS_AS(loss_pw(t, s), invalid_input);
  }
}

TEST_CASE("distance-matrix loss") {
  SUBCASE("rigid motions are invisible") {
    const point_cloud t = random_cloud(20, 6, cloud_distribution::standard_gaussian, 7);
    const point_cloud s = random_rigid_motion(t, 8);
    CHECK(loss_dm(t, s) < 1e-9);
  }
  SUBCASE("two points, distances 1 vs 3") {
    CHECK(loss_dm(two_points_at(1.0), two_points_at(3.0)) == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("random pair matches a loop over both matrices") {
    const point_cloud t = random_cloud(32, 4, cloud_distribution::standard_gaussian, 9);
    const point_cloud s = random_cloud(32, 4, cloud_distribution::standard_gaussian, 10);
    const distance_matrix dt = pairwise_distances(t);
    const distance_matrix ds = pairwise_distances(s);
    double sum = 0.0;
    for (std::size_t i = 0; i < 32; ++i)
      for (std::size_t j = 0; j < 32; ++j) {
        const double d = ds.at(i, j) - dt.at(i, j);
        sum += d * d;
      }
    CHECK(loss_dm(t, s) == doctest::Approx(sum / (32.0 * 32.0)).epsilon(1e-12));
  }
  SUBCASE("dimensions may differ, only distances compare") {
    const point_cloud t = two_points_at(2.0, 2);
    const point_cloud s = two_points_at(2.0, 5);
    CHECK(loss_dm(t, s) == 0.0);
  }
  SUBCASE("scaling is visible") {
    const point_cloud t = random_cloud(12, 3, cloud_distribution::standard_gaussian, 11);
    point_cloud doubled = t;
    for (double& c : doubled.coords) c *= 2.0;
    CHECK(loss_dm(t, doubled) > 0.0);
  }
}

TEST_CASE("topology loss") {
  const threshold_rule rule = threshold_rule::mean_minus_std(0.5);

  SUBCASE("identical clouds") {
    const point_cloud t = random_cloud(24, 5, cloud_distribution::standard_gaussian, 13);
    CHECK(loss_ta(t, t, 2.0, {0, 50, 2}, rule, true) == 0.0);
    CHECK(loss_ta(t, t, 2.0, {0, 50, 2}, rule, false) == 0.0);
  }
  SUBCASE("rigid motions are invisible") {
    const point_cloud t = random_cloud(24, 8, cloud_distribution::standard_gaussian, 14);
    const point_cloud s = random_rigid_motion(t, 15);
    CHECK(loss_ta(t, s, 2.0, {1, 50, 2}, rule, true) < 1e-9);
    CHECK(loss_ta(t, s, 2.0, {1, 50, 2}, rule, false) < 1e-9);
  }
  SUBCASE("two points: projected death gap, one direction") {
    const projection_sampler sampler{21, 1, 2};
    const double theta_y = sampler.direction(0)[1];
    const double got = loss_ta(two_points_at(1.0), two_points_at(2.0), 2.0, sampler, rule, false);
    CHECK(got == doctest::Approx(std::abs(theta_y)).epsilon(1e-12));
  }
  SUBCASE("approx equals exact bitwise once the graph stays connected") {
    const point_cloud t = random_cloud(20, 4, cloud_distribution::uniform_unit_cube, 16);
    const point_cloud s = random_cloud(20, 4, cloud_distribution::uniform_unit_cube, 17);
    const double scale = std::max(max_mst_weight(t), max_mst_weight(s));
    const threshold_rule generous = threshold_rule::absolute(scale * 1.0000001);
    const projection_sampler sampler{5, 25, 2};
    CHECK(loss_ta(t, s, 2.0, sampler, generous, true) ==
          loss_ta(t, s, 2.0, sampler, generous, false));
  }
  SUBCASE("single-point clouds define the loss as zero") {
    const point_cloud t = constant_cloud(1, 3, 0.5);
    CHECK(loss_ta(t, t, 2.0, {0, 10, 2}, rule, true) == 0.0);
    CHECK(loss_dm(t, t) == 0.0);
  }
}

TEST_CASE("H1 birth loss") {
  const threshold_rule rule = threshold_rule::mean_minus_std(0.5);
  SUBCASE("identical clouds") {
    const point_cloud t = random_cloud(10, 3, cloud_distribution::standard_gaussian, 18);
    CHECK(loss_ta_h1(t, t, 2.0, rule, false) == 0.0);
  }
  SUBCASE("triangles: single cycle edge each") {
    point_cloud t{3, 2, {0.0, 0.0, 1.0, 0.0, 0.0, 1.0}, {}};   // heaviest edge sqrt(2)
    point_cloud s{3, 2, {0.0, 0.0, 2.0, 0.0, 0.0, 2.0}, {}};   // heaviest edge 2*sqrt(2)
    CHECK(loss_ta_h1(t, s, 1.0, rule, false) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  }
  SUBCASE("rigid motions are invisible") {
    const point_cloud t = random_cloud(12, 5, cloud_distribution::standard_gaussian, 19);
    const point_cloud s = random_rigid_motion(t, 20);
    CHECK(loss_ta_h1(t, s, 2.0, rule, false) < 1e-9);
  }
  SUBCASE("combined loss is the equal-weight blend") {
    const point_cloud t = random_cloud(14, 4, cloud_distribution::standard_gaussian, 21);
    const point_cloud s = random_cloud(14, 4, cloud_distribution::standard_gaussian, 22);
    const projection_sampler sampler{3, 20, 2};
    const double combined = loss_ta_combined(t, s, 2.0, sampler, rule, true);
    const double h0 = loss_ta(t, s, 2.0, sampler, rule, true);
    const double h1 = loss_ta_h1(t, s, 2.0, rule, true);
    CHECK(combined == 0.5 * h0 + 0.5 * h1);
    CHECK(h1 >= 0.0);
  }
}

TEST_CASE("total loss assembly") {
  const threshold_rule rule = threshold_rule::mean_minus_std(0.5);
  const projection_sampler sampler{33, 20, 2};

  SUBCASE("alpha-only total reduces to the pointwise loss and gradient") {
    const point_cloud t = random_cloud(12, 4, cloud_distribution::standard_gaussian, 23);
    const point_cloud s = noisy_copy(t, 0.2, 24);
    const loss_breakdown b =
        loss_total(t, s, {1.0, 0.0, 0.0}, 2.0, sampler, rule, true, /*with_grad=*/true);
    CHECK(b.l_total == b.l_pw);
    for (std::size_t k = 0; k < s.coords.size(); ++k)
      CHECK((*b.grad_student)[k] ==
            doctest::Approx(2.0 * (s.coords[k] - t.coords[k]) / 48.0).epsilon(1e-12));
  }
  SUBCASE("identical clouds: zero losses, zero gradient") {
    const point_cloud t = random_cloud(10, 3, cloud_distribution::standard_gaussian, 25);
    const loss_breakdown b = loss_total(t, t, {}, 2.0, sampler, rule, true, true);
    CHECK(b.l_pw == 0.0);
    CHECK(b.l_ta == 0.0);
    CHECK(b.l_dm == 0.0);
    CHECK(b.l_total == 0.0);
    for (double g : *b.grad_student) CHECK(g == 0.0);
  }
  SUBCASE("total is the exact linear combination") {
    const point_cloud t = random_cloud(15, 4, cloud_distribution::standard_gaussian, 26);
    const point_cloud s = random_cloud(15, 4, cloud_distribution::standard_gaussian, 27);
    const loss_coefficients coeffs{0.7, 0.2, 1.3};
    const loss_breakdown b = loss_total(t, s, coeffs, 2.0, sampler, rule, false, false);
    CHECK(b.l_total == coeffs.alpha * b.l_pw + coeffs.beta * b.l_ta + coeffs.gamma * b.l_dm);
    CHECK(b.l_pw >= 0.0);
    CHECK(b.l_ta >= 0.0);
    CHECK(b.l_dm >= 0.0);
  }
  SUBCASE("all-zero coefficients are rejected") {
    const point_cloud t = random_cloud(5, 2, cloud_distribution::standard_gaussian, 28);
    CHECK_THROWS_AS(loss_total(t, t, {0.0, 0.0, 0.0}, 2.0, sampler, rule, true, false),
                    invalid_input);
  }
}

TEST_CASE("analytic gradients match central differences") {
  const threshold_rule rule = threshold_rule::mean_minus_std(0.5);

  SUBCASE("default coefficients, sparsified pipeline") {
    for (std::uint64_t trial = 0; trial < 5; ++trial) {
      const point_cloud t =
          random_cloud(16, 4, cloud_distribution::standard_gaussian, derive_seed(3100, trial));
      const point_cloud s = noisy_copy(t, 0.15, derive_seed(3200, trial));
      const projection_sampler sampler{derive_seed(3300, trial), 20, 2};
      const gradient_comparison cmp = compare_gradients(t, s, {}, sampler, rule, true);
      CHECK(cmp.max_rel_error < 1e-4);
    }
  }
  SUBCASE("exact pipeline") {
    const point_cloud t = random_cloud(14, 3, cloud_distribution::standard_gaussian, 41);
    const point_cloud s = noisy_copy(t, 0.2, 42);
    const gradient_comparison cmp = compare_gradients(t, s, {}, {43, 20, 2}, rule, false);
    CHECK(cmp.max_rel_error < 1e-4);
  }
  SUBCASE("topology term alone") {
    const point_cloud t = random_cloud(12, 3, cloud_distribution::standard_gaussian, 44);
    const point_cloud s = noisy_copy(t, 0.25, 45);
    const gradient_comparison cmp =
        compare_gradients(t, s, {0.0, 1.0, 0.0}, {46, 20, 2}, rule, true);
    CHECK(cmp.max_rel_error < 1e-4);
  }
  SUBCASE("distance-matrix term alone") {
    const point_cloud t = random_cloud(12, 3, cloud_distribution::standard_gaussian, 47);
    const point_cloud s = noisy_copy(t, 0.25, 48);
    const gradient_comparison cmp =
        compare_gradients(t, s, {0.0, 0.0, 1.0}, {49, 20, 2}, rule, true);
    CHECK(cmp.max_rel_error < 1e-4);
  }
}

TEST_CASE("isometry kernel separates the loss terms") {
  for (std::uint64_t trial = 0; trial < 5; ++trial) {
    const std::size_t dim = 2 + trial * 3;
    const point_cloud t =
        random_cloud(18, dim, cloud_distribution::standard_gaussian, derive_seed(5100, trial));
    const point_cloud s = random_rigid_motion(t, derive_seed(5200, trial));
    CHECK(loss_ta(t, s, 2.0, {1, 50, 2}, threshold_rule::mean_minus_std(0.5), true) < 1e-9);
    CHECK(loss_dm(t, s) < 1e-9);
    CHECK(loss_pw(t, s) > 0.0);
  }
}
