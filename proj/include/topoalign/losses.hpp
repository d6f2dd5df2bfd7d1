#pragma once

#include <optional>
#include <vector>

#include "topoalign/geometry.hpp"
#include "topoalign/transport.hpp"

namespace topoalign {

struct loss_coefficients {
  double alpha = 1.0;   // pointwise term
  double beta = 0.01;   // topology term
  double gamma = 0.01;  // distance-matrix term
};

struct loss_breakdown {
  double l_pw = 0.0;
  double l_ta = 0.0;
  double l_dm = 0.0;
  double l_total = 0.0;
  // dL_total/dS, num_points x dimension row-major, present when requested.
  std::optional<std::vector<double>> grad_student;
};

// Mean squared coordinate difference over all N*n entries.
double loss_pw(const point_cloud& teacher, const point_cloud& student);

// Mean squared difference of the two distance matrices over all N^2 entries
// (diagonal included). Dimensions may differ; point counts may not.
double loss_dm(const point_cloud& teacher, const point_cloud& student);

// Sliced Wasserstein between the clouds' H0 diagrams on raw distances,
// essential classes stripped so each side carries N-1 finite points.
// With approx, edges above the rule's threshold are pruned and unmerged
// components die at the cloud's max pairwise distance. Zero for N = 1.
double loss_ta(const point_cloud& teacher, const point_cloud& student, double p,
               const projection_sampler& sampler, const threshold_rule& rule, bool approx);

// 1-D p-Wasserstein between the clouds' cycle-edge birth multisets, the
// shorter side padded with zeros.
double loss_ta_h1(const point_cloud& teacher, const point_cloud& student, double p,
                  const threshold_rule& rule, bool approx);

// Equal-weight blend of the H0 sliced term and the H1 birth term.
double loss_ta_combined(const point_cloud& teacher, const point_cloud& student, double p,
                        const projection_sampler& sampler, const threshold_rule& rule,
                        bool approx);

// All three losses plus the weighted total. When with_grad, the analytic
// gradient of the total w.r.t. every student coordinate is returned; the
// discrete structure (merge edges, clamp pairs, sort permutations) is frozen
// at the forward pass, so ties yield a subgradient.
loss_breakdown loss_total(const point_cloud& teacher, const point_cloud& student,
                          const loss_coefficients& coeffs, double p,
                          const projection_sampler& sampler, const threshold_rule& rule,
                          bool approx, bool with_grad);

}  // namespace topoalign
