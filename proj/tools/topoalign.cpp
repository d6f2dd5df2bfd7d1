// topoalign: sparsified H0 persistence, certified approximation bounds,
// topology-aware alignment losses, and the benchmark campaigns around them.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "topoalign/align.hpp"
#include "topoalign/bench.hpp"
#include "topoalign/errors.hpp"
#include "topoalign/fixtures.hpp"
#include "topoalign/io.hpp"
#include "topoalign/losses.hpp"
#include "topoalign/rng.hpp"
#include "topoalign/transport.hpp"

namespace ta = topoalign;
using nlohmann::json;

namespace {

constexpr const char* version_string = "topoalign 0.1.0";

constexpr int exit_ok = 0;
constexpr int exit_parse = 2;
constexpr int exit_degenerate = 3;
constexpr int exit_budget = 4;

json metrics_json(const ta::alignment_metrics& m) {
  return json{{"w2_clouds", m.w2_clouds},
              {"w2_h0_diagrams", m.w2_h0_diagrams},
              {"sw2_h0_diagrams", m.sw2_h0_diagrams},
              {"h1_birth_w1", m.h1_birth_w1},
              {"dm_mean", m.dm_mean},
              {"dm_rmse", m.dm_rmse}};
}

json breakdown_json(const ta::loss_breakdown& b, std::size_t dimension) {
  json out{{"l_pw", b.l_pw}, {"l_ta", b.l_ta}, {"l_dm", b.l_dm}, {"l_total", b.l_total}};
  if (b.grad_student.has_value()) {
    json grad = json::array();
    const std::vector<double>& g = *b.grad_student;
    for (std::size_t i = 0; i < g.size(); i += dimension) {
      json row = json::array();
      for (std::size_t c = 0; c < dimension; ++c) row.push_back(g[i + c]);
      grad.push_back(std::move(row));
    }
    out["grad_student"] = std::move(grad);
  }
  return out;
}

json report_json(const ta::alignment_report& report, std::size_t dimension) {
  json steps = json::array();
  for (const auto& step : report.steps) steps.push_back(breakdown_json(step, dimension));
  return json{{"steps", std::move(steps)},
              {"initial_metrics", metrics_json(report.initial_metrics)},
              {"final_metrics", metrics_json(report.final_metrics)}};
}

void emit(const json& payload) { std::cout << payload.dump(2) << "\n"; }

void write_json_file(const std::string& path, const json& payload) {
  std::ofstream out(path);
  if (!out) throw ta::invalid_input("cannot open for writing: " + path);
  out << payload.dump(2) << "\n";
}

struct diagram_options {
  std::string input;
  std::string out;
  std::string mode = "approx";
  std::string dim = "0";
  double lambda = 0.5;
  std::optional<double> epsilon;
  bool normalize = false;
};

int run_diagram(const diagram_options& opt) {
  const ta::point_cloud cloud = ta::read_point_cloud(opt.input);
  cloud.validate();

  // Resolved-configuration echo; the diagram itself goes to --out.
  const json echo{{"version", version_string},
                  {"seed", nullptr},  // nothing random in this command
                  {"config", json{{"input", opt.input},
                                  {"out", opt.out},
                                  {"mode", opt.mode},
                                  {"dim", opt.dim},
                                  {"lambda", opt.lambda},
                                  {"epsilon", opt.epsilon.has_value() ? json(*opt.epsilon) : json()},
                                  {"normalize", opt.normalize}}}};

  ta::persistence_diagram diagram;
  if (cloud.num_points == 1) {
    // No edges to filter; H0 is a single everlasting class, H1 is empty.
    diagram.dimension = opt.dim == "0" ? 0 : 1;
    if (opt.dim == "0") {
      diagram.points.push_back({0.0, std::numeric_limits<double>::infinity()});
      diagram.includes_essential = true;
    }
    ta::write_diagram_csv(opt.out, diagram);
    emit(echo);
    return exit_ok;
  }

  ta::distance_matrix dm = ta::pairwise_distances(cloud);
  if (opt.normalize) dm = ta::normalize_weights(dm);
  ta::weighted_graph g = ta::complete_graph(dm, /*normalized=*/false);
  const double clamp_death = dm.max_off_diagonal();

  const bool approx = opt.mode == "approx";
  if (approx) {
    const ta::threshold_rule rule = opt.epsilon.has_value()
                                        ? ta::threshold_rule::absolute(*opt.epsilon)
                                        : ta::threshold_rule::mean_minus_std(opt.lambda);
    const ta::threshold_result eps = ta::threshold_info(dm, rule);
    if (eps.clamped)
      std::cerr << "warning: threshold clamped to 0; the pruned graph keeps no edges\n";
    g = ta::sparsify(g, eps.epsilon, ta::sparsify_mode::drop);
  }

  if (opt.dim == "0") {
    diagram = approx ? ta::h0_diagram(g, clamp_death) : ta::h0_diagram(g);
  } else {
    diagram.dimension = 1;
    for (const double birth : ta::h1_births(g))
      diagram.points.push_back({birth, std::numeric_limits<double>::infinity()});
  }
  ta::write_diagram_csv(opt.out, diagram);
  emit(echo);
  return exit_ok;
}

struct distance_options {
  std::string a;
  std::string b;
  std::string metric = "sw";
  double p = 2.0;
  std::size_t projections = 50;
  std::uint64_t seed = 0;
};

int run_distance(const distance_options& opt) {
  if (opt.metric != "sw" && opt.metric != "wasserstein" && opt.metric != "bottleneck") {
    std::cerr << "error: unknown metric \"" << opt.metric
              << "\" (expected sw, wasserstein, or bottleneck)\n";
    return exit_budget;
  }
  // Distances compare the finite dimension-0 points; essential rows are
  // matched to each other implicitly and carry no cost.
  auto load = [](const std::string& path) {
    ta::persistence_diagram full = ta::read_diagram_csv(path, /*dimension_filter=*/0);
    ta::persistence_diagram finite;
    finite.points = full.finite_points();
    return finite;
  };
  const ta::persistence_diagram a = load(opt.a);
  const ta::persistence_diagram b = load(opt.b);

  double value = 0.0;
  if (opt.metric == "sw") {
    value = ta::sliced_wasserstein_diagrams(a, b, opt.p, {opt.seed, opt.projections, 2});
  } else if (opt.metric == "wasserstein") {
    value = ta::wasserstein_exact_diagrams(a, b, opt.p);
  } else {
    value = ta::bottleneck_diagrams(a, b);
  }
  emit(json{{"version", version_string},
            {"metric", opt.metric},
            {"value", value},
            {"p", opt.p},
            {"K", opt.projections},
            {"seed", opt.seed},
            {"config", json{{"a", opt.a}, {"b", opt.b}}}});
  return exit_ok;
}

struct loss_options {
  std::string teacher;
  std::string student;
  double alpha = 1.0;
  double beta = 0.01;
  double gamma = 0.01;
  double p = 2.0;
  std::size_t projections = 50;
  std::uint64_t seed = 0;
  double lambda = 0.5;
  bool exact = false;
  bool grad = false;
  bool h1 = false;
};

int run_loss(const loss_options& opt) {
  const ta::point_cloud teacher = ta::read_point_cloud(opt.teacher);
  const ta::point_cloud student = ta::read_point_cloud(opt.student);
  const ta::projection_sampler sampler{opt.seed, opt.projections, 2};
  const ta::threshold_rule rule = ta::threshold_rule::mean_minus_std(opt.lambda);
  const ta::loss_coefficients coeffs{opt.alpha, opt.beta, opt.gamma};
  const bool approx = !opt.exact;

  ta::loss_breakdown breakdown;
  if (opt.h1) {
    if (opt.grad)
      throw ta::invalid_input("--grad is not supported together with --h1 (value-only term)");
    breakdown.l_pw = ta::loss_pw(teacher, student);
    breakdown.l_dm = ta::loss_dm(teacher, student);
    breakdown.l_ta = ta::loss_ta_combined(teacher, student, opt.p, sampler, rule, approx);
    breakdown.l_total = coeffs.alpha * breakdown.l_pw + coeffs.beta * breakdown.l_ta +
                        coeffs.gamma * breakdown.l_dm;
  } else {
    breakdown = ta::loss_total(teacher, student, coeffs, opt.p, sampler, rule, approx, opt.grad);
  }

  json out = breakdown_json(breakdown, teacher.dimension);
  out["version"] = version_string;
  out["seed"] = opt.seed;
  out["config"] = json{{"teacher", opt.teacher}, {"student", opt.student},
                       {"alpha", opt.alpha},     {"beta", opt.beta},
                       {"gamma", opt.gamma},     {"p", opt.p},
                       {"K", opt.projections},   {"seed", opt.seed},
                       {"lambda", opt.lambda},   {"approx", approx},
                       {"h1", opt.h1}};
  emit(out);
  return exit_ok;
}

struct align_options {
  std::string teacher;
  std::string student;
  std::string fixture;  // noisy | rigid | bilingual
  std::size_t fixture_n = 64;
  std::size_t fixture_dim = 8;
  double fixture_noise = 0.1;
  std::string save_teacher;
  std::string save_student;
  std::string map = "free";
  std::size_t steps = 500;
  double lr = 0.05;
  double alpha = 1.0;
  double beta = 0.01;
  double gamma = 0.01;
  double p = 2.0;
  std::size_t projections = 50;
  std::uint64_t seed = 0;
  double lambda = 0.5;
  bool exact = false;
  std::size_t log_every = 10;
  std::string out;
  bool ablation = false;
};

int run_align(const align_options& opt) {
  ta::point_cloud teacher;
  ta::point_cloud student;
  if (!opt.fixture.empty()) {
    if (opt.fixture == "noisy") {
      teacher = ta::random_cloud(opt.fixture_n, opt.fixture_dim,
                                 ta::cloud_distribution::standard_gaussian,
                                 ta::derive_seed(opt.seed, 101));
      student = ta::noisy_copy(teacher, opt.fixture_noise, ta::derive_seed(opt.seed, 102));
    } else if (opt.fixture == "rigid") {
      teacher = ta::random_cloud(opt.fixture_n, opt.fixture_dim,
                                 ta::cloud_distribution::standard_gaussian,
                                 ta::derive_seed(opt.seed, 103));
      student = ta::random_rigid_motion(teacher, ta::derive_seed(opt.seed, 104));
    } else if (opt.fixture == "bilingual") {
      const ta::fixture_pair pair = ta::bilingual_fixture(
          opt.fixture_n, opt.fixture_dim, opt.fixture_noise, /*rigid_motion=*/true,
          ta::derive_seed(opt.seed, 105));
      teacher = pair.teacher;
      student = pair.student;
    } else {
      throw ta::invalid_input("unknown fixture kind: " + opt.fixture);
    }
  } else {
    if (opt.teacher.empty() || opt.student.empty())
      throw ta::invalid_input("align needs --teacher and --student files, or --fixture");
    teacher = ta::read_point_cloud(opt.teacher);
    student = ta::read_point_cloud(opt.student);
  }
  if (!opt.save_teacher.empty()) ta::write_point_cloud_csv(opt.save_teacher, teacher);
  if (!opt.save_student.empty()) ta::write_point_cloud_csv(opt.save_student, student);

  ta::optimizer_config config;
  config.steps = opt.steps;
  config.learning_rate = opt.lr;
  config.coeffs = {opt.alpha, opt.beta, opt.gamma};
  config.p = opt.p;
  config.projections = opt.projections;
  config.seed = opt.seed;
  config.rule = ta::threshold_rule::mean_minus_std(opt.lambda);
  config.approx = !opt.exact;
  config.log_every = opt.log_every;

  const ta::student_map map = opt.map == "affine"
                                  ? ta::student_map::affine_identity(teacher.dimension)
                                  : ta::student_map::free_points(student);

  const json config_echo{{"map", opt.map},          {"steps", opt.steps},
                         {"learning_rate", opt.lr}, {"alpha", opt.alpha},
                         {"beta", opt.beta},        {"gamma", opt.gamma},
                         {"p", opt.p},              {"K", opt.projections},
                         {"seed", opt.seed},        {"lambda", opt.lambda},
                         {"approx", !opt.exact},    {"log_every", opt.log_every},
                         {"fixture", opt.fixture},  {"n", teacher.num_points},
                         {"dim", teacher.dimension}};

  json out{{"version", version_string}, {"seed", opt.seed}, {"config", config_echo}};
  if (opt.ablation) {
    const auto table = ta::ablation_suite(teacher, student, map, config);
    json runs = json::array();
    for (const auto& entry : table) {
      json run = report_json(entry.report, teacher.dimension);
      run["coefficients"] = json{{"alpha", entry.coeffs.alpha},
                                 {"beta", entry.coeffs.beta},
                                 {"gamma", entry.coeffs.gamma}};
      runs.push_back(std::move(run));
    }
    out["ablation"] = std::move(runs);
  } else {
    const auto [final_map, report] = ta::optimize(teacher, student, map, config);
    (void)final_map;
    out.update(report_json(report, teacher.dimension));
  }

  if (!opt.out.empty())
    write_json_file(opt.out, out);
  else
    emit(out);
  return exit_ok;
}

struct sweep_options {
  std::vector<std::string> distributions{"uniform", "gaussian"};
  std::vector<std::size_t> sizes{64, 128, 256, 512};
  std::vector<double> lambdas{1.0, 0.5, 0.0, -0.5, -1.0};
  std::size_t dim = 512;
  std::size_t trials = 10;
  std::uint64_t seed = 0;
  std::string out;
  std::string json_out;
};

int run_sweep_cmd(const sweep_options& opt) {
  ta::sweep_config config;
  config.distributions.clear();
  for (const std::string& name : opt.distributions) {
    if (name == "uniform")
      config.distributions.push_back(ta::cloud_distribution::uniform_unit_cube);
    else if (name == "gaussian")
      config.distributions.push_back(ta::cloud_distribution::standard_gaussian);
    else
      throw ta::invalid_input("unknown distribution: " + name);
  }
  config.sizes = opt.sizes;
  config.lambdas = opt.lambdas;
  config.dimension = opt.dim;
  config.trials = opt.trials;
  config.master_seed = opt.seed;

  const ta::sweep_report report = ta::run_sweep(config);
  if (!opt.out.empty()) ta::write_sweep_csv(opt.out, report);

  json cells = json::array();
  for (const auto& cell : report.cells)
    cells.push_back(json{{"distribution", ta::distribution_name(cell.distribution)},
                         {"N", cell.num_points},
                         {"lambda", cell.lambda},
                         {"mean_components", cell.mean_components},
                         {"mean_sparsity", cell.mean_sparsity},
                         {"mean_seconds", cell.mean_pd_time_seconds}});
  const json payload{{"version", version_string},
                     {"seed", opt.seed},
                     {"config", json{{"distributions", opt.distributions},
                                     {"sizes", opt.sizes},
                                     {"lambdas", opt.lambdas},
                                     {"dim", opt.dim},
                                     {"trials", opt.trials},
                                     {"seed", opt.seed}}},
                     {"cells", cells}};
  if (!opt.json_out.empty())
    write_json_file(opt.json_out, payload);
  else
    emit(payload);
  return exit_ok;
}

struct bound_options {
  std::size_t trials = 100;
  std::size_t max_n = 32;
  std::vector<double> p_values{1.0, 2.0};
  std::uint64_t seed = 0;
};

int run_verify_bound(const bound_options& opt) {
  const auto certificates = ta::run_bound_campaign(opt.trials, opt.max_n, opt.p_values, opt.seed);
  std::size_t violations = 0;
  std::size_t upper_bound_paths = 0;
  json first_violation;
  for (const auto& cert : certificates) {
    if (!cert.satisfied) {
      ++violations;
      if (first_violation.is_null())
        first_violation = json{{"epsilon", cert.epsilon},
                               {"p", cert.p},
                               {"m_eps", cert.m_eps},
                               {"wp", cert.exact_wp},
                               {"bound", cert.bound}};
    }
    if (cert.wp_is_upper_bound) ++upper_bound_paths;
  }
  emit(json{{"version", version_string},
            {"seed", opt.seed},
            {"config", json{{"trials", opt.trials},
                            {"max_n", opt.max_n},
                            {"p_values", opt.p_values},
                            {"seed", opt.seed}}},
            {"certificates", certificates.size()},
            {"violations", violations},
            {"upper_bound_paths", upper_bound_paths},
            {"first_violation", first_violation}});
  return violations == 0 ? exit_ok : 1;
}

struct report_options {
  std::string a;
  std::string b;
  double p = 2.0;
  std::size_t projections = 50;
  std::uint64_t seed = 0;
};

int run_report(const report_options& opt) {
  const ta::point_cloud a = ta::read_point_cloud(opt.a);
  const ta::point_cloud b = ta::read_point_cloud(opt.b);
  const ta::alignment_metrics metrics =
      ta::compute_alignment_metrics(a, b, opt.seed, opt.projections);

  // Curves on both scales; which one a consumer wants depends on whether
  // the embeddings share a unit, so both are reported and flagged.
  const ta::distance_matrix da = ta::pairwise_distances(a);
  const ta::distance_matrix db = ta::pairwise_distances(b);
  const ta::divergence_stats norm_curves =
      ta::curve_divergence(ta::sorted_distance_curve(ta::normalize_weights(da)),
                           ta::sorted_distance_curve(ta::normalize_weights(db)));

  emit(json{{"version", version_string},
            {"seed", opt.seed},
            {"config", json{{"a", opt.a},
                            {"b", opt.b},
                            {"p", opt.p},
                            {"K", opt.projections},
                            {"seed", opt.seed}}},
            {"curve_divergence_raw",
             json{{"mean", metrics.dm_mean}, {"rmse", metrics.dm_rmse}, {"normalized", false}}},
            {"curve_divergence_normalized",
             json{{"mean", norm_curves.mean}, {"rmse", norm_curves.rmse}, {"normalized", true}}},
            {"w2_clouds", metrics.w2_clouds},
            {"w2_h0_diagrams", metrics.w2_h0_diagrams},
            {"sw2_h0_diagrams", metrics.sw2_h0_diagrams},
            {"h1_birth_w1", metrics.h1_birth_w1}});
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparsified H0 persistence with certified bounds and "
               "topology-aware alignment losses"};
  app.set_version_flag("--version", version_string);
  app.require_subcommand(1);

  diagram_options dia;
  CLI::App* cmd_diagram = app.add_subcommand("diagram", "Persistence diagram of an embedding file");
  cmd_diagram->add_option("input", dia.input, "embedding file (CSV or TOPA binary)")->required();
  cmd_diagram->add_option("--out", dia.out, "output diagram CSV")->required();
  cmd_diagram->add_option("--mode", dia.mode, "exact|approx (default approx)")
      ->check(CLI::IsMember({"exact", "approx"}));
  cmd_diagram->add_option("--dim", dia.dim, "0|1births (default 0)")
      ->check(CLI::IsMember({"0", "1births"}));
  CLI::Option* lambda_opt =
      cmd_diagram->add_option("--lambda", dia.lambda, "threshold mu - lambda*sigma (default 0.5)");
  cmd_diagram->add_option("--epsilon", dia.epsilon, "absolute threshold, overrides --lambda")
      ->excludes(lambda_opt);
  cmd_diagram->add_flag("--normalize", dia.normalize, "divide weights by the max distance first");

  distance_options dis;
  CLI::App* cmd_distance = app.add_subcommand("distance", "Distance between two diagram files");
  cmd_distance->add_option("--a", dis.a)->required();
  cmd_distance->add_option("--b", dis.b)->required();
  cmd_distance->add_option("--metric", dis.metric, "sw|wasserstein|bottleneck (default sw)");
  cmd_distance->add_option("--p", dis.p, "order of the distance (default 2)");
  cmd_distance->add_option("--projections", dis.projections, "directions for sw (default 50)");
  cmd_distance->add_option("--seed", dis.seed, "direction seed (default 0)");

  loss_options los;
  CLI::App* cmd_loss = app.add_subcommand("loss", "Alignment losses between two embedding files");
  cmd_loss->add_option("--teacher", los.teacher)->required();
  cmd_loss->add_option("--student", los.student)->required();
  cmd_loss->add_option("--alpha", los.alpha, "pointwise coefficient (default 1)");
  cmd_loss->add_option("--beta", los.beta, "topology coefficient (default 0.01)");
  cmd_loss->add_option("--gamma", los.gamma, "distance-matrix coefficient (default 0.01)");
  cmd_loss->add_option("--p", los.p, "order (default 2)");
  cmd_loss->add_option("--projections", los.projections, "directions (default 50)");
  cmd_loss->add_option("--seed", los.seed, "direction seed (default 0)");
  cmd_loss->add_option("--lambda", los.lambda, "sparsification threshold (default 0.5)");
  cmd_loss->add_flag("--exact", los.exact, "skip sparsification in the topology term");
  cmd_loss->add_flag("--grad", los.grad, "include the gradient w.r.t. the student");
  cmd_loss->add_flag("--h1", los.h1, "blend cycle-birth alignment into the topology term");

  align_options ali;
  CLI::App* cmd_align = app.add_subcommand("align", "Gradient-descent alignment run");
  cmd_align->add_option("--teacher", ali.teacher);
  cmd_align->add_option("--student", ali.student);
  cmd_align->add_option("--fixture", ali.fixture, "noisy|rigid|bilingual instead of files");
  cmd_align->add_option("--n", ali.fixture_n, "fixture size (default 64)");
  cmd_align->add_option("--dim", ali.fixture_dim, "fixture dimension (default 8)");
  cmd_align->add_option("--noise", ali.fixture_noise, "fixture noise sigma (default 0.1)");
  cmd_align->add_option("--save-teacher", ali.save_teacher, "dump the teacher cloud as CSV");
  cmd_align->add_option("--save-student", ali.save_student, "dump the student cloud as CSV");
  cmd_align->add_option("--map", ali.map, "free|affine (default free)")
      ->check(CLI::IsMember({"free", "affine"}));
  cmd_align->add_option("--steps", ali.steps, "gradient steps (default 500)");
  cmd_align->add_option("--lr", ali.lr, "learning rate (default 0.05)");
  cmd_align->add_option("--alpha", ali.alpha);
  cmd_align->add_option("--beta", ali.beta);
  cmd_align->add_option("--gamma", ali.gamma);
  cmd_align->add_option("--p", ali.p);
  cmd_align->add_option("--projections", ali.projections);
  cmd_align->add_option("--seed", ali.seed);
  cmd_align->add_option("--lambda", ali.lambda);
  cmd_align->add_flag("--exact", ali.exact);
  cmd_align->add_option("--log-every", ali.log_every, "logging cadence (default 10)");
  cmd_align->add_option("--out", ali.out, "write the report JSON here instead of stdout");
  cmd_align->add_flag("--ablation", ali.ablation, "run the four coefficient settings");

  sweep_options swe;
  CLI::App* cmd_sweep = app.add_subcommand("sweep", "Connectivity/sparsity sweep");
  cmd_sweep->add_option("--distributions", swe.distributions, "uniform gaussian");
  cmd_sweep->add_option("--sizes", swe.sizes, "cloud sizes (default 64 128 256 512)");
  cmd_sweep->add_option("--lambdas", swe.lambdas, "default 1.0 0.5 0 -0.5 -1.0");
  cmd_sweep->add_option("--dim", swe.dim, "cloud dimension (default 512)");
  cmd_sweep->add_option("--trials", swe.trials, "trials per cell (default 10)");
  cmd_sweep->add_option("--seed", swe.seed);
  cmd_sweep->add_option("--out", swe.out, "CSV output path");
  cmd_sweep->add_option("--json", swe.json_out, "JSON output path (default stdout)");

  bound_options bou;
  CLI::App* cmd_bound = app.add_subcommand("verify-bound", "Random certification campaign");
  cmd_bound->add_option("--trials", bou.trials, "default 100");
  cmd_bound->add_option("--max-n", bou.max_n, "largest cloud size (default 32)");
  cmd_bound->add_option("--p-values", bou.p_values, "default 1 2");
  cmd_bound->add_option("--seed", bou.seed);

  report_options rep;
  CLI::App* cmd_report = app.add_subcommand("report", "Curve and diagram distances between files");
  cmd_report->add_option("--a", rep.a)->required();
  cmd_report->add_option("--b", rep.b)->required();
  cmd_report->add_option("--p", rep.p);
  cmd_report->add_option("--projections", rep.projections);
  cmd_report->add_option("--seed", rep.seed);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_diagram->parsed()) return run_diagram(dia);
    if (cmd_distance->parsed()) return run_distance(dis);
    if (cmd_loss->parsed()) return run_loss(los);
    if (cmd_align->parsed()) return run_align(ali);
    if (cmd_sweep->parsed()) return run_sweep_cmd(swe);
    if (cmd_bound->parsed()) return run_verify_bound(bou);
    if (cmd_report->parsed()) return run_report(rep);
  } catch (const ta::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_parse;
  } catch (const ta::budget_exceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_budget;
  } catch (const ta::degenerate_input& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_degenerate;
  } catch (const ta::invalid_input& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_degenerate;
  } catch (const ta::divergence_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_ok;
}
