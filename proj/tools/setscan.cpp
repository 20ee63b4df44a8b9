#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "setscan/cloud.hpp"
#include "setscan/denoise.hpp"
#include "setscan/experiments.hpp"
#include "setscan/minkowski.hpp"
#include "setscan/noise.hpp"
#include "setscan/offset.hpp"
#include "setscan/rconvex.hpp"
#include "setscan/samplers.hpp"

namespace {

using nlohmann::json;
using namespace setscan;

json finite_or_inf(double x) {
  if (std::isinf(x)) return json(x > 0 ? "inf" : "-inf");
  return json(x);
}

void emit_report(const json& report, const std::string& path) {
  if (path.empty()) {
    std::cout << report.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report to " + path);
  out << report.dump(2) << "\n";
}

Backend backend_from(const std::string& s) {
  if (s == "bb") return Backend::BB;
  if (s == "rconvex") return Backend::RCONVEX;
  throw std::invalid_argument("backend must be bb or rconvex");
}

double default_rconvex_r(const PointCloud& cloud) {
  const double c = default_epsilon_c(cloud);
  const double r = 0.5 * estimate_R_bb(cloud, epsilon_rule(cloud.size(), cloud.dim(), c)).value;
  if (!(r > 0.0)) throw std::runtime_error("pilot radius is not positive");
  return r;
}

struct SampleArgs {
  std::string shape, output;
  int n = 0, d = 0;
  double A = 0.0, R1 = 0.3;
  uint64_t seed = 1;
};

int run_sample(const SampleArgs& a) {
  PointCloud cloud;
  if (a.shape == "sphere" || a.shape == "shell") {
    if (a.d < 1) throw std::invalid_argument("sample: --d is required for sphere and shell");
    cloud = a.shape == "sphere" ? sample_sphere(a.n, a.d, a.seed)
                                : sample_shell(a.n, a.d, a.A, a.seed);
  } else {
    const Curve curve = a.shape == "superellipse-tube" ? superellipse3_polyline(a.R1 / 100.0)
                                                       : trefoil_polyline(a.R1 / 100.0);
    const int cd = curve.vertices.dim();
    if (a.d != 0 && a.d != cd)
      throw std::invalid_argument("sample: --d conflicts with the tube's ambient dimension");
    std::vector<double> lo, hi;
    curve_bbox(curve, a.R1, lo, hi);
    cloud = sample_curve_tube(a.n, curve, a.R1, lo, hi, a.seed);
  }
  write_csv(cloud, a.output);
  std::cout << "wrote " << cloud.size() << " points (d=" << cloud.dim() << ") to " << a.output
            << "\n";
  return 0;
}

struct DetectArgs {
  std::string input, report;
  double beta = 2.0, radius = 0.0, kappa = 0.0;
};

int run_detect(const DetectArgs& a) {
  const PointCloud cloud = read_csv(a.input);
  double r = a.radius;
  bool beta_warning = false;
  if (r <= 0.0)
    r = a.kappa > 0.0 ? theoretical_radius(cloud.size(), cloud.dim(), a.kappa)
                      : data_driven_radius(cloud, a.beta, &beta_warning);
  const DimensionDecision dec = detect_full_dimension(cloud, r);
  const BoundaryBallReport rep = boundary_balls(cloud, r);
  const int n_peel = static_cast<int>(rep.peel_ids.size());
  json report{{"n", cloud.size()},
              {"d", cloud.dim()},
              {"r_used", dec.r_used},
              {"delta0", finite_or_inf(dec.delta0)},
              {"full_dimensional", dec.full_dimensional},
              {"n_boundary", cloud.size() - n_peel},
              {"n_peel", n_peel}};
  if (beta_warning) {
    report["beta_warning"] = true;
    std::cerr << "warning: beta is at or below the consistency threshold 6^(1/d)\n";
  }
  emit_report(report, a.report);
  return 0;
}

struct NoiseArgs {
  std::string input, method = "bb", report;
  double epsilon = 0.0, r = 0.0;
  bool closeness = false;
};

int run_noise(const NoiseArgs& a) {
  const PointCloud cloud = read_csv(a.input);
  const Backend method = backend_from(a.method);
  NoiseEstimate est;
  if (method == Backend::BB) {
    const double eps = a.epsilon > 0.0
                           ? a.epsilon
                           : epsilon_rule(cloud.size(), cloud.dim(), default_epsilon_c(cloud));
    est = estimate_R_bb(cloud, eps);
  } else {
    est = estimate_R_rconvex(cloud, a.r > 0.0 ? a.r : default_rconvex_r(cloud));
  }
  json report{{"n", est.n},
              {"d", est.d},
              {"method", a.method},
              {"value", est.value},
              {"tuning_used", est.tuning}};
  if (a.closeness) report["closeness"] = closeness_index(cloud, est.tuning);
  emit_report(report, a.report);
  return 0;
}

struct DenoiseArgs {
  std::string input, backend = "bb", output, report, reference;
  double lambda = 0.5, epsilon = 0.0, r = 0.0, R_known = 0.0;
};

int run_denoise(const DenoiseArgs& a) {
  const PointCloud cloud = read_csv(a.input);
  DenoiseConfig cfg;
  cfg.backend = backend_from(a.backend);
  cfg.lambda = a.lambda;
  cfg.epsilon = a.epsilon;
  cfg.r = a.r;
  cfg.R_known = a.R_known;
  const DenoiseResult res = denoise(cloud, cfg);
  if (!a.output.empty()) write_csv(res.denoised, a.output);
  json report{{"n", cloud.size()},
              {"d", cloud.dim()},
              {"backend", a.backend},
              {"lambda", a.lambda},
              {"n_selected", res.selected.size()},
              {"n_kept", res.kept.size()},
              {"dropped", res.dropped},
              {"R_used", res.R_used},
              {"tuning_used", res.tuning_used}};
  if (!a.output.empty()) report["output"] = a.output;
  if (!a.reference.empty()) {
    if (a.reference.rfind("sphere:", 0) == 0) {
      std::stringstream ss(a.reference.substr(7));
      std::vector<double> vals;
      for (std::string tok; std::getline(ss, tok, ',');) vals.push_back(std::stod(tok));
      if (static_cast<int>(vals.size()) != cloud.dim() + 1)
        throw std::invalid_argument("reference sphere needs d center coordinates and a radius");
      SphereDescriptor sphere;
      sphere.radius = vals.back();
      vals.pop_back();
      sphere.center = vals;
      report["hausdorff_to_reference"] = hausdorff_distance(res.denoised, sphere);
    } else {
      const Curve ref = polyline_from_cloud(read_csv(a.reference), true);
      report["hausdorff_to_reference"] = hausdorff_distance(res.denoised, ref);
    }
  }
  emit_report(report, a.report);
  return 0;
}

struct MinkArgs {
  std::string input, report, backend = "bb", region;
  int dprime = 1;
  double r = 0.0, R1 = 0.0, lambda = 0.5;
  long long mc = 100000;
  uint64_t seed = 1;
  bool auto_r = false, noisy = false;
};

int run_minkowski(const MinkArgs& a) {
  const PointCloud cloud = read_csv(a.input);
  Region region = Region::box({0.0}, {1.0});
  const Region* region_ptr = nullptr;
  if (!a.region.empty()) {
    if (a.region.rfind("shell:", 0) != 0)
      throw std::invalid_argument("region must look like shell:inner,outer");
    std::stringstream ss(a.region.substr(6));
    std::string tok;
    std::vector<double> vals;
    while (std::getline(ss, tok, ',')) vals.push_back(std::stod(tok));
    if (vals.size() != 2) throw std::invalid_argument("region must look like shell:inner,outer");
    region = Region::centered_shell(cloud.dim(), vals[0], vals[1]);
    region_ptr = &region;
  }
  MinkowskiEstimate est;
  if (a.noisy) {
    DenoiseConfig cfg;
    cfg.backend = backend_from(a.backend);
    cfg.lambda = a.lambda;
    cfg.R_known = a.R1;
    const double r = a.r > 0.0 ? a.r : table2_radius(cloud.size(), cloud.dim());
    est = minkowski_noisy(cloud, a.dprime, cfg, r, a.mc, a.seed, region_ptr);
  } else {
    est = minkowski_noiseless(cloud, a.dprime, a.r, a.mc, a.seed, region_ptr);
  }
  json report{{"n", cloud.size()},      {"d", cloud.dim()},
              {"dprime", est.d_prime},  {"value", est.value},
              {"r_used", est.r_used},   {"mc_points", est.mc_points},
              {"mc_hits", est.mc_hits}, {"region", est.region},
              {"noisy", a.noisy},       {"seed", a.seed}};
  emit_report(report, a.report);
  return 0;
}

struct ExperimentArgs {
  std::string spec, out, csv;
};

int run_experiment_cmd(const ExperimentArgs& a) {
  std::ifstream in(a.spec);
  if (!in) throw std::runtime_error("cannot open spec " + a.spec);
  std::stringstream buf;
  buf << in.rdbuf();
  const ExperimentSpec spec = parse_experiment_spec(buf.str());
  if (!a.csv.empty()) std::filesystem::create_directories(a.csv);
  const json report = run_experiment(spec, a.csv);
  emit_report(report, a.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"set-estimation toolkit: offset peeling, r-convexity, denoising, "
               "Minkowski content"};
  app.require_subcommand(1);

  SampleArgs sa;
  CLI::App* sample = app.add_subcommand("sample", "draw a synthetic point cloud");
  sample->add_option("--shape", sa.shape, "sphere | shell | superellipse-tube | trefoil-tube")
      ->required()
      ->check(CLI::IsMember({"sphere", "shell", "superellipse-tube", "trefoil-tube"}));
  sample->add_option("--n", sa.n, "sample size")->required()->check(CLI::PositiveNumber);
  sample->add_option("--d", sa.d, "ambient dimension")->check(CLI::Range(1, 8));
  CLI::Option* opt_a =
      sample->add_option("--A", sa.A, "shell width parameter in [0,1)")->check(CLI::Range(0.0, 0.999999));
  sample->add_option("--R1", sa.R1, "tube radius")->check(CLI::PositiveNumber)->excludes(opt_a);
  sample->add_option("--seed", sa.seed, "rng seed");
  sample->add_option("--output", sa.output, "output CSV")->required();

  DetectArgs da;
  CLI::App* detect = app.add_subcommand("detect-dim", "full- vs lower-dimensionality decision");
  detect->add_option("--input", da.input, "input CSV")->required()->check(CLI::ExistingFile);
  detect->add_option("--beta", da.beta, "radius rule beta * maxmin_nn")->check(CLI::PositiveNumber);
  CLI::Option* opt_radius =
      detect->add_option("--radius", da.radius, "fixed radius")->check(CLI::PositiveNumber);
  detect->add_option("--kappa", da.kappa, "radius rule (kappa log n / n)^(1/d)")
      ->check(CLI::PositiveNumber)
      ->excludes(opt_radius);
  detect->add_option("--report", da.report, "report JSON path (stdout when omitted)");

  NoiseArgs na;
  CLI::App* noise = app.add_subcommand("estimate-noise", "estimate the tube half-width R1");
  noise->add_option("--input", na.input, "input CSV")->required()->check(CLI::ExistingFile);
  noise->add_option("--method", na.method, "bb | rconvex")
      ->check(CLI::IsMember({"bb", "rconvex"}));
  CLI::Option* opt_eps =
      noise->add_option("--epsilon", na.epsilon, "bb radius")->check(CLI::PositiveNumber);
  noise->add_option("--r", na.r, "rconvex radius")->check(CLI::PositiveNumber)->excludes(opt_eps);
  noise->add_flag("--closeness", na.closeness, "include the closeness index (O(n^2))");
  noise->add_option("--report", na.report, "report JSON path (stdout when omitted)");

  DenoiseArgs dn;
  CLI::App* den = app.add_subcommand("denoise", "project the lambda-subsample onto the "
                                                "estimated boundary");
  den->add_option("--input", dn.input, "input CSV")->required()->check(CLI::ExistingFile);
  den->add_option("--backend", dn.backend, "bb | rconvex")
      ->check(CLI::IsMember({"bb", "rconvex"}));
  den->add_option("--lambda", dn.lambda, "subsample cut in (0,1)");
  CLI::Option* opt_eps2 =
      den->add_option("--epsilon", dn.epsilon, "bb radius")->check(CLI::PositiveNumber);
  den->add_option("--r", dn.r, "rconvex radius")->check(CLI::PositiveNumber)->excludes(opt_eps2);
  den->add_option("--R", dn.R_known, "known tube half-width")->check(CLI::PositiveNumber);
  den->add_option("--output", dn.output, "denoised CSV path");
  den->add_option("--report", dn.report, "report JSON path (stdout when omitted)");
  den->add_option("--reference", dn.reference,
                  "analytic reference: sphere:c1,..,cd,R or a polyline CSV");

  MinkArgs ma;
  CLI::App* mink = app.add_subcommand("minkowski", "Minkowski content estimate");
  mink->add_option("--input", ma.input, "input CSV")->required()->check(CLI::ExistingFile);
  mink->add_option("--dprime", ma.dprime, "intrinsic dimension d'")->required();
  CLI::Option* opt_r = mink->add_option("--r", ma.r, "offset radius")->check(CLI::PositiveNumber);
  mink->add_flag("--auto", ma.auto_r, "radius rule 0.5 sqrt(maxmin_nn)")->excludes(opt_r);
  mink->add_flag("--noisy", ma.noisy, "denoise first");
  mink->add_option("--R1", ma.R1, "known tube half-width (noisy)")->check(CLI::PositiveNumber);
  mink->add_option("--lambda", ma.lambda, "denoiser subsample cut");
  mink->add_option("--backend", ma.backend, "denoiser backend bb | rconvex")
      ->check(CLI::IsMember({"bb", "rconvex"}));
  mink->add_option("--mc", ma.mc, "Monte Carlo points")->check(CLI::PositiveNumber);
  mink->add_option("--seed", ma.seed, "rng seed");
  mink->add_option("--region", ma.region, "sampling region shell:inner,outer "
                                          "(default: bounding box + r)");
  mink->add_option("--report", ma.report, "report JSON path (stdout when omitted)");

  ExperimentArgs ea;
  CLI::App* exp = app.add_subcommand("experiment", "run a study from a spec JSON");
  exp->add_option("--spec", ea.spec, "spec JSON path")->required()->check(CLI::ExistingFile);
  exp->add_option("--out", ea.out, "report JSON path (stdout when omitted)");
  exp->add_option("--csv", ea.csv, "directory for CSV outputs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*sample) return run_sample(sa);
    if (*detect) return run_detect(da);
    if (*noise) return run_noise(na);
    if (*den) return run_denoise(dn);
    if (*mink) return run_minkowski(ma);
    if (*exp) return run_experiment_cmd(ea);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
