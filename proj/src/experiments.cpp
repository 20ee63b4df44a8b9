#include "setscan/experiments.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "setscan/denoise.hpp"
#include "setscan/minkowski.hpp"
#include "setscan/offset.hpp"
#include "setscan/rng.hpp"
#include "setscan/samplers.hpp"

namespace setscan {

namespace {

using nlohmann::json;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Backend parse_backend(const std::string& s) {
  if (s == "bb") return Backend::BB;
  if (s == "rconvex") return Backend::RCONVEX;
  throw std::invalid_argument("experiment spec: backend must be bb or rconvex");
}

std::string bracket_string(const std::vector<long long>& ladder, int idx) {
  char buf[64];
  if (idx >= static_cast<int>(ladder.size())) {
    std::snprintf(buf, sizeof buf, "> %lld", ladder.back());
  } else if (idx == 0) {
    std::snprintf(buf, sizeof buf, "<= %lld", ladder.front());
  } else {
    std::snprintf(buf, sizeof buf, "[%lld, %lld]", ladder[idx - 1] + 1, ladder[idx]);
  }
  return buf;
}

double norm_of(const double* x, int d) {
  double s = 0.0;
  for (int k = 0; k < d; ++k) s += x[k] * x[k];
  return std::sqrt(s);
}

double sample_sd(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

ExperimentSpec parse_experiment_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("experiment spec: not valid JSON: ") + e.what());
  }
  ExperimentSpec spec;
  try {
    if (!j.is_object() || !j.contains("experiment"))
      throw std::invalid_argument("experiment spec: missing \"experiment\"");
    spec.experiment = j.at("experiment").get<std::string>();
    spec.full = j.value("full", false);
    spec.seed = j.value("seed", static_cast<uint64_t>(1));

    if (j.contains("cells")) {
      for (const auto& c : j.at("cells"))
        spec.cells.push_back({c.at("d").get<int>(), c.at("A").get<double>()});
    }
    if (j.contains("n_ladder")) spec.n_ladder = j.at("n_ladder").get<std::vector<long long>>();
    if (j.contains("dims")) spec.dims = j.at("dims").get<std::vector<int>>();
    if (j.contains("n_values")) spec.n_values = j.at("n_values").get<std::vector<long long>>();
    if (j.contains("t3cells")) {
      for (const auto& c : j.at("t3cells"))
        spec.t3cells.push_back(
            {c.at("d").get<int>(), c.at("R1").get<double>(), c.at("n").get<long long>()});
    }
    spec.m = j.value("m", 100);
    spec.R1 = j.value("R1", 0.3);
    spec.lambda = j.value("lambda", 0.5);
    spec.backend = j.value("backend", std::string("bb"));
    spec.mc = j.value("mc", static_cast<long long>(100000));

    if (spec.experiment == "custom") {
      const int grids = (spec.cells.empty() ? 0 : 1) + (j.contains("n_values") ? 1 : 0) +
                        (spec.t3cells.empty() ? 0 : 1);
      if (grids != 1)
        throw std::invalid_argument("experiment spec: custom needs exactly one grid "
                                    "(cells, n_values or t3cells)");
      spec.experiment = !spec.cells.empty() ? "table1"
                        : !spec.t3cells.empty() ? "table3"
                                                : "figure4";
    }
    if (spec.experiment != "table1" && spec.experiment != "figure4" &&
        spec.experiment != "table3")
      throw std::invalid_argument("experiment spec: unknown experiment \"" + spec.experiment +
                                  "\"");

    const int default_reps = spec.experiment == "table3" ? (spec.full ? 100 : 20)
                                                         : (spec.full ? 200 : 50);
    spec.replications = j.value("replications", default_reps);
    spec.threshold = j.value("threshold", 19 * spec.replications / 20);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("experiment spec: bad field: ") + e.what());
  }

  if (spec.replications < 1)
    throw std::invalid_argument("experiment spec: replications must be >= 1");
  if (spec.threshold < 1 || spec.threshold > spec.replications)
    throw std::invalid_argument("experiment spec: need 1 <= threshold <= replications");
  if (spec.m < 1) throw std::invalid_argument("experiment spec: m must be >= 1");
  if (spec.mc < 1) throw std::invalid_argument("experiment spec: mc must be >= 1");
  if (!(spec.R1 >= 0.0) || !(spec.R1 < 1.0))
    throw std::invalid_argument("experiment spec: R1 must be in [0, 1)");
  if (!(spec.lambda > 0.0) || !(spec.lambda < 1.0))
    throw std::invalid_argument("experiment spec: lambda must be in (0, 1)");
  parse_backend(spec.backend);

  if (spec.experiment == "table1") {
    if (spec.n_ladder.empty())
      spec.n_ladder = spec.full
                          ? std::vector<long long>{50, 100, 200, 300, 400, 500,
                                                   1000, 2000, 5000, 10000}
                          : std::vector<long long>{50, 100, 200, 300, 400, 500, 1000, 2000};
    if (spec.cells.empty()) {
      if (spec.full) {
        for (int d = 2; d <= 4; ++d)
          for (double A : {0.0, 0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5})
            spec.cells.push_back({d, A});
      } else {
        spec.cells = {{2, 0.0}, {2, 0.01}, {2, 0.1}, {3, 0.0}, {3, 0.05}, {3, 0.1}};
      }
    }
    for (size_t i = 0; i < spec.n_ladder.size(); ++i)
      if (spec.n_ladder[i] < 2 || (i > 0 && spec.n_ladder[i] <= spec.n_ladder[i - 1]))
        throw std::invalid_argument("experiment spec: n_ladder must be increasing and >= 2");
    for (const Table1Cell& c : spec.cells)
      if (c.d < 2 || c.d > 4 || !(c.A >= 0.0) || !(c.A < 1.0))
        throw std::invalid_argument("experiment spec: cells need d in 2..4 and A in [0, 1)");
  } else if (spec.experiment == "figure4") {
    if (spec.dims.empty()) spec.dims = {2, 3};
    if (spec.n_values.empty()) spec.n_values = {100, 1000, 10000};
    for (int d : spec.dims)
      if (d < 2 || d > 4)
        throw std::invalid_argument("experiment spec: dims must lie in 2..4");
    for (long long n : spec.n_values)
      if (n < 2) throw std::invalid_argument("experiment spec: n_values must be >= 2");
    if (!(spec.R1 > 0.0)) throw std::invalid_argument("experiment spec: figure4 needs R1 > 0");
  } else {
    if (spec.t3cells.empty()) {
      if (spec.full) {
        for (int d = 2; d <= 4; ++d)
          for (double R1 : {0.0, 0.2})
            for (long long n : {1000LL, 10000LL, 100000LL, 1000000LL})
              spec.t3cells.push_back({d, R1, n});
      } else {
        spec.t3cells = {{2, 0.0, 10000}, {2, 0.2, 10000}, {3, 0.0, 10000}};
      }
    }
    for (const Table3Cell& c : spec.t3cells)
      if (c.d < 2 || c.d > 4 || !(c.R1 >= 0.0) || !(c.R1 < 1.0) || c.n < 2)
        throw std::invalid_argument(
            "experiment spec: t3cells need d in 2..4, R1 in [0, 1), n >= 2");
  }
  return spec;
}

namespace {

json config_echo(const ExperimentSpec& spec) {
  json cfg{{"experiment", spec.experiment}, {"seed", spec.seed},
           {"replications", spec.replications}, {"full", spec.full}};
  if (spec.experiment == "table1") {
    cfg["threshold"] = spec.threshold;
    cfg["n_ladder"] = spec.n_ladder;
    json cells = json::array();
    for (const Table1Cell& c : spec.cells) cells.push_back({{"d", c.d}, {"A", c.A}});
    cfg["cells"] = cells;
  } else if (spec.experiment == "figure4") {
    cfg["dims"] = spec.dims;
    cfg["n_values"] = spec.n_values;
    cfg["m"] = spec.m;
    cfg["R1"] = spec.R1;
    cfg["lambda"] = spec.lambda;
    cfg["backend"] = spec.backend;
  } else {
    json cells = json::array();
    for (const Table3Cell& c : spec.t3cells)
      cells.push_back({{"d", c.d}, {"R1", c.R1}, {"n", c.n}});
    cfg["t3cells"] = cells;
    cfg["mc"] = spec.mc;
    cfg["lambda"] = spec.lambda;
    cfg["backend"] = spec.backend;
  }
  return cfg;
}

json report_skeleton(const ExperimentSpec& spec) {
  return json{{"experiment", spec.experiment},
              {"version", kVersion},
              {"seed", spec.seed},
              {"config", config_echo(spec)},
              {"cells", json::array()}};
}

}  // namespace

json run_table1(const ExperimentSpec& spec) {
  const auto t_all = std::chrono::steady_clock::now();
  json report = report_skeleton(spec);
  for (const Table1Cell& cell : spec.cells) {
    const auto t_cell = std::chrono::steady_clock::now();
    const uint64_t a_bits = std::bit_cast<uint64_t>(cell.A);
    json counts = json::array();
    int found_idx = static_cast<int>(spec.n_ladder.size());
    long long found_n = -1;
    for (size_t ni = 0; ni < spec.n_ladder.size(); ++ni) {
      const long long n = spec.n_ladder[ni];
      int correct = 0;
      for (int rep = 0; rep < spec.replications; ++rep) {
        const uint64_t s = derive_seed(spec.seed, {0x7ab1e1ull, static_cast<uint64_t>(cell.d),
                                                   a_bits, static_cast<uint64_t>(n),
                                                   static_cast<uint64_t>(rep)});
        const PointCloud cloud = cell.A > 0.0
                                     ? sample_shell(static_cast<int>(n), cell.d, cell.A, s)
                                     : sample_sphere(static_cast<int>(n), cell.d, s);
        const double r = data_driven_radius(cloud, 2.0);
        const DimensionDecision dec = detect_full_dimension(cloud, r);
        if (dec.full_dimensional == (cell.A > 0.0)) ++correct;
      }
      counts.push_back({{"n", n}, {"correct", correct}});
      if (correct >= spec.threshold) {
        found_idx = static_cast<int>(ni);
        found_n = n;
        break;
      }
    }
    report["cells"].push_back({{"d", cell.d},
                               {"A", cell.A},
                               {"counts", counts},
                               {"min_n", found_n},
                               {"bracket_index", found_idx},
                               {"bracket", bracket_string(spec.n_ladder, found_idx)},
                               {"seconds", seconds_since(t_cell)}});
  }
  report["total_seconds"] = seconds_since(t_all);
  return report;
}

json run_figure4(const ExperimentSpec& spec, const std::string& csv_dir) {
  const auto t_all = std::chrono::steady_clock::now();
  json report = report_skeleton(spec);
  DenoiseConfig cfg;
  cfg.backend = parse_backend(spec.backend);
  cfg.lambda = spec.lambda;
  const int bins = 35;
  const double e_lo = -0.35, e_hi = 0.35;
  for (int d : spec.dims) {
    for (long long n : spec.n_values) {
      const auto t_cell = std::chrono::steady_clock::now();
      const uint64_t s = derive_seed(spec.seed, {0xf19ull, static_cast<uint64_t>(d),
                                                 static_cast<uint64_t>(n)});
      const PointCloud cloud = sample_shell(static_cast<int>(n), d, spec.R1, s);
      const DenoiseResult den = denoise(cloud, cfg);

      // Exactly m e-values per kind: the denoised set is subsampled without
      // replacement when it is large enough, with replacement otherwise.
      const int kept = den.denoised.size();
      std::vector<double> e_den(spec.m);
      Rng pick(derive_seed(s, {0x5ab5ull}));
      if (kept >= spec.m) {
        std::vector<int> idx(kept);
        for (int i = 0; i < kept; ++i) idx[i] = i;
        for (int i = 0; i < spec.m; ++i) {
          std::swap(idx[i], idx[i + pick.uniform_int(kept - i)]);
          e_den[i] = norm_of(den.denoised[idx[i]], d) - 1.0;
        }
      } else {
        for (int i = 0; i < spec.m; ++i)
          e_den[i] = norm_of(den.denoised[pick.uniform_int(kept)], d) - 1.0;
      }
      std::vector<double> e_raw(spec.m);
      const int n_raw = static_cast<int>(std::min<long long>(n, spec.m));
      for (int i = 0; i < spec.m; ++i) e_raw[i] = norm_of(cloud[i % n_raw], d) - 1.0;

      std::vector<int> hist_den(bins, 0), hist_raw(bins, 0);
      auto bin_of = [&](double e) {
        int b = static_cast<int>(std::floor((e - e_lo) / (e_hi - e_lo) * bins));
        return std::clamp(b, 0, bins - 1);
      };
      int within = 0;
      for (double e : e_den) {
        ++hist_den[bin_of(e)];
        if (std::fabs(e) <= 0.05) ++within;
      }
      for (double e : e_raw) ++hist_raw[bin_of(e)];

      std::string csv_name;
      if (!csv_dir.empty()) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "figure4_d%d_n%lld.csv", d, n);
        csv_name = buf;
        std::ofstream out(csv_dir + "/" + csv_name);
        if (!out) throw std::runtime_error("figure4: cannot write CSV in " + csv_dir);
        out << "kind,e\n";
        char num[32];
        for (double e : e_den) {
          std::snprintf(num, sizeof num, "%.17g", e);
          out << "denoised," << num << "\n";
        }
        for (double e : e_raw) {
          std::snprintf(num, sizeof num, "%.17g", e);
          out << "raw," << num << "\n";
        }
      }

      json cell{{"d", d},
                {"n", n},
                {"selected", den.selected.size()},
                {"kept", kept},
                {"dropped", den.dropped},
                {"R_used", den.R_used},
                {"tuning_used", den.tuning_used},
                {"sd_denoised", sample_sd(e_den)},
                {"sd_raw", sample_sd(e_raw)},
                {"frac_within_005", static_cast<double>(within) / spec.m},
                {"hist_lo", e_lo},
                {"hist_hi", e_hi},
                {"hist_denoised", hist_den},
                {"hist_raw", hist_raw},
                {"seconds", seconds_since(t_cell)}};
      if (!csv_name.empty()) cell["csv"] = csv_name;
      report["cells"].push_back(cell);
    }
  }
  report["total_seconds"] = seconds_since(t_all);
  return report;
}

json run_table3(const ExperimentSpec& spec) {
  const auto t_all = std::chrono::steady_clock::now();
  json report = report_skeleton(spec);
  for (const Table3Cell& cell : spec.t3cells) {
    const auto t_cell = std::chrono::steady_clock::now();
    const double truth = cell.d == 2   ? 2.0 * std::numbers::pi
                         : cell.d == 3 ? 4.0 * std::numbers::pi
                                       : 2.0 * std::numbers::pi * std::numbers::pi;
    const uint64_t r1_bits = std::bit_cast<uint64_t>(cell.R1);
    std::vector<double> values(spec.replications);
    double r_used = 0.0;
    for (int rep = 0; rep < spec.replications; ++rep) {
      const uint64_t s = derive_seed(spec.seed, {0x7ab1e3ull, static_cast<uint64_t>(cell.d),
                                                 r1_bits, static_cast<uint64_t>(cell.n),
                                                 static_cast<uint64_t>(rep)});
      MinkowskiEstimate est;
      if (cell.R1 == 0.0) {
        const PointCloud cloud = sample_sphere(static_cast<int>(cell.n), cell.d, s);
        const double r = auto_radius(cloud);
        const Region region =
            Region::centered_shell(cell.d, std::max(0.0, 1.0 - 2.0 * r), 1.0 + 2.0 * r);
        est = minkowski_noiseless(cloud, cell.d - 1, r, spec.mc, derive_seed(s, {0x3cull}),
                                  &region);
      } else {
        const PointCloud cloud = sample_shell(static_cast<int>(cell.n), cell.d, cell.R1, s);
        const double r = table2_radius(cell.n, cell.d);
        const Region region =
            Region::centered_shell(cell.d, std::max(0.0, 1.0 - 2.0 * r), 1.0 + 2.0 * r);
        DenoiseConfig cfg;
        cfg.backend = parse_backend(spec.backend);
        cfg.lambda = spec.lambda;
        est = minkowski_noisy(cloud, cell.d - 1, cfg, r, spec.mc, derive_seed(s, {0x3cull}),
                              &region);
      }
      values[rep] = est.value;
      r_used = est.r_used;
    }
    double ss = 0.0;
    for (double v : values) ss += (v - truth) * (v - truth);
    const double err_pct =
        100.0 / truth * std::sqrt(ss / static_cast<double>(spec.replications));
    report["cells"].push_back({{"d", cell.d},
                               {"R1", cell.R1},
                               {"n", cell.n},
                               {"r_rule", cell.R1 == 0.0 ? "auto" : "table2"},
                               {"r_last", r_used},
                               {"truth", truth},
                               {"err_pct", err_pct},
                               {"values", values},
                               {"seconds", seconds_since(t_cell)}});
  }
  report["total_seconds"] = seconds_since(t_all);
  return report;
}

json run_experiment(const ExperimentSpec& spec, const std::string& csv_dir) {
  if (spec.experiment == "table1") return run_table1(spec);
  if (spec.experiment == "figure4") return run_figure4(spec, csv_dir);
  if (spec.experiment == "table3") return run_table3(spec);
  throw std::invalid_argument("experiment spec: unknown experiment \"" + spec.experiment + "\"");
}

}  // namespace setscan
