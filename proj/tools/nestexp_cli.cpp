// SPDX-License-Identifier: Apache-2.0
//
// nestexp: command-line surface of the nested-exponential distribution
// toolkit. JSON goes to stdout (canonical field order, %.17g floats),
// diagnostics to stderr, CSV only for `sequences`.
//
// Exit codes: 0 success, 1 usage, 2 numerical-tolerance failure,
// 3 verification-suite failure.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nestexp/json_io.hpp"
#include "nestexp/nestexp.hpp"

namespace {

using nlohmann::json;

constexpr const char* kArtifactVersion = "1.0.0";

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  std::int64_t ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

json make_manifest(const std::string& command, json parameters,
                   const Stopwatch& sw) {
  return json{{"command", command},
              {"parameters", std::move(parameters)},
              {"artifact_version", kArtifactVersion},
              {"wall_time_ms", sw.ms()}};
}

void emit(const json& j) { std::cout << nestexp::canonical_json(j) << "\n"; }

json quadrature_params(const nestexp::QuadratureConfig& cfg) {
  return json{{"abs_tol", cfg.abs_tol},
              {"z_max", cfg.z_max},
              {"small_z_cut", cfg.small_z_cut},
              {"max_nodes", cfg.max_nodes}};
}

int run_kappa(std::uint64_t n_raw, double tol) {
  const Stopwatch sw;
  if (!(tol >= 1e-12 && tol <= 1e-4)) {
    std::cerr << "kappa: --tol must lie in [1e-12, 1e-4]\n";
    return 1;
  }
  const nestexp::SequenceIndex n(n_raw);
  auto cfg = nestexp::QuadratureConfig::defaults(n);
  cfg.abs_tol = tol;
  try {
    const nestexp::InversionResult r = nestexp::kappa(n, cfg);
    json params{{"n", n_raw}, {"tol", tol}};
    params.update(quadrature_params(cfg));
    emit(json{{"value", r.value},
              {"est_error", r.est_error},
              {"nodes_used", r.nodes_used},
              {"truncation_bound", r.truncation_bound},
              {"method", n_raw == 1 ? "closed_form"
                                    : (n.even() ? "parity_exact" : "gil_pelaez")},
              {"manifest", make_manifest("kappa", params, sw)}});
    return 0;
  } catch (const nestexp::ToleranceError& e) {
    std::cerr << "kappa: " << e.what() << " (best estimate " << e.best_estimate()
              << ", bound " << e.error_bound() << ")\n";
    return 2;
  } catch (const nestexp::DivergenceError& e) {
    std::cerr << "kappa: " << e.what() << " (raw " << e.raw_value() << ")\n";
    return 2;
  }
}

int run_cdf(const std::string& scale, std::uint64_t n_raw, double at,
            double tol) {
  const Stopwatch sw;
  if (!(tol >= 1e-12 && tol <= 1e-4)) {
    std::cerr << "cdf: --tol must lie in [1e-12, 1e-4]\n";
    return 1;
  }
  if (scale == "y" && !(at > 0.0)) {
    std::cerr << "cdf: --scale y requires --at > 0\n";
    return 1;
  }
  const nestexp::SequenceIndex n(n_raw);
  const double w = scale == "w" ? at : std::log(at);

  double value = 0.0;
  double est_error = 0.0;
  std::string method = "closed_form";
  json params{{"scale", scale}, {"n", n_raw}, {"at", at}, {"tol", tol}};
  try {
    if (n_raw == 1) {
      value = scale == "y" ? nestexp::cdf_y_exact(n, at).value()
                           : -std::expm1(-std::exp(at));
    } else if (n_raw == 2) {
      value = scale == "y" ? nestexp::cdf_y_exact(n, at).value()
                           : 1.0 / (1.0 + std::exp(-at));
    } else if (n_raw == 3) {
      value = scale == "y" ? nestexp::cdf_y_exact(n, at).value()
                           : nestexp::cdf_w3(at).value();
    } else {
      auto cfg = nestexp::QuadratureConfig::defaults(n);
      cfg.abs_tol = tol;
      params.update(quadrature_params(cfg));
      const nestexp::InversionResult r = nestexp::cdf_wn(n, w, cfg);
      value = r.value;
      est_error = r.est_error;
      method = "gil_pelaez";
    }
  } catch (const nestexp::ToleranceError& e) {
    std::cerr << "cdf: " << e.what() << " (best estimate " << e.best_estimate()
              << ")\n";
    return 2;
  } catch (const nestexp::DivergenceError& e) {
    std::cerr << "cdf: " << e.what() << " (raw " << e.raw_value() << ")\n";
    return 2;
  }
  emit(json{{"value", value},
            {"est_error", est_error},
            {"method", method},
            {"manifest", make_manifest("cdf", params, sw)}});
  return 0;
}

int run_sequences(std::uint64_t upto) {
  const Stopwatch sw;
  if (upto > 500) {
    std::cerr << "sequences: --upto must be <= 500\n";
    return 1;
  }
  const nestexp::CoefficientTable table(static_cast<std::size_t>(upto) + 1);
  const auto gaps =
      nestexp::ratio_convergence(std::max<std::size_t>(2, upto));
  std::cout << "k,bell,gould,ratio_gap\n";
  for (std::size_t k = 0; k <= upto; ++k) {
    std::cout << k << "," << table.bell(k).str() << "," << table.gould(k).str()
              << "," << nestexp::format_double17(gaps[k].gap) << "\n";
  }
  const json params{{"upto", upto}};
  std::cout << "# manifest: "
            << nestexp::canonical_json(make_manifest("sequences", params, sw))
            << "\n";
  return 0;
}

int run_taylor(std::uint64_t k, double w, std::uint64_t m) {
  const Stopwatch sw;
  if (m > nestexp::kMaxPartialSumOrder || k > 60) {
    std::cerr << "taylor: require --m <= 500 and --k <= 60\n";
    return 1;
  }
  const nestexp::SeriesQuery query{static_cast<std::size_t>(k), w,
                                   static_cast<std::size_t>(m),
                                   nestexp::kEulerGompertz};
  const nestexp::TaylorEngine engine(static_cast<std::size_t>(k + m));
  const double partial = engine.partial_sum(query);
  const nestexp::DerivativeVector oracle_vec =
      nestexp::g_derivatives(w, query.k);
  const double oracle = oracle_vec.values[query.k];
  const nestexp::RemainderEstimate rem =
      nestexp::remainder_shape(std::max<std::size_t>(1, query.m), query.k, w);
  const json params{{"k", k}, {"w", w}, {"m", m},
                    {"delta_ref", nestexp::kEulerGompertz}};
  emit(json{{"partial_sum", partial},
            {"oracle", oracle},
            {"oracle_degraded", oracle_vec.accuracy_degraded},
            {"gap", std::abs(partial - oracle)},
            {"remainder", json{{"m", rem.m},
                               {"bound_shape", rem.bound_shape},
                               {"converged", rem.converged}}},
            {"manifest", make_manifest("taylor", params, sw)}});
  return 0;
}

int run_simulate(std::uint64_t n_raw, std::uint64_t samples, std::uint64_t seed,
                 const std::string& method_name,
                 const std::vector<std::string>& tests) {
  const Stopwatch sw;
  if (samples < 2 || samples > 100000000ull) {
    std::cerr << "simulate: --samples must lie in [2, 1e8]\n";
    return 1;
  }
  const nestexp::SequenceIndex n(n_raw);
  const nestexp::SampleMethod method = method_name == "nested"
                                           ? nestexp::SampleMethod::nested
                                           : nestexp::SampleMethod::log_sum;
  // validate requested tests against n before any sampling
  for (const auto& t : tests) {
    if (t == "moments" || t == "equivalence") continue;
    if (t == "ks-closed-form" && (n_raw == 2 || n_raw == 3)) continue;
    if (t == "clt" && n_raw >= 100 && samples >= 10000) continue;
    if (t == "inverse-symmetry" && n.even()) continue;
    std::cerr << "simulate: test '" << t << "' is not applicable to n="
              << n_raw << " / samples=" << samples << "\n";
    return 1;
  }

  const nestexp::SampleBatch batch =
      nestexp::sample_wn(n, samples, seed, method);
  const nestexp::MomentSummary moments = nestexp::moment_summary(batch);
  const nestexp::Moments expected = nestexp::wn_moments(n);
  const std::uint64_t seed_b = seed ^ 0x9E3779B97F4A7C15ull;

  json test_reports = json::object();
  bool all_pass = true;
  const auto record = [&](const std::string& name,
                          const nestexp::DistTestReport& r) {
    test_reports[name] = json{{"statistic", r.statistic},
                              {"threshold", r.threshold},
                              {"pass", r.pass},
                              {"sample_count", r.sample_count}};
    all_pass = all_pass && r.pass;
  };

  for (const auto& t : tests) {
    if (t == "moments") {
      const double stat =
          std::max(std::abs(moments.mean - expected.mean) / moments.se_mean,
                   std::abs(moments.variance - expected.variance) /
                       moments.se_variance);
      record(t, nestexp::make_report(stat, 5.0, batch.count()));
    } else if (t == "ks-closed-form") {
      const auto ref = [&](double w) {
        return n_raw == 2 ? 1.0 / (1.0 + std::exp(-w))
                          : nestexp::cdf_w3(w).value();
      };
      record(t, nestexp::ks_test(batch, ref));
    } else if (t == "clt") {
      record(t, nestexp::clt_check(n, samples, seed));
    } else if (t == "equivalence") {
      record(t, nestexp::equivalence_check(n, samples, seed, seed_b));
    } else if (t == "inverse-symmetry") {
      record(t, nestexp::inverse_symmetry_check(n, samples, seed));
    }
  }

  std::string tests_csv;
  for (const auto& t : tests) tests_csv += (tests_csv.empty() ? "" : ",") + t;
  const json params{{"n", n_raw},           {"samples", samples},
                    {"seed", seed},         {"method", method_name},
                    {"tests", tests_csv},   {"equivalence_seed_b", seed_b}};
  emit(json{{"mean", moments.mean},
            {"variance", moments.variance},
            {"se_mean", moments.se_mean},
            {"se_variance", moments.se_variance},
            {"expected_mean", expected.mean},
            {"expected_variance", expected.variance},
            {"tests", test_reports},
            {"manifest", make_manifest("simulate", params, sw)}});
  return all_pass ? 0 : 2;
}

int run_verify(const std::string& profile_name) {
  const Stopwatch sw;
  const nestexp::Profile profile = profile_name == "full"
                                       ? nestexp::Profile::full
                                       : nestexp::Profile::quick;
  const auto reports = nestexp::run_verification(profile);
  std::size_t failures = 0;
  const json params{{"profile", profile_name}};
  emit(json{{"manifest", make_manifest("verify", params, sw)}});
  for (const auto& r : reports) {
    emit(json{{"criterion", r.criterion},
              {"computed", r.computed},
              {"reference", r.reference},
              {"tolerance", r.tolerance},
              {"pass", r.pass},
              {"runtime_ms", r.runtime_ms}});
    if (!r.pass) ++failures;
  }
  std::cerr << "verify: " << (reports.size() - failures) << "/"
            << reports.size() << " criteria passed (" << profile_name
            << " profile, " << sw.ms() << " ms)\n";
  return failures == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nested-exponential distribution toolkit"};
  app.require_subcommand(1);

  std::uint64_t n = 1;
  double tol = 1e-10;
  double at = 0.0;
  std::string scale = "w";
  std::uint64_t upto = 60;
  std::uint64_t k = 0;
  double w = 0.0;
  std::uint64_t m = 0;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  std::string method = "log_sum";
  std::vector<std::string> tests;
  std::string profile = "quick";

  auto* c_kappa = app.add_subcommand("kappa", "kappa_n = F_{Y_n}(1) = F_{W_n}(0)");
  c_kappa->add_option("--n", n, "sequence index (>= 1)")->required();
  c_kappa->add_option("--tol", tol, "absolute tolerance in [1e-12, 1e-4]");

  auto* c_cdf = app.add_subcommand("cdf", "distribution function on the y or w scale");
  c_cdf->add_option("--scale", scale, "y or w")
      ->check(CLI::IsMember({"y", "w"}))
      ->required();
  c_cdf->add_option("--n", n, "sequence index (>= 1)")->required();
  c_cdf->add_option("--at", at, "evaluation point")->required();
  c_cdf->add_option("--tol", tol, "absolute tolerance in [1e-12, 1e-4]");

  auto* c_seq = app.add_subcommand("sequences", "Bell/Gould table as CSV");
  c_seq->add_option("--upto", upto, "last index k (<= 500)");

  auto* c_taylor = app.add_subcommand("taylor", "partial sum of the survival-derivative series");
  c_taylor->add_option("--k", k, "derivative order (<= 60)")->required();
  c_taylor->add_option("--w", w, "expansion argument")->required();
  c_taylor->add_option("--m", m, "partial-sum order (<= 500)")->required();

  auto* c_sim = app.add_subcommand("simulate", "Monte Carlo sampling and distributional tests");
  c_sim->add_option("--n", n, "sequence index (>= 1)")->required();
  c_sim->add_option("--samples", samples, "sample count (<= 1e8)");
  c_sim->add_option("--seed", seed, "64-bit stream seed");
  c_sim->add_option("--method", method, "nested or log_sum")
      ->check(CLI::IsMember({"nested", "log_sum"}));
  c_sim->add_option("--tests", tests,
                    "comma list: moments,ks-closed-form,clt,equivalence,inverse-symmetry")
      ->delimiter(',');

  auto* c_verify = app.add_subcommand("verify", "run the acceptance suite");
  c_verify->add_option("--profile", profile, "quick or full")
      ->check(CLI::IsMember({"quick", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 1;
  }

  try {
    if (c_kappa->parsed()) return run_kappa(n, tol);
    if (c_cdf->parsed()) return run_cdf(scale, n, at, tol);
    if (c_seq->parsed()) return run_sequences(upto);
    if (c_taylor->parsed()) return run_taylor(k, w, m);
    if (c_sim->parsed()) return run_simulate(n, samples, seed, method, tests);
    if (c_verify->parsed()) return run_verify(profile);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
