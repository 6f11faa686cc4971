// Command-line frontend: constants, delta, ullman, vandermonde, sample,
// wlln, intersect, volume. Every artifact embeds the full parameter set,
// the seed, the library version and the wall-clock duration; reruns with the
// same seed are byte-identical apart from the duration field.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mball/constants.hpp"
#include "mball/delta_opt.hpp"
#include "mball/experiments.hpp"
#include "mball/sampler.hpp"
#include "mball/ullman.hpp"
#include "mball/vandermonde.hpp"

using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct CommonOpts {
  std::string format = "json";
  std::string output;
  std::uint64_t seed = 42;
  int threads = 0;  // 0 = auto
};

int resolved_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("MBL_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--output", c.output, "Write the artifact to this path");
  cmd->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  cmd->add_option("--threads", c.threads,
                  "Worker threads (0 = MBL_THREADS or logical cores)");
}

std::vector<double> parse_t_grid(const std::string& s) {
  // lo:hi:count, inclusive linear grid.
  std::istringstream in(s);
  std::string lo_s, hi_s, cnt_s;
  if (!std::getline(in, lo_s, ':') || !std::getline(in, hi_s, ':') ||
      !std::getline(in, cnt_s))
    throw std::invalid_argument("t-grid must be lo:hi:count");
  const double lo = std::stod(lo_s), hi = std::stod(hi_s);
  const int count = std::stoi(cnt_s);
  if (count < 1 || hi < lo)
    throw std::invalid_argument("t-grid must satisfy lo <= hi, count >= 1");
  std::vector<double> grid(count);
  for (int i = 0; i < count; ++i)
    grid[i] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
  return grid;
}

// An artifact is the parameter block plus either a flat scalar map or a
// uniform table; both formats are derived from the same json tree.
struct Artifact {
  std::string command;
  json params = json::object();
  json scalars = json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::string summary;
};

std::string render_json(const Artifact& a, double duration_ms) {
  json doc;
  doc["schema"] = 1;
  doc["command"] = a.command;
  doc["version"] = kVersion;
  doc["params"] = a.params;
  doc["duration_ms"] = duration_ms;
  if (!a.scalars.empty()) doc["results"] = a.scalars;
  if (!a.columns.empty()) {
    doc["columns"] = a.columns;
    doc["rows"] = a.rows;
  }
  return doc.dump(2) + "\n";
}

std::string render_csv(const Artifact& a, double duration_ms) {
  std::ostringstream out;
  out.precision(17);
  out << "# schema=1\n# command=" << a.command << "\n# version=" << kVersion
      << "\n";
  for (const auto& [k, v] : a.params.items())
    out << "# param." << k << "=" << v.dump() << "\n";
  out << "# duration_ms=" << duration_ms << "\n";
  for (const auto& [k, v] : a.scalars.items())
    out << "# result." << k << "=" << v.dump() << "\n";
  if (!a.columns.empty()) {
    for (std::size_t i = 0; i < a.columns.size(); ++i)
      out << (i ? "," : "") << a.columns[i];
    out << "\n";
    for (const auto& row : a.rows) {
      for (std::size_t i = 0; i < row.size(); ++i)
        out << (i ? "," : "") << row[i];
      out << "\n";
    }
  }
  return out.str();
}

int emit(const Artifact& a, const CommonOpts& c,
         std::chrono::steady_clock::time_point t0) {
  const double duration_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                t0)
          .count();
  const std::string body =
      c.format == "csv" ? render_csv(a, duration_ms) : render_json(a, duration_ms);
  if (c.output.empty()) {
    std::cout << body;
  } else {
    std::ofstream f(c.output, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot open output file: " << c.output << "\n";
      return 1;
    }
    f << body;
    if (!f) {
      std::cerr << "error: write failed: " << c.output << "\n";
      return 1;
    }
  }
  // Sample dumps in CSV form also get a JSON sidecar with the chain config
  // and diagnostics, so the tuple table stays machine-trivial to parse.
  if (a.command == "sample" && c.format == "csv" && !c.output.empty()) {
    Artifact meta = a;
    meta.columns.clear();
    meta.rows.clear();
    std::ofstream side(c.output + ".json", std::ios::binary);
    if (side) side << render_json(meta, duration_ms);
  }
  if (!a.summary.empty()) std::cerr << a.summary << "\n";
  return 0;
}

json estimate_json(const mball::MonteCarloEstimate& e) {
  json j;
  j["value"] = e.value;
  j["stderr"] = e.stderr_est;
  j["n_samples"] = e.n_samples;
  j["seed"] = e.seed;
  for (const auto& [k, v] : e.metadata) j[k] = v;
  return j;
}

// ---- subcommand bodies ----

Artifact run_constants(const mball::PNorm& p, double q, double beta, int n) {
  Artifact a;
  a.command = "constants";
  a.params = {{"p", p.str()}, {"q", q}, {"beta", beta}, {"n", n}};
  a.scalars["delta_p"] = mball::delta_p_closed_form(p);
  a.scalars["a_p_beta"] = mball::a_p_beta(p, beta);
  a.scalars["log_c_n_beta"] = mball::log_c_n_beta(n, beta);
  a.scalars["asymptotic_radius"] =
      mball::asymptotic_volume_radius(mball::EnsembleSpec(n, beta, p));
  if (!p.is_inf()) {
    const double pv = p.value();
    a.scalars["lambda_p"] = mball::lambda_p(pv);
    a.scalars["b_p"] = mball::b_p(pv);
    a.scalars["free_entropy"] = mball::free_entropy(pv);
    if (q > 0.0) {
      a.scalars["C_pq"] = mball::C_pq(pv, q);
      a.scalars["a_pq"] = mball::a_pq(pv, q);
      const auto th = mball::intersection_threshold(pv, q);
      a.scalars["threshold"] = th.value;
      a.scalars["threshold_degenerate"] = th.degenerate;
    }
  }
  if (q >= 1.0 && (p.is_inf() || p.value() != q))
    a.scalars["A_pq_classical"] = mball::A_pq_classical(p, q);
  std::ostringstream s;
  s.precision(10);
  s << "constants: Delta(p)=" << a.scalars["delta_p"].get<double>();
  if (a.scalars.contains("threshold"))
    s << " threshold=" << a.scalars["threshold"].get<double>();
  a.summary = s.str();
  return a;
}

Artifact run_delta(double p, int n_max, std::uint64_t seed) {
  Artifact a;
  a.command = "delta";
  a.params = {{"p", p}, {"n_max", n_max}, {"seed", seed}};
  a.scalars["delta_limit"] = mball::delta_p_closed_form(mball::PNorm(p));
  a.columns = {"n", "delta_n", "lambda_hat", "max_residual", "converged"};
  mball::OptimizerConfig cfg;
  cfg.seed = seed;
  bool all_converged = true;
  for (int n = 2; n <= n_max; ++n) {
    const auto res = mball::optimize_delta_n(p, n, cfg);
    all_converged = all_converged && res.converged;
    a.rows.push_back({static_cast<double>(n), std::exp(res.log_delta_n),
                      res.lagrange_lambda_hat, res.max_lagrange_residual,
                      res.converged ? 1.0 : 0.0});
  }
  std::ostringstream s;
  s.precision(10);
  s << "delta: n_max=" << n_max << " Delta_hat=" << a.rows.back()[1]
    << " limit=" << a.scalars["delta_limit"].get<double>();
  if (!all_converged) s << " [warning: some rows did not converge]";
  a.summary = s.str();
  return a;
}

Artifact run_ullman(double p, int grid, std::size_t samples,
                    std::uint64_t seed) {
  Artifact a;
  a.command = "ullman";
  a.params = {{"p", p}, {"grid", grid}, {"samples", samples}, {"seed", seed}};
  a.scalars["lambda_p"] = mball::lambda_p(p);
  a.scalars["lambda_p_quadrature"] = mball::lambda_p_quadrature(p);
  a.scalars["free_entropy"] = mball::free_entropy(p);
  a.scalars["moment_p"] = mball::ullman_abs_moment(p, p);
  const mball::UllmanDist dist(p);
  if (samples > 0) {
    mball::Rng rng(seed);
    const auto draws = mball::ullman_sample(dist, samples, rng);
    double m1 = 0.0, m2 = 0.0;
    for (double v : draws) {
      m1 += std::fabs(v);
      m2 += v * v;
    }
    a.scalars["sample_abs_mean"] = m1 / samples;
    a.scalars["sample_second_moment"] = m2 / samples;
  }
  a.columns = {"y", "pdf", "cdf", "potential", "identity_rhs", "abs_error"};
  double max_err = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double y = grid == 1 ? 0.0 : -0.99 + 1.98 * i / (grid - 1);
    const auto rep = mball::log_potential(p, y);
    max_err = std::max(max_err, rep.abs_error);
    a.rows.push_back({y, mball::ullman_pdf(dist, y), mball::ullman_cdf(dist, y),
                      rep.potential_value, rep.identity_rhs, rep.abs_error});
  }
  std::ostringstream s;
  s.precision(6);
  s << "ullman: p=" << p << " max potential-identity error=" << max_err;
  a.summary = s.str();
  return a;
}

Artifact run_vandermonde(int n_max, bool check_gl) {
  Artifact a;
  a.command = "vandermonde";
  a.params = {{"n_max", n_max}, {"check_gl", check_gl}};
  a.columns = {"n", "gl_identity_gap", "delta_k"};
  double max_gap = 0.0;
  for (int n = 2; n <= n_max; ++n) {
    const double gap = mball::gl_vandermonde_identity_gap(n);
    max_gap = std::max(max_gap, gap);
    a.rows.push_back({static_cast<double>(n), gap, mball::k_diameter(n)});
  }
  a.scalars["max_gl_identity_gap"] = max_gap;
  std::ostringstream s;
  s.precision(6);
  s << "vandermonde: n=2.." << n_max << " max identity gap=" << max_gap;
  a.summary = s.str();
  return a;
}

Artifact run_sample(const mball::EnsembleSpec& spec, std::size_t count,
                    const mball::ChainConfig& chain) {
  Artifact a;
  a.command = "sample";
  a.params = {{"n", spec.n},
              {"beta", spec.beta},
              {"p", spec.p.str()},
              {"count", count},
              {"seed", chain.seed},
              {"burn_in", chain.burn_in},
              {"thinning", chain.thinning},
              {"proposal_scale", chain.proposal_scale},
              {"target_acceptance", chain.target_acceptance}};
  const auto samples = mball::sample_unit_ball_eigen(spec, count, chain);
  a.scalars["source"] =
      spec.p.value() == 2.0 ? "tridiagonal" : "mcmc";
  if (!spec.p.is_inf() && spec.p.value() != 2.0) {
    mball::ChainDiagnostics diag;
    mball::sample_loggas_mcmc(spec, std::min<std::size_t>(count, 200), chain,
                              &diag);
    a.scalars["acceptance_rate"] = diag.acceptance_rate;
    a.scalars["autocorr_lag1"] = diag.autocorr_lag1;
    a.scalars["ess_estimate"] = diag.ess_estimate;
  }
  a.columns.clear();
  for (int i = 0; i < spec.n; ++i)
    a.columns.push_back("lambda_" + std::to_string(i + 1));
  for (const auto& s : samples) a.rows.push_back(s.values);
  std::ostringstream s;
  s << "sample: " << count << " tuples, n=" << spec.n << " beta=" << spec.beta
    << " p=" << spec.p.str();
  a.summary = s.str();
  return a;
}

Artifact run_wlln(const mball::EnsembleSpec& spec, double q, std::size_t reps,
                  const mball::ChainConfig& chain, int threads) {
  Artifact a;
  a.command = "wlln";
  a.params = {{"n", spec.n},    {"beta", spec.beta}, {"p", spec.p.str()},
              {"q", q},         {"reps", reps},      {"seed", chain.seed},
              {"threads", threads}};
  const auto est = mball::wlln_experiment(spec, q, reps, chain, threads);
  a.scalars = estimate_json(est);
  std::ostringstream s;
  s.precision(8);
  s << "wlln: mean=" << est.value << " C_pq=" << est.metadata.at("c_pq")
    << " deviation=" << est.metadata.at("deviation");
  a.summary = s.str();
  return a;
}

Artifact run_intersect(double p, double q, double beta, int n,
                       const std::string& grid_spec, std::size_t reps,
                       const mball::ChainConfig& chain, int threads) {
  Artifact a;
  a.command = "intersect";
  a.params = {{"p", p},       {"q", q},          {"beta", beta},
              {"n", n},       {"t_grid", grid_spec}, {"reps", reps},
              {"seed", chain.seed}, {"threads", threads}};
  const auto grid = parse_t_grid(grid_spec);
  const auto rows =
      mball::intersection_experiment(p, q, beta, n, grid, reps, chain, threads);
  a.scalars["threshold"] = mball::intersection_threshold(p, q).value;
  a.scalars["a_pq"] = mball::a_pq(p, q);
  a.columns = {"t", "fraction", "stderr"};
  for (const auto& [t, est] : rows)
    a.rows.push_back({t, est.value, est.stderr_est});
  std::ostringstream s;
  s.precision(6);
  s << "intersect: " << rows.size() << " grid points, threshold="
    << a.scalars["threshold"].get<double>();
  a.summary = s.str();
  return a;
}

Artifact run_volume(const mball::EnsembleSpec& spec, std::size_t samples,
                    std::uint64_t seed, int threads) {
  Artifact a;
  a.command = "volume";
  a.params = {{"n", spec.n},        {"beta", spec.beta}, {"p", spec.p.str()},
              {"samples", samples}, {"seed", seed},      {"threads", threads}};
  const auto log_i = mball::estimate_log_I(spec, samples, seed, 8, threads);
  const auto vol = mball::log_volume_ball(spec, samples, seed, threads);
  a.scalars["log_I"] = estimate_json(log_i);
  a.scalars["log_volume"] = estimate_json(vol);
  a.scalars["log_c_n_beta"] = mball::log_c_n_beta(spec.n, spec.beta);
  std::ostringstream s;
  s.precision(8);
  s << "volume: log I=" << log_i.value << " (stderr " << log_i.stderr_est
    << "), log vol=" << vol.value;
  a.summary = s.str();
  return a;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Volumes and spectra of unit balls of self-adjoint matrix "
               "ensembles under eigenvalue l_p constraints"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  // constants
  auto* c_const = app.add_subcommand("constants", "Closed-form constants");
  CommonOpts o_const;
  std::string p_str;
  double q_opt = 0.0, beta = 2.0;
  int n = 10;
  c_const->add_option("--p", p_str, "Exponent p (positive real or 'inf')")
      ->required();
  c_const->add_option("--q", q_opt, "Second exponent q");
  c_const->add_option("--beta", beta, "Dyson index beta")->capture_default_str();
  c_const->add_option("--n", n, "Matrix size n")->capture_default_str();
  add_common(c_const, o_const);

  // delta
  auto* c_delta = app.add_subcommand("delta", "Finite-n optimizer Delta_n(p)");
  CommonOpts o_delta;
  double delta_p = 2.0;
  int n_max = 12;
  c_delta->add_option("--p", delta_p, "Exponent p")->required();
  c_delta->add_option("--n-max", n_max, "Largest n")->capture_default_str();
  add_common(c_delta, o_delta);

  // ullman
  auto* c_ull = app.add_subcommand("ullman", "Ullman density diagnostics");
  CommonOpts o_ull;
  double ull_p = 2.0;
  int ull_grid = 21;
  std::size_t ull_samples = 0;
  c_ull->add_option("--p", ull_p, "Exponent p")->required();
  c_ull->add_option("--grid", ull_grid, "Potential grid size")
      ->capture_default_str();
  c_ull->add_option("--samples", ull_samples, "Exact draws for moment check");
  add_common(c_ull, o_ull);

  // vandermonde
  auto* c_vdm = app.add_subcommand("vandermonde", "Node systems and diameters");
  CommonOpts o_vdm;
  int vdm_n_max = 50;
  bool check_gl = false;
  c_vdm->add_option("--n-max", vdm_n_max, "Largest n")->capture_default_str();
  c_vdm->add_flag("--check-gl", check_gl, "Check the Gauss-Lobatto identity");
  add_common(c_vdm, o_vdm);

  // shared ensemble options for sample / wlln / intersect / volume
  struct EnsOpts {
    int n = 10;
    double beta = 2.0;
    std::string p = "2";
    int burn_in = 1000;
    int thinning = 0;
  };

  auto* c_sample = app.add_subcommand("sample", "Uniform-ball eigenvalue dumps");
  CommonOpts o_sample;
  EnsOpts e_sample;
  std::size_t sample_count = 100;
  c_sample->add_option("--n", e_sample.n, "Matrix size n")->required();
  c_sample->add_option("--beta", e_sample.beta, "Dyson index beta")
      ->capture_default_str();
  c_sample->add_option("--p", e_sample.p, "Exponent p")->capture_default_str();
  c_sample->add_option("--count", sample_count, "Tuples to emit")
      ->capture_default_str();
  c_sample->add_option("--burn-in", e_sample.burn_in, "MCMC burn-in sweeps")
      ->capture_default_str();
  c_sample->add_option("--thinning", e_sample.thinning,
                       "Sweeps per retained state (0 = n)");
  add_common(c_sample, o_sample);

  auto* c_wlln = app.add_subcommand("wlln", "Weak-LLN statistic experiment");
  CommonOpts o_wlln;
  EnsOpts e_wlln;
  double wlln_q = 4.0;
  std::size_t wlln_reps = 500;
  c_wlln->add_option("--n", e_wlln.n, "Matrix size n")->required();
  c_wlln->add_option("--beta", e_wlln.beta, "Dyson index beta")
      ->capture_default_str();
  c_wlln->add_option("--p", e_wlln.p, "Exponent p")->capture_default_str();
  c_wlln->add_option("--q", wlln_q, "Statistic exponent q")->required();
  c_wlln->add_option("--reps", wlln_reps, "Repetitions")->capture_default_str();
  c_wlln->add_option("--burn-in", e_wlln.burn_in, "MCMC burn-in sweeps")
      ->capture_default_str();
  add_common(c_wlln, o_wlln);

  auto* c_int = app.add_subcommand("intersect", "Intersection threshold scan");
  CommonOpts o_int;
  EnsOpts e_int;
  double int_p = 2.0, int_q = 4.0;
  std::string t_grid = "0.8:1.2:9";
  std::size_t int_reps = 500;
  c_int->add_option("--p", int_p, "Exponent p")->required();
  c_int->add_option("--q", int_q, "Exponent q")->required();
  c_int->add_option("--beta", e_int.beta, "Dyson index beta")
      ->capture_default_str();
  c_int->add_option("--n", e_int.n, "Matrix size n")->required();
  c_int->add_option("--t-grid", t_grid, "Grid lo:hi:count")
      ->capture_default_str();
  c_int->add_option("--reps", int_reps, "Repetitions")->capture_default_str();
  c_int->add_option("--burn-in", e_int.burn_in, "MCMC burn-in sweeps")
      ->capture_default_str();
  add_common(c_int, o_int);

  auto* c_vol = app.add_subcommand("volume", "Monte Carlo log I and log volume");
  CommonOpts o_vol;
  EnsOpts e_vol;
  std::size_t vol_samples = 100000;
  c_vol->add_option("--n", e_vol.n, "Matrix size n (cap 8)")->required();
  c_vol->add_option("--beta", e_vol.beta, "Dyson index beta")
      ->capture_default_str();
  c_vol->add_option("--p", e_vol.p, "Exponent p (or 'inf')")
      ->capture_default_str();
  c_vol->add_option("--samples", vol_samples, "MC samples")
      ->capture_default_str();
  add_common(c_vol, o_vol);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    auto chain_of = [](const EnsOpts& e, const CommonOpts& c) {
      mball::ChainConfig chain;
      chain.burn_in = e.burn_in;
      chain.thinning = e.thinning;
      chain.seed = c.seed;
      return chain;
    };
    if (*c_const)
      return emit(run_constants(mball::PNorm::parse(p_str), q_opt, beta, n),
                  o_const, t0);
    if (*c_delta)
      return emit(run_delta(delta_p, n_max, o_delta.seed), o_delta, t0);
    if (*c_ull)
      return emit(run_ullman(ull_p, ull_grid, ull_samples, o_ull.seed), o_ull,
                  t0);
    if (*c_vdm) return emit(run_vandermonde(vdm_n_max, check_gl), o_vdm, t0);
    if (*c_sample) {
      const mball::EnsembleSpec spec(e_sample.n, e_sample.beta,
                                     mball::PNorm::parse(e_sample.p));
      return emit(run_sample(spec, sample_count, chain_of(e_sample, o_sample)),
                  o_sample, t0);
    }
    if (*c_wlln) {
      const mball::EnsembleSpec spec(e_wlln.n, e_wlln.beta,
                                     mball::PNorm::parse(e_wlln.p));
      return emit(run_wlln(spec, wlln_q, wlln_reps, chain_of(e_wlln, o_wlln),
                           resolved_threads(o_wlln.threads)),
                  o_wlln, t0);
    }
    if (*c_int)
      return emit(run_intersect(int_p, int_q, e_int.beta, e_int.n, t_grid,
                                int_reps, chain_of(e_int, o_int),
                                resolved_threads(o_int.threads)),
                  o_int, t0);
    if (*c_vol) {
      const mball::EnsembleSpec spec(e_vol.n, e_vol.beta,
                                     mball::PNorm::parse(e_vol.p));
      return emit(run_volume(spec, vol_samples, o_vol.seed,
                             resolved_threads(o_vol.threads)),
                  o_vol, t0);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
