#include "phase/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "phase/competitor.hpp"
#include "phase/energy.hpp"
#include "phase/io.hpp"
#include "phase/manifold.hpp"
#include "phase/minmax.hpp"
#include "phase/potential.hpp"
#include "phase/slidepath.hpp"
#include "phase/stability.hpp"
#include "phase/tube.hpp"

namespace phase {

namespace {

using nlohmann::ordered_json;

struct Assertions {
  ordered_json list = ordered_json::array();
  bool all_pass = true;

  void check(const std::string& name, bool pass, double value = 0.0,
             double bound = 0.0) {
    ordered_json entry;
    entry["name"] = name;
    entry["pass"] = pass;
    entry["value"] = value;
    entry["bound"] = bound;
    list.push_back(entry);
    all_pass = all_pass && pass;
  }
};

ordered_json config_json(const RunConfig& cfg) {
  ordered_json j;
  j["manifold"] = cfg.manifold;
  j["grid"] = cfg.grid;
  j["epsilon"] = cfg.epsilon;
  j["lambda"] = cfg.lambda;
  j["tau"] = cfg.tau;
  j["path_nodes"] = cfg.path_nodes;
  j["seed"] = cfg.seed;
  j["out"] = cfg.out_dir;
  j["minmax"] = {{"max_sweeps", cfg.minmax.max_sweeps},
                 {"tol", cfg.minmax.tol},
                 {"slide_samples", cfg.minmax.slide_samples}};
  j["slide"] = {{"samples", cfg.slide.samples}};
  j["tube"] = {{"theta_star", cfg.tube.theta_star},
               {"samples", cfg.tube.samples},
               {"margin", cfg.tube.margin}};
  j["competitor"] = {{"n", cfg.competitor.n},     {"R", cfg.competitor.R},
                     {"C1", cfg.competitor.C1},   {"m", cfg.competitor.m},
                     {"S_minus", cfg.competitor.S_minus},
                     {"S_plus", cfg.competitor.S_plus}};
  j["index"] = {{"count", cfg.index.count}};
  j["errors"] = {{"eps_list", cfg.errors.eps_list}};
  return j;
}

void write_summary(const RunConfig& cfg, const std::string& subcommand,
                   ordered_json results, const Assertions& as) {
  ordered_json j;
  j["config"] = config_json(cfg);
  j["constants"] = {{"sigma", sigma_closed_form()},
                    {"beta_truncation", kTruncationBeta}};
  j[subcommand] = std::move(results);
  j["assertions"] = as.list;
  j["exit"] = as.all_pass ? 0 : 2;
  std::filesystem::create_directories(cfg.out_dir);
  std::ofstream out(cfg.out_dir + "/summary.json", std::ios::binary);
  out << j.dump(2) << '\n';
}

SphereGrid make_grid(const RunConfig& cfg) {
  return SphereGrid::make(cfg.manifold == "s3" ? 3 : 2, cfg.grid);
}

EnergyParams make_params(const RunConfig& cfg) {
  return EnergyParams{cfg.epsilon, cfg.lambda, sigma_closed_form()};
}

int run_slide(const RunConfig& cfg) {
  SphereGrid g = make_grid(cfg);
  EnergyParams p = make_params(cfg);
  Interface M{cmc_latitude(p.lambda, g.n)};
  TruncatedProfile prof(p.epsilon);
  LimitEnergies lim = limit_energies(M, p.lambda, g.n);
  SlideTrace tr = slide_trace(g, M, p, cfg.slide.samples, true);
  RecoveryPath rec = recovery_path(g, M, p, cfg.tau, cfg.slide.samples);

  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < tr.t.size(); ++i)
    rows.push_back({tr.t[i], tr.energy_coarea[i], tr.energy_grid[i]});
  write_csv(cfg.out_dir + "/slide_trace.csv", "t,energy_coarea,energy_grid",
            rows);

  Assertions as;
  as.check("wall inequality strict", lim.wall_lhs > lim.wall_rhs, lim.wall_lhs,
           lim.wall_rhs);
  as.check("argmax within the profile support", std::abs(tr.argmax_t) <=
           prof.cutoff(), tr.argmax_t, prof.cutoff());
  double agree = 0.0;
  for (std::size_t i = 0; i < tr.t.size(); ++i)
    agree = std::max(agree, std::abs(tr.energy_coarea[i] - tr.energy_grid[i]) /
                                (1.0 + std::abs(tr.energy_coarea[i])));
  as.check("co-area vs grid energies agree to 1%", agree <= 0.01, agree, 0.01);
  as.check("recovery path below A2 + tau", rec.below_bound, rec.max_energy,
           lim.A2 + cfg.tau);

  ordered_json res;
  res["A2"] = lim.A2;
  res["wall_lhs"] = lim.wall_lhs;
  res["wall_rhs"] = lim.wall_rhs;
  res["argmax_t"] = tr.argmax_t;
  res["max_energy"] = tr.max_energy;
  res["recovery_max"] = rec.max_energy;
  write_summary(cfg, "slide", res, as);
  return as.all_pass ? 0 : 2;
}

int run_minmax(const RunConfig& cfg) {
  SphereGrid g = make_grid(cfg);
  EnergyParams p = make_params(cfg);
  StableConstants sc = stable_constants(p);  // throws if eps inadmissible
  Interface M{cmc_latitude(p.lambda, g.n)};
  RecoveryPath rec =
      recovery_path(g, M, p, cfg.tau, cfg.minmax.slide_samples);
  PathOfFields init;
  init.nodes = rec.nodes;
  init = reparametrize(init, cfg.path_nodes);
  init.nodes.front() = Field(g, sc.a);
  init.nodes.back() = Field(g, sc.b);

  RelaxOptions opts;
  opts.max_sweeps = cfg.minmax.max_sweeps;
  opts.tol = cfg.minmax.tol;
  std::vector<SweepStat> trace;
  PathOfFields relaxed = relax_path(init, p, opts, &trace);
  std::vector<std::vector<double>> rows;
  for (const SweepStat& st : trace)
    rows.push_back({double(st.sweep), st.max_energy, st.residual});
  write_csv(cfg.out_dir + "/minmax_trace.csv", "sweep,max_energy,residual",
            rows);

  int arg = 0;
  double best = -1e300;
  for (int i = 0; i < int(relaxed.nodes.size()); ++i) {
    double e = ac_energy(relaxed.nodes[i], p);
    if (e > best) {
      best = e;
      arg = i;
    }
  }
  MinMaxResult res = refine_critical_point(relaxed.nodes[arg], p);
  save_field(cfg.out_dir + "/u_crit.csv", res.u_crit);

  Assertions as;
  as.check("newton converged", res.converged, res.residual, 1e-9);
  as.check("mountain pass beta > F(a)", res.beta_eps > ac_energy(Field(g, sc.a), p),
           res.beta_eps, ac_energy(Field(g, sc.a), p));
  as.check("F(a) > F(b)", ac_energy(Field(g, sc.a), p) > ac_energy(Field(g, sc.b), p),
           ac_energy(Field(g, sc.a), p), ac_energy(Field(g, sc.b), p));
  as.check("beta below the recovery-path max", res.beta_eps <= rec.max_energy,
           res.beta_eps, rec.max_energy);
  as.check("morse index one", res.morse_index == 1, res.morse_index, 1);

  ordered_json out;
  out["beta_eps"] = res.beta_eps;
  out["residual"] = res.residual;
  out["morse_index"] = res.morse_index;
  out["iterations"] = res.iterations;
  out["interface_theta_estimate"] = res.interface_theta_estimate;
  out["energy_measure_mass"] = energy_measure_mass(res.u_crit, p);
  write_summary(cfg, "minmax", out, as);
  return as.all_pass ? 0 : 2;
}

int run_tube(const RunConfig& cfg) {
  SphereGrid g = make_grid(cfg);
  int n = g.n;
  Interface M{cfg.tube.theta_star > 0 ? cfg.tube.theta_star
                                      : cmc_latitude(cfg.lambda, n)};
  std::vector<TubeProfile> sweep = tube_sweep(M, n, cfg.tube.samples,
                                              cfg.tube.margin);
  std::vector<std::vector<double>> rows;
  for (const TubeProfile& tp : sweep)
    rows.push_back({tp.t, tp.level_measure, tp.H, tp.theta, tp.bound_H,
                    tp.bound_theta});
  write_csv(cfg.out_dir + "/tube_sweep.csv",
            "t,level_measure,H,theta,bound_H,bound_theta", rows);

  Assertions as;
  const double h = 1e-5;
  double worst_ode = 0.0, worst_ric = 1e300, worst_sign = 0.0,
         worst_theta = 0.0;
  for (const TubeProfile& tp : sweep) {
    if (!tp.inside) continue;
    TubeProfile up = tube_profile(M, tp.t + h, n);
    TubeProfile dn = tube_profile(M, tp.t - h, n);
    if (up.inside && dn.inside) {
      double dlog = (std::log(up.theta) - std::log(dn.theta)) / (2.0 * h);
      worst_ode = std::max(worst_ode, std::abs(dlog + tp.H));
      worst_ric = std::min(worst_ric, (up.H - dn.H) / (2.0 * h));
    }
    double sgn = (tp.t > 0 ? 1.0 : -1.0) * (tp.H - tp.bound_H);
    worst_sign = std::min(worst_sign, sgn);
    worst_theta = std::max(worst_theta, tp.theta - tp.bound_theta);
  }
  as.check("tube ODE d/dt log theta = -H", worst_ode <= 1e-6, worst_ode, 1e-6);
  as.check("Riccati bound dH/dt >= m", worst_ric >= g.ricci_lower() - 1e-6,
           worst_ric, g.ricci_lower());
  as.check("H sign structure about lambda + m t", worst_sign >= -1e-12,
           worst_sign, 0.0);
  as.check("theta below its exponential bound", worst_theta <= 1e-12,
           worst_theta, 0.0);
  // Coarea: integral of the level measures reproduces the volume.
  double vol = 0.0;
  {
    int N = 20000;
    double lo = sigma_minus(M), hi = sigma_plus(M);
    for (int i = 0; i < N; ++i) {
      double t = lo + (hi - lo) * (i + 0.5) / N;
      vol += tube_profile(M, t, n).level_measure * (hi - lo) / N;
    }
  }
  as.check("coarea volume within 0.5%",
           std::abs(vol - g.volume_closed_form()) <=
               0.005 * g.volume_closed_form(),
           vol, g.volume_closed_form());
  FLambdaSweep fs = f_lambda_sweep(M, cfg.lambda, n, cfg.tube.samples);
  as.check("F_lambda sweep maximal at t = 0", fs.max_at_zero,
           fs.value_at_zero, fs.value_at_zero);

  ordered_json res;
  res["theta_star"] = M.theta_star;
  res["sigma_plus"] = sigma_plus(M);
  res["sigma_minus"] = sigma_minus(M);
  res["f_lambda_at_zero"] = fs.value_at_zero;
  write_summary(cfg, "tube", res, as);
  return as.all_pass ? 0 : 2;
}

ordered_json ledger_json(const ConstantsLedger& led) {
  ordered_json j;
  j["delta"] = led.delta;
  j["L"] = led.L;
  j["k"] = led.k;
  j["r0"] = led.r0;
  j["rho"] = led.rho;
  j["l"] = led.l;
  j["gamma"] = led.gamma;
  j["tau"] = led.tau;
  j["eps_tau"] = led.eps_tau;
  j["C2"] = led.C2;
  j["C3"] = led.C3;
  j["C4"] = led.C4;
  j["C5"] = led.C5;
  j["C6"] = led.C6;
  j["C7"] = led.C7;
  j["area_M"] = led.area_M;
  j["area_Bl"] = led.area_Bl;
  j["area_Al"] = led.area_Al;
  j["margin"] = led.margin;
  j["G0"] = led.G0;
  j["feasible"] = led.feasible;
  ordered_json remarks = ordered_json::array();
  for (const RemarkCheck& rc : led.remarks) {
    remarks.push_back({{"name", rc.name},
                       {"lhs", rc.lhs},
                       {"rhs", rc.rhs},
                       {"margin", rc.margin},
                       {"pass", rc.pass},
                       {"assumed", rc.assumed}});
  }
  j["remarks"] = remarks;
  return j;
}

int run_competitor(const RunConfig& cfg, bool tau_given) {
  CylinderModel model =
      build_model(cfg.competitor.n, cfg.competitor.R, cfg.competitor.C1,
                  cfg.lambda, cfg.competitor.m, cfg.competitor.S_minus,
                  cfg.competitor.S_plus);
  Assertions as;
  ordered_json res;
  ConstantsLedger led;
  try {
    led = choose_constants(model);
  } catch (const InfeasibleModel& e) {
    res["infeasible_remark"] = e.remark;
    as.check("constants ledger feasible", false);
    write_summary(cfg, "competitor", res, as);
    return 2;
  }
  res["ledger"] = ledger_json(led);
  res["A2_model"] = model_limit_energy(model);

  double eps = led.eps_tau / 2.0;
  double kap1 = kappa_eps(model, led, eps, 1.0);
  double kap_max = 0.0;
  for (int i = 0; i <= 64; ++i)
    kap_max = std::max(kap_max, kappa_eps(model, led, eps, i / 64.0));
  double sigma = sigma_closed_form();
  double twoN = std::pow(2.0, model.n) - 1.0;
  as.check("kappa(1) < -sigma/(2^n - 1)", kap1 < -sigma / twoN, kap1,
           -sigma / twoN);
  as.check("max kappa < sigma/(2(2^n-1))", kap_max < sigma / (2.0 * twoN),
           kap_max, sigma / (2.0 * twoN));
  res["kappa_1"] = kap1;
  res["kappa_max"] = kap_max;
  res["P_eps_rho"] = P_eps(model, led, eps, led.rho);

  double tau = tau_given ? cfg.tau : -1.0;
  ContradictionVerdict v = contradiction_path(model, led, eps, tau);
  std::vector<std::vector<double>> rows;
  for (const PathSample& ps : v.trace)
    rows.push_back({double(ps.segment), ps.r, ps.delta_energy, ps.bound});
  // energy/bound columns are relative to the model limit energy A2.
  write_csv(cfg.out_dir + "/contradiction_trace.csv", "segment,r,energy,bound",
            rows);
  as.check("contradiction path verdict", v.pass, v.sample_margin,
           v.budget_margin);
  res["verdict"] = v.pass ? "PASS" : "FAIL";
  res["verdict_failure"] = v.failure;
  res["sample_margin"] = v.sample_margin;
  res["budget_margin"] = v.budget_margin;
  res["budget_total"] = v.budget.total;
  res["budget_dF0"] = v.budget.dF0;
  write_summary(cfg, "competitor", res, as);
  return as.all_pass ? 0 : 2;
}

int run_index(const RunConfig& cfg) {
  int n = cfg.manifold == "s3" ? 2 : 1;
  Interface M{cmc_latitude(cfg.lambda, n)};
  JacobiSpectrum spec = stability_spectrum(M, n, cfg.index.count);
  StabilityCertificate cert = capacity_cutoff_test(M, n);

  Assertions as;
  as.check("instability certificate negative", cert.negative, cert.value, 0.0);
  as.check("index equals one", spec.index == 1, spec.index, 1);

  ordered_json res;
  res["eigenvalues"] = spec.eigenvalues;
  res["index"] = spec.index;
  res["nullity"] = spec.nullity;
  res["certificate_value"] = cert.value;
  res["certificate_branch"] = cert.branch;
  write_summary(cfg, "index", res, as);
  return as.all_pass ? 0 : 2;
}

int run_errors(const RunConfig& cfg) {
  CylinderModel model =
      build_model(cfg.competitor.n, cfg.competitor.R, cfg.competitor.C1,
                  cfg.lambda, cfg.competitor.m, cfg.competitor.S_minus,
                  cfg.competitor.S_plus);
  ConstantsLedger led = choose_constants(model);
  std::vector<double> eps_list = cfg.errors.eps_list;
  std::sort(eps_list.rbegin(), eps_list.rend());
  std::vector<ErrorTermsRow> rows = error_terms(model, led, eps_list);
  std::vector<std::vector<double>> csv;
  for (const ErrorTermsRow& r : rows)
    csv.push_back({r.eps, r.Mg_max, r.q1_int, r.q2_int, r.q3_max, r.q4_min,
                   r.p1_max, r.p2_zero, r.m1_int, r.m2_int, r.mu_band});
  write_csv(cfg.out_dir + "/errors_decay.csv",
            "eps,Mg_max,q1_int,q2_int,q3_max,q4_min,p1_max,p2_zero,m1_int,"
            "m2_int,mu_band",
            csv);
  Assertions as;
  auto monotone = [&](const std::string& name, auto getter) {
    bool ok = true;
    for (std::size_t i = 0; i + 1 < rows.size(); ++i)
      ok = ok && std::abs(getter(rows[i + 1])) <=
                     std::abs(getter(rows[i])) * (1.0 + 1e-9);
    as.check(name + " monotone decreasing", ok, std::abs(getter(rows.back())),
             std::abs(getter(rows.front())));
  };
  monotone("M_g", [](const ErrorTermsRow& r) { return r.Mg_max; });
  monotone("q1", [](const ErrorTermsRow& r) { return r.q1_int; });
  monotone("q2", [](const ErrorTermsRow& r) { return r.q2_int; });
  monotone("p1", [](const ErrorTermsRow& r) { return r.p1_max; });
  monotone("p2", [](const ErrorTermsRow& r) { return r.p2_zero; });
  monotone("mu band", [](const ErrorTermsRow& r) { return r.mu_band; });
  ordered_json res;
  res["rows"] = csv.size();
  write_summary(cfg, "errors", res, as);
  return as.all_pass ? 0 : 2;
}

}  // namespace

void validate(const RunConfig& cfg) {
  if (cfg.manifold != "s2" && cfg.manifold != "s3")
    throw std::invalid_argument("config: manifold must be s2 or s3");
  if (cfg.grid <= 0) throw std::invalid_argument("config: grid must be positive");
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 0.25))
    throw std::invalid_argument("config: epsilon must be in (0, 1/4)");
  if (!(cfg.lambda > 0.0))
    throw std::invalid_argument("config: lambda must be positive");
  if (!(cfg.tau >= 0.0))
    throw std::invalid_argument("config: tau must be nonnegative");
  if (cfg.path_nodes < 16)
    throw std::invalid_argument("config: path-nodes must be at least 16");
}

int cli_main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Allen-Cahn min-max laboratory on round spheres"};
  app.set_config("--config", "", "Structured key = value configuration file");
  app.add_option("--manifold", cfg.manifold, "s2 or s3");
  app.add_option("--grid", cfg.grid, "latitude node count");
  app.add_option("--epsilon", cfg.epsilon, "interface scale");
  app.add_option("--lambda", cfg.lambda, "prescribed mean curvature");
  auto* tau_opt = app.add_option("--tau", cfg.tau, "path energy slack");
  app.add_option("--path-nodes", cfg.path_nodes, "min-max path nodes");
  app.add_option("--seed", cfg.seed, "seed for randomized vectors");
  app.add_option("--out", cfg.out_dir, "artifact directory");

  CLI::App* c_minmax = app.add_subcommand("minmax", "relax + refine + index");
  c_minmax->add_option("--max-sweeps", cfg.minmax.max_sweeps, "");
  c_minmax->add_option("--tol", cfg.minmax.tol, "");
  c_minmax->add_option("--slide-samples", cfg.minmax.slide_samples, "");
  CLI::App* c_slide = app.add_subcommand("slide", "trace + A2 + wall");
  c_slide->add_option("--samples", cfg.slide.samples, "");
  CLI::App* c_tube = app.add_subcommand("tube", "sweep + inequality report");
  c_tube->add_option("--theta-star", cfg.tube.theta_star, "");
  c_tube->add_option("--samples", cfg.tube.samples, "");
  c_tube->add_option("--margin", cfg.tube.margin, "");
  CLI::App* c_comp =
      app.add_subcommand("competitor", "ledger + schedules + verdict");
  c_comp->add_option("--n", cfg.competitor.n, "");
  c_comp->add_option("--R", cfg.competitor.R, "");
  c_comp->add_option("--C1", cfg.competitor.C1, "");
  c_comp->add_option("--m", cfg.competitor.m, "");
  c_comp->add_option("--S-minus", cfg.competitor.S_minus, "");
  c_comp->add_option("--S-plus", cfg.competitor.S_plus, "");
  CLI::App* c_index = app.add_subcommand("index", "stability spectrum");
  c_index->add_option("--count", cfg.index.count, "");
  CLI::App* c_errors = app.add_subcommand("errors", "eps-sweep decay table");
  c_errors->add_option("--eps-list", cfg.errors.eps_list, "");

  app.require_subcommand(1);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    validate(cfg);
    std::filesystem::create_directories(cfg.out_dir);
    if (c_minmax->parsed()) return run_minmax(cfg);
    if (c_slide->parsed()) return run_slide(cfg);
    if (c_tube->parsed()) return run_tube(cfg);
    if (c_comp->parsed()) return run_competitor(cfg, tau_opt->count() > 0);
    if (c_index->parsed()) return run_index(cfg);
    if (c_errors->parsed()) return run_errors(cfg);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "parameter error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "run failed: %s\n", e.what());
    return 2;
  }
  return 1;
}

}  // namespace phase
