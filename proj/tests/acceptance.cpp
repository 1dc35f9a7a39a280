// Acceptance suite: one pass/fail line per criterion, exit 0 when all hold.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "phase/competitor.hpp"
#include "phase/energy.hpp"
#include "phase/manifold.hpp"
#include "phase/minmax.hpp"
#include "phase/potential.hpp"
#include "phase/slidepath.hpp"
#include "phase/stability.hpp"
#include "phase/tube.hpp"

using namespace phase;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

struct Criterion {
  int id;
  bool pass = true;
  std::string detail;
  double seconds = 0.0;
};

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

void require(Criterion& c, bool ok, const std::string& what) {
  if (!ok) {
    c.pass = false;
    if (!c.detail.empty()) c.detail += "; ";
    c.detail += what;
  }
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// ---------------------------------------------------------------------
// 1. 1D profile: sigma and the truncation-energy constant.
Criterion criterion1() {
  Criterion c{1};
  Timer timer;
  double sigma = sigma_constant();
  require(c, std::abs(sigma - std::sqrt(2.0) / 3.0) <= 1e-8,
          "sigma != sqrt(2)/3, got " + fmt(sigma));
  double two_sigma = 2.0 * sigma_closed_form();
  for (double eps : {0.2, 0.1, 0.05, 0.02, 0.01}) {
    TruncatedProfile p(eps);
    double dev = std::abs(p.energy() - two_sigma);
    require(c, dev <= kTruncationBeta * eps * eps,
            "profile energy deviation " + fmt(dev) + " at eps " + fmt(eps));
  }
  c.seconds = timer.elapsed();
  require(c, c.seconds < 1.0, "runtime over 1 s");
  c.detail = "sigma=" + fmt(sigma) + " beta=" + fmt(kTruncationBeta);
  return c;
}

// ---------------------------------------------------------------------
// 2. Tube calculus at theta* = pi/4.
Criterion criterion2() {
  Criterion c{2};
  Timer timer;
  Interface M{kPi / 4.0};
  const int n = 1;
  double h = 1e-5;
  double worst_ode = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    double t = sigma_minus(M) + 0.05 +
               (sigma_plus(M) - sigma_minus(M) - 0.1) * i / 2000.0;
    TubeProfile mid = tube_profile(M, t, n);
    require(c, std::abs(mid.H - 1.0 / std::tan(kPi / 4.0 - t)) <= 1e-12,
            "H closed form at t=" + fmt(t));
    if (t > 1e-9)
      require(c, mid.H >= 1.0 + t - 1e-12, "H >= 1 + t at t=" + fmt(t));
    if (t < -1e-9)
      require(c, mid.H <= 1.0 + t + 1e-12, "H <= 1 + t at t=" + fmt(t));
    require(c, mid.theta <= std::exp(-t * (1.0 + 0.5 * t)) + 1e-12,
            "theta bound at t=" + fmt(t));
    TubeProfile up = tube_profile(M, t + h, n);
    TubeProfile dn = tube_profile(M, t - h, n);
    worst_ode = std::max(
        worst_ode,
        std::abs((std::log(up.theta) - std::log(dn.theta)) / (2.0 * h) + mid.H));
  }
  require(c, worst_ode <= 1e-6, "tube ODE residual " + fmt(worst_ode));
  c.seconds = timer.elapsed();
  require(c, c.seconds < 1.0, "runtime over 1 s");
  c.detail = "ode residual=" + fmt(worst_ode);
  return c;
}

// ---------------------------------------------------------------------
// 3. Geometric functional sweep.
Criterion criterion3() {
  Criterion c{3};
  Timer timer;
  Interface M{kPi / 4.0};
  double F0 = f_lambda(M, 0.0, 1.0, 1);
  require(c, std::abs(F0 - 2.60258) <= 1e-4, "F(E_0) = " + fmt(F0));
  const int N = 4000;
  double lo = sigma_minus(M), hi = sigma_plus(M);
  double step = (hi - lo) / N;
  for (int i = 0; i <= N; ++i) {
    double t = lo + (hi - lo) * i / N;
    double v = f_lambda(M, t, 1.0, 1);
    require(c, v <= F0 + 1e-12, "sweep above F(E_0) at t=" + fmt(t));
    if (v > F0 - 1e-6)
      require(c, std::abs(t) < 2.0 * step,
              "near-maximum away from t=0 at t=" + fmt(t));
  }
  c.seconds = timer.elapsed();
  require(c, c.seconds < 1.0, "runtime over 1 s");
  c.detail = "F(E_0)=" + fmt(F0);
  return c;
}

// ---------------------------------------------------------------------
// 4. Sliding path at eps = 0.01.
Criterion criterion4() {
  Criterion c{4};
  Timer timer;
  SphereGrid g = SphereGrid::make(2, 2000);
  EnergyParams p{0.01, 1.0, sigma_closed_form()};
  Interface M{cmc_latitude(1.0, 1)};
  TruncatedProfile prof(p.epsilon);
  LimitEnergies lim = limit_energies(M, 1.0, 1);
  SlideTrace tr = slide_trace(g, M, p, 241, true);
  require(c, std::abs(tr.argmax_t) <= prof.cutoff(),
          "argmax " + fmt(tr.argmax_t) + " outside the profile support");
  require(c, std::abs(tr.max_energy - lim.A2) <= 0.01 * lim.A2,
          "slide max " + fmt(tr.max_energy) + " vs A2 " + fmt(lim.A2));
  RecoveryPath rec = recovery_path(g, M, p, 0.1, 161, 9);
  require(c, rec.max_energy < lim.A2 + 0.1,
          "recovery max " + fmt(rec.max_energy));
  c.seconds = timer.elapsed();
  require(c, c.seconds < 10.0, "runtime over 10 s");
  c.detail = "max=" + fmt(tr.max_energy) + " at t=" + fmt(tr.argmax_t) +
             ", A2=" + fmt(lim.A2) + ", recovery max=" + fmt(rec.max_energy);
  return c;
}

// ---------------------------------------------------------------------
// 5. Min-max at eps = 0.05, K = 800, P = 33.
Criterion criterion5(int* morse_out) {
  Criterion c{5};
  Timer timer;
  SphereGrid g = SphereGrid::make(2, 800);
  EnergyParams p{0.05, 1.0, sigma_closed_form()};
  StableConstants sc = stable_constants(p);
  Interface M{cmc_latitude(1.0, 1)};
  LimitEnergies lim = limit_energies(M, 1.0, 1);

  RecoveryPath rec = recovery_path(g, M, p, 0.1, 129, 9);
  PathOfFields init;
  init.nodes = rec.nodes;
  init = reparametrize(init, 33);
  init.nodes.front() = Field(g, sc.a);
  init.nodes.back() = Field(g, sc.b);
  RelaxOptions opts;
  opts.max_sweeps = 400;
  std::vector<SweepStat> trace;
  PathOfFields relaxed = relax_path(init, p, opts, &trace);
  require(c, std::abs(trace.back().max_energy - lim.A2) <= 0.02 * lim.A2,
          "relaxed max-node energy " + fmt(trace.back().max_energy));

  int arg = 0;
  double best = -1e300;
  for (int i = 0; i < 33; ++i) {
    double e = ac_energy(relaxed.nodes[i], p);
    if (e > best) {
      best = e;
      arg = i;
    }
  }
  MinMaxResult res = refine_critical_point(relaxed.nodes[arg], p);
  require(c, res.converged && res.residual <= 1e-9,
          "residual " + fmt(res.residual));
  require(c, std::abs(res.interface_theta_estimate - kPi / 4.0) <= g.dtheta,
          "interface latitude " + fmt(res.interface_theta_estimate));
  require(c, res.morse_index == 1,
          "morse index " + std::to_string(res.morse_index));
  require(c, res.beta_eps <= rec.max_energy,
          "beta above the recovery-path max");
  *morse_out = res.morse_index;
  c.seconds = timer.elapsed();
  require(c, c.seconds < 300.0, "runtime over 5 min");
  c.detail = "beta=" + fmt(res.beta_eps) + " residual=" + fmt(res.residual) +
             " latitude=" + fmt(res.interface_theta_estimate) +
             " index=" + std::to_string(res.morse_index);
  return c;
}

// ---------------------------------------------------------------------
// 6. No-minimal-component certificate: beta_eps -> A2 without a quantum gap.
Criterion criterion6() {
  Criterion c{6};
  Timer timer;
  Interface M{cmc_latitude(1.0, 1)};
  LimitEnergies lim = limit_energies(M, 1.0, 1);
  const double quantum = 2.0 * sigma_closed_form() * 2.0 * kPi;
  struct Run {
    double eps;
    int K;
  };
  std::vector<double> gaps;
  for (Run r : {Run{0.1, 800}, Run{0.05, 800}, Run{0.02, 2400}}) {
    SphereGrid g = SphereGrid::make(2, r.K);
    EnergyParams p{r.eps, 1.0, sigma_closed_form()};
    MinMaxResult res = refine_critical_point(slide_field(g, M, p, 0.0), p);
    require(c, res.converged, "newton failed at eps " + fmt(r.eps));
    double gap = std::abs(res.beta_eps - lim.A2);
    require(c, gap < quantum,
            "quantum-sized gap " + fmt(gap) + " at eps " + fmt(r.eps));
    gaps.push_back(gap);
  }
  for (std::size_t i = 0; i + 1 < gaps.size(); ++i)
    require(c, gaps[i + 1] <= gaps[i],
            "gap not monotone: " + fmt(gaps[i]) + " -> " + fmt(gaps[i + 1]));
  c.seconds = timer.elapsed();
  c.detail = "gaps " + fmt(gaps[0]) + " > " + fmt(gaps[1]) + " > " +
             fmt(gaps[2]) + " (quantum " + fmt(quantum) + ")";
  return c;
}

// ---------------------------------------------------------------------
// 7. Competitor ledger and the contradiction path.
Criterion criterion7(CylinderModel* model_out, ConstantsLedger* ledger_out) {
  Criterion c{7};
  Timer timer;
  CylinderModel model = build_model();
  ConstantsLedger led;
  try {
    led = choose_constants(model);
  } catch (const InfeasibleModel& e) {
    require(c, false, std::string("infeasible: ") + e.remark);
    c.seconds = timer.elapsed();
    return c;
  }
  for (const RemarkCheck& rc : led.remarks)
    require(c, rc.pass, "remark failed: " + rc.name);

  double sigma = sigma_closed_form();
  double eps = led.eps_tau / 2.0;
  double kap1 = kappa_eps(model, led, eps, 1.0);
  require(c, kap1 < -sigma / 3.0, "kappa(1) = " + fmt(kap1));
  double kmax = 0.0;
  for (int i = 0; i <= 64; ++i)
    kmax = std::max(kmax, kappa_eps(model, led, eps, i / 64.0));
  require(c, kmax < sigma / 6.0 * 1.01, "max kappa = " + fmt(kmax));

  ContradictionVerdict v = contradiction_path(model, led, eps);
  require(c, v.pass, "verdict FAIL: " + v.failure);
  double margin = std::min(v.sample_margin, v.budget_margin);
  require(c, margin >= 0.25 * led.margin,
          "margin " + fmt(margin) + " below a quarter of " + fmt(led.margin));
  *model_out = model;
  *ledger_out = led;
  c.seconds = timer.elapsed();
  require(c, c.seconds < 120.0, "runtime over 2 min");
  c.detail = "kappa(1)=" + fmt(kap1) + " verdict margin=" + fmt(margin) +
             " (ledger margin " + fmt(led.margin) + ")";
  return c;
}

// ---------------------------------------------------------------------
// 8. Error-term decay.
Criterion criterion8(const CylinderModel& model, const ConstantsLedger& led) {
  Criterion c{8};
  Timer timer;
  std::vector<double> eps = {0.02, 0.01, 0.005, 0.002, 0.001};
  std::vector<ErrorTermsRow> rows = error_terms(model, led, eps);
  auto mono = [&](const char* name, auto get) {
    for (std::size_t i = 0; i + 1 < rows.size(); ++i)
      require(c, std::abs(get(rows[i + 1])) <=
                     std::abs(get(rows[i])) * (1.0 + 1e-9),
              std::string(name) + " not monotone");
  };
  mono("M_g", [](const ErrorTermsRow& r) { return r.Mg_max; });
  mono("q1", [](const ErrorTermsRow& r) { return r.q1_int; });
  mono("q2", [](const ErrorTermsRow& r) { return r.q2_int; });
  mono("p1", [](const ErrorTermsRow& r) { return r.p1_max; });
  mono("p2", [](const ErrorTermsRow& r) { return r.p2_zero; });
  mono("mu", [](const ErrorTermsRow& r) { return r.mu_band; });
  require(c, rows.back().Mg_max < rows.front().Mg_max,
          "Dini max over the r-grid did not decrease");
  c.seconds = timer.elapsed();
  require(c, c.seconds < 60.0, "runtime over 1 min");
  c.detail = "M_g " + fmt(rows.front().Mg_max) + " -> " + fmt(rows.back().Mg_max);
  return c;
}

// ---------------------------------------------------------------------
// 9. Geometric index: circle spectrum and the PDE Morse index agree.
Criterion criterion9(int morse_from_minmax) {
  Criterion c{9};
  Timer timer;
  Interface M{kPi / 4.0};
  JacobiSpectrum spec = stability_spectrum(M, 1, 10);
  double expect[4] = {-2.0, 0.0, 0.0, 6.0};
  for (int i = 0; i < 4; ++i)
    require(c, std::abs(spec.eigenvalues[i] - expect[i]) <= 1e-6,
            "eigenvalue " + std::to_string(i) + " = " +
                fmt(spec.eigenvalues[i]));
  require(c, spec.index == 1, "index " + std::to_string(spec.index));
  require(c, spec.nullity == 2, "nullity " + std::to_string(spec.nullity));
  require(c, spec.index == morse_from_minmax,
          "geometric index disagrees with the PDE Morse index");
  c.seconds = timer.elapsed();
  c.detail = "spectrum (-2, 0, 0, 6), index 1, nullity 2";
  return c;
}

// ---------------------------------------------------------------------
// 10. Gradient/Hessian finite-difference consistency on 50 random fields.
Criterion criterion10() {
  Criterion c{10};
  Timer timer;
  SphereGrid g = SphereGrid::make(2, 200);
  EnergyParams p{0.05, 1.0, sigma_closed_form()};
  std::mt19937_64 rng(20260801);
  std::uniform_real_distribution<double> dist(-1.2, 1.2);
  for (int trial = 0; trial < 50; ++trial) {
    Field u(g), phi(g);
    for (int i = 0; i < g.K; ++i) {
      u.v[i] = dist(rng);
      phi.v[i] = dist(rng);
    }
    double inner = weighted_inner(ac_gradient(u, p), phi);
    double h = 1e-5;
    Field up(g), dn(g);
    for (int i = 0; i < g.K; ++i) {
      up.v[i] = u.v[i] + h * phi.v[i];
      dn.v[i] = u.v[i] - h * phi.v[i];
    }
    double fd = (ac_energy(up, p) - ac_energy(dn, p)) / (2.0 * h);
    require(c, std::abs(fd - inner) <= 1e-4 * (1.0 + std::abs(inner)),
            "gradient check trial " + std::to_string(trial));
    double quad = hessian_quadform(u, phi, p);
    double h2 = 1e-4;
    for (int i = 0; i < g.K; ++i) {
      up.v[i] = u.v[i] + h2 * phi.v[i];
      dn.v[i] = u.v[i] - h2 * phi.v[i];
    }
    double fd2 =
        (ac_energy(up, p) - 2.0 * ac_energy(u, p) + ac_energy(dn, p)) /
        (h2 * h2);
    require(c, std::abs(fd2 - quad) <= 1e-4 * (1.0 + std::abs(quad)),
            "hessian check trial " + std::to_string(trial));
  }
  c.seconds = timer.elapsed();
  c.detail = "50 random fields at relative 1e-4";
  return c;
}

}  // namespace

int main() {
  std::vector<Criterion> results;
  int morse_from_minmax = -1;
  CylinderModel model;
  ConstantsLedger led;

  results.push_back(criterion1());
  results.push_back(criterion2());
  results.push_back(criterion3());
  results.push_back(criterion4());
  results.push_back(criterion5(&morse_from_minmax));
  results.push_back(criterion6());
  results.push_back(criterion7(&model, &led));
  if (results.back().pass)
    results.push_back(criterion8(model, led));
  else
    results.push_back(Criterion{8, false, "skipped: no feasible ledger", 0.0});
  results.push_back(criterion9(morse_from_minmax));
  results.push_back(criterion10());

  bool all = true;
  for (const Criterion& c : results) {
    std::printf("CRITERION %2d %s  [%6.2f s]  %s\n", c.id,
                c.pass ? "PASS" : "FAIL", c.seconds, c.detail.c_str());
    all = all && c.pass;
  }
  std::printf("ACCEPTANCE: %s\n", all ? "ALL PASS" : "FAILURES PRESENT");
  return all ? 0 : 1;
}
