// Synthetic abstract-cylinder model of a tangent-disk interface point:
// push schedules and their energy ledgers, the ordered constants chooser,
// remainder terms, and the contradiction path.
//
// The 2-capacity of a shrinking ball in dimension two decays like 1/log k,
// so the ledger's cutoff ratio k is astronomically large and every derived
// scale (l, rho, the verdict margin) sits far below 1e-16. Energies are
// therefore tracked relative to the model limit energy and evaluated in
// 128-bit floating point internally; the double-valued results returned
// here are exact to well beyond the asserted margins.
#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace phase {

struct CylinderModel {
  int n = 2;             // interface dimension (two flat n-disks)
  double R = 1.0;        // disk radius
  double C1 = 1.0;       // sigma^-(x) = -min(C1 d^2, S_minus)
  double lambda = 1.0;   // prescribed curvature
  double m = 1.0;        // Ricci lower bound
  double S_minus = 1.0;  // inward cut cap
  double S_plus = 2.0;   // outward cut time (constant)
};

CylinderModel build_model(int n = 2, double R = 1.0, double C1 = 1.0,
                          double lambda = 1.0, double m = 1.0,
                          double S_minus = 1.0, double S_plus = 2.0);

double model_area(const CylinderModel&);    // H^n of the two disks
double model_volume(const CylinderModel&);  // cylinder measure
double model_limit_energy(const CylinderModel&);  // sharp-interface limit A2
double model_sigma_minus(const CylinderModel&, double dist);
double model_theta_profile(const CylinderModel&, double t);  // unclipped
double model_theta(const CylinderModel&, double dist, double t);  // 0 off-tube

struct RemarkCheck {
  std::string name;
  double lhs = 0.0, rhs = 0.0;  // asserted lhs < rhs (or documented)
  double margin = 0.0;          // (rhs - lhs) / |rhs|
  bool pass = true;
  bool assumed = false;  // model assumption, not a computed inequality
};

struct ConstantsLedger {
  double delta = 0.0, L = 0.0, k = 0.0, r0 = 0.0, rho = 0.0, l = 0.0;
  double gamma = 0.0, tau = 0.0, eps_tau = 0.0;
  double C2 = 0.0, C3 = 0.0, C4 = 0.0, C5 = 0.0, C6 = 0.0, C7 = 0.0;
  double area_M = 0.0, area_Bl = 0.0, area_Al = 0.0;
  double margin = 0.0;  // sigma H^n(A_l) / (2 (2^n - 1))
  double G0 = 0.0;      // capacity gradient mass at r = 0
  std::vector<RemarkCheck> remarks;
  bool feasible = true;
};

struct InfeasibleModel : std::runtime_error {
  InfeasibleModel(const std::string& remark_name)
      : std::runtime_error("infeasible model at remark: " + remark_name),
        remark(remark_name) {}
  std::string remark;
};

// Resolves delta -> L -> k -> r0 -> rho -> l -> tau -> eps_tau, each with a
// 10% feasibility margin; throws InfeasibleModel naming the first failing
// remark. Every remark lands in `remarks` with a pass/fail.
ConstantsLedger choose_constants(const CylinderModel&);

struct BumpPair {
  double l = 0.0, L = 0.0, k = 0.0;
  double grad_f_sup = 0.0;         // sampled sup |f'| (must be <= 2/l)
  double grad_ftilde_norm2 = 0.0;  // capacity energy, 2 * A_n-ish / log k
  std::function<double(double)> f, df, ftilde, dftilde;
};

// Radial push-out bump (f = -1 on B_l, 0 outside B_2l) and the capacity
// cutoff complement (ftilde = 0 on B_{L/k}, 1 outside B_L, log profile).
// Throws if the capacity target gamma cannot be met at the ledger's k.
BumpPair bump_functions(const CylinderModel&, const ConstantsLedger&);

// F_eps(v_eps) - A2 at finite eps, and the slide-state offset
// F_eps(Hbar(p - T)) - A2.
double model_energy_offset(const CylinderModel&, double eps);
double slide_relative_energy(const CylinderModel&, double eps, double T);

// Parameter range of schedule i in {1..7}.
std::pair<double, double> schedule_range(const CylinderModel&,
                                         const ConstantsLedger&, int i);

// F_eps(v^{r, g_i}) - F_eps(v_eps).
double schedule_relative_energy(const CylinderModel&, const ConstantsLedger&,
                                int i, double r, double eps);

double kappa_eps(const CylinderModel&, const ConstantsLedger&, double eps,
                 double s);
double P_eps(const CylinderModel&, const ConstantsLedger&, double eps,
             double r);

struct BaseTerms {
  double I = 0.0;          // tangential-gradient term
  double II = 0.0;         // level-shift term via the boundary/curvature form
  double theta_err = 0.0;  // lambda * int int (Theta^1 - Theta^2)
};

// Exact decomposition of F(v^{r,g}) - F(v^{0,g}); I + II matches the direct
// relative energy up to quadrature error.
BaseTerms base_terms(const CylinderModel&, const ConstantsLedger&, int schedule,
                     double r, double eps);

struct ErrorTermsRow {
  double eps = 0.0;
  double Mg_max = 0.0;   // max over the r-grid of M^g(r), g = g2
  double q1_int = 0.0;   // \int_{B_2l} q^1
  double q2_int = 0.0;   // \int_{A_L^k} q^2
  double q3_max = 0.0;   // sup q^3
  double q4_min = 0.0;   // inf q^4 (<= 0)
  double p1_max = 0.0;   // max over r of p^1(r)
  double p2_zero = 0.0;  // p^2(0)
  double m1_int = 0.0;
  double m2_int = 0.0;
  double mu_band = 0.0;  // measure of {sigma^- >= -2 eps Lambda}
};

std::vector<ErrorTermsRow> error_terms(const CylinderModel&,
                                       const ConstantsLedger&,
                                       const std::vector<double>& eps_list);

struct RemainderBudget {
  std::array<double, 9> iii{};  // per-segment remainder envelopes
  double dF0 = 0.0;             // F_eps(v_eps) - A2
  double total = 0.0;           // dF0 + sum iii
};

RemainderBudget remainder_budget(const CylinderModel&, const ConstantsLedger&,
                                 double eps);

struct PathSample {
  int segment = 0;  // 0..7: const, slide, g4 rev, g3 rev, g2 rev, g6, slide, const
  double r = 0.0;
  double delta_energy = 0.0;  // F(sample) - A2
  double bound = 0.0;         // tau - margin (uniform, relative to A2)
  double l2_step = 0.0;       // L2 distance to the previous sample
};

struct ContradictionVerdict {
  bool pass = false;
  std::string failure;         // names segment/r and the violated inequality
  double sample_margin = 0.0;  // min over samples of bound - delta
  double budget_margin = 0.0;  // tau - (dF0 + sum III)
  RemainderBudget budget;
  double A2 = 0.0;
  std::vector<PathSample> trace;
};

// Assembles the eight-segment path and asserts both the per-sample energy
// bound F < A2 - margin + tau and the remainder-budget certificate
// dF0 + sum_i max_r III_i < tau. Requires eps < eps_tau.
ContradictionVerdict contradiction_path(const CylinderModel&,
                                        const ConstantsLedger&, double eps,
                                        double tau_override = -1.0);

// Sampled disagreement between the two disk charts along the tangency set
// for the competitor state at push depth r (identically zero by symmetry).
double gluing_mismatch(const CylinderModel&, const ConstantsLedger&, double eps,
                       double r);

// G(r) = \int_{A_L^k} |grad ftilde|^2 theta at the g4 level; used by the
// push-up feasibility claim (F(r) = (r0 - r)^2 G(r) nonincreasing).
std::vector<std::pair<double, double>> g_function_samples(
    const CylinderModel&, const ConstantsLedger&, int npts);

}  // namespace phase
