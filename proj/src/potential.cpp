#include "phase/potential.hpp"

#include <cmath>
#include <stdexcept>

#include "phase/numerics.hpp"

namespace phase {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

// Cubic blend coefficients on s = |t| - 2 in [0, 1]:
// p(0) = 9/4, p'(0) = 6, p''(0) = 11, p''(1) = 0.
constexpr double kB0 = 2.25;
constexpr double kB1 = 6.0;
constexpr double kB2 = 5.5;
constexpr double kB3 = -11.0 / 6.0;
// Linear branch beyond |t| = 3.
constexpr double kL0 = kB0 + kB1 + kB2 + kB3;        // p(1)
constexpr double kL1 = kB1 + 2.0 * kB2 + 3.0 * kB3;  // p'(1)

}  // namespace

WellValue eval_well(double t) {
  double a = std::abs(t);
  double sign = t < 0.0 ? -1.0 : 1.0;
  if (a <= 2.0) {
    double q = 1.0 - t * t;
    return {0.25 * q * q, t * t * t - t, 3.0 * t * t - 1.0};
  }
  if (a <= 3.0) {
    double s = a - 2.0;
    double W = kB0 + s * (kB1 + s * (kB2 + s * kB3));
    double dW = kB1 + s * (2.0 * kB2 + 3.0 * s * kB3);
    double d2W = 2.0 * kB2 + 6.0 * s * kB3;
    return {W, sign * dW, d2W};
  }
  return {kL0 + kL1 * (a - 3.0), sign * kL1, 0.0};
}

WellValue DoubleWell::operator()(double t) const {
  WellValue v = eval_well(t);
  return {scale * v.W, scale * v.dW, scale * v.d2W};
}

double sigma_constant(const DoubleWell& well) {
  auto f = [&](double s) { return std::sqrt(well(s).W / 2.0); };
  return integrate_adaptive(f, -1.0, 1.0, 1e-13);
}

double sigma_closed_form() { return kSqrt2 / 3.0; }

double profile_1d(double t) { return std::tanh(t / kSqrt2); }

double profile_1d_deriv(double t) {
  double c = std::cosh(t / kSqrt2);
  return 1.0 / (kSqrt2 * c * c);
}

double profile_shoot(const std::function<double(double)>& well_value, double t,
                     int steps_per_unit) {
  if (t == 0.0) return 0.0;
  double a = std::abs(t);
  int steps = std::max(16, int(a * steps_per_unit));
  auto rhs = [&](double, double u) {
    double w = well_value(u);
    return w > 0.0 ? std::sqrt(2.0 * w) : 0.0;
  };
  double u = rk4_integrate(rhs, 0.0, 0.0, a, steps);
  return t > 0.0 ? u : -u;
}

double chi_bump(double t) {
  double a = std::abs(t);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  return smooth01(2.0 - a);
}

double chi_bump_d1(double t) {
  double a = std::abs(t);
  if (a <= 1.0 || a >= 2.0) return 0.0;
  double d = -smooth01_d1(2.0 - a);
  return t < 0.0 ? -d : d;
}

TruncatedProfile::TruncatedProfile(double epsilon) : eps_(epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.25))
    throw std::invalid_argument("TruncatedProfile: epsilon must be in (0, 1/4)");
  Lambda_ = 3.0 * std::abs(std::log(epsilon));
}

double TruncatedProfile::value(double t) const {
  if (t == 0.0) return 0.0;
  double sign = t > 0.0 ? 1.0 : -1.0;
  double a = std::abs(t);
  double eL = eps_ * Lambda_;
  if (a >= 2.0 * eL) return sign;
  double c = chi_bump(a / eL);
  return sign * (c * profile_1d(a / eps_) + (1.0 - c));
}

double TruncatedProfile::deriv(double t) const {
  double a = std::abs(t);
  double eL = eps_ * Lambda_;
  if (a >= 2.0 * eL) return 0.0;
  // Even function of t: compute at |t| for the odd profile.
  double c = chi_bump(a / eL);
  double dc = chi_bump_d1(a / eL) / eL;
  double H = profile_1d(a / eps_);
  double dH = profile_1d_deriv(a / eps_) / eps_;
  return dc * (H - 1.0) + c * dH;
}

double TruncatedProfile::q_density(double t) const {
  double a = std::abs(t);
  if (a >= cutoff()) return 0.0;
  double v = value(t);
  double dv = deriv(t);
  return 0.5 * eps_ * dv * dv + eval_well(v).W / eps_;
}

double TruncatedProfile::energy() const {
  double c = cutoff();
  auto f = [&](double t) { return q_density(t); };
  // Resolve the eps-scale core and the blend shoulders separately.
  double eL = eps_ * Lambda_;
  int panels = std::max(64, int(4.0 * Lambda_));
  return integrate_gl(f, -c, -eL, panels) + integrate_gl(f, -eL, eL, 2 * panels) +
         integrate_gl(f, eL, c, panels);
}

WellConstants well_constants() {
  return {sigma_constant(), kTruncationBeta};
}

}  // namespace phase
