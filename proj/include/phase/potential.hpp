// Double-well potential, the 1D heteroclinic profile, its compactly
// saturating truncation, and the surface-tension constant.
#pragma once

#include <functional>
#include <vector>

namespace phase {

struct WellValue {
  double W, dW, d2W;
};

// Quartic well (1 - t^2)^2 / 4 on [-2, 2], cubic blend on [2, 3] matching
// value/slope/curvature at |t| = 2 and ending with zero curvature, linear
// beyond |t| = 3. Even, C^2, three critical points {-1, 0, 1}.
WellValue eval_well(double t);

struct DoubleWell {
  double scale = 1.0;
  WellValue operator()(double t) const;
};

// sigma = \int_{-1}^{1} sqrt(W(s)/2) ds, adaptive quadrature.
double sigma_constant(const DoubleWell& well = {});
// Exact value sqrt(2)/3 for the standard well.
double sigma_closed_form();

// Monotone increasing solution of u'' = W'(u), u(0) = 0, u(+-inf) = +-1.
// Standard well: tanh(t / sqrt(2)).
double profile_1d(double t);
double profile_1d_deriv(double t);

// Same profile for an arbitrary well via the first integral
// u' = sqrt(2 W(u)), RK4 from u(0) = 0. Odd in t.
double profile_shoot(const std::function<double(double)>& well_value, double t,
                     int steps_per_unit = 4096);

// Even C-infinity bump: 1 on (-1,1), 0 outside (-2,2), monotone on t >= 0.
double chi_bump(double t);
double chi_bump_d1(double t);

class TruncatedProfile {
 public:
  explicit TruncatedProfile(double epsilon);  // epsilon in (0, 1/4)

  double epsilon() const { return eps_; }
  double lambda_log() const { return Lambda_; }   // 3 |log eps|
  double cutoff() const { return 2.0 * eps_ * Lambda_; }

  double value(double t) const;     // saturates at +-1 for |t| >= cutoff
  double deriv(double t) const;
  double q_density(double t) const; // (eps/2) v'^2 + W(v)/eps, >= 0
  double energy() const;            // \int q over [-cutoff, cutoff]

 private:
  double eps_, Lambda_;
};

struct WellConstants {
  double sigma;
  double beta;
};

// Truncation-energy constant: |energy(eps) - 2 sigma| <= beta * eps^2 on
// (0, 1/4). Estimated over a log-spaced sweep (the eps = 0.2 endpoint
// dominates the fit at ratio 1.95e-7) and frozen with a 5x guard.
inline constexpr double kTruncationBeta = 1e-6;

WellConstants well_constants();

}  // namespace phase
