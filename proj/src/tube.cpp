#include "phase/tube.hpp"

#include <cmath>
#include <stdexcept>

namespace phase {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

void validate_interface(const Interface& M) {
  if (!(M.theta_star > 1e-12 && M.theta_star < kPi - 1e-12))
    throw std::invalid_argument("Interface: latitude degenerates to a pole");
}

double cmc_latitude(double lambda, int n) {
  // arccot(lambda / n) in (0, pi)
  return std::atan2(double(n), lambda);
}

Field signed_distance(const SphereGrid& g, const Interface& M) {
  validate_interface(M);
  Field d(g);
  for (int i = 0; i < g.K; ++i) d.v[i] = M.theta_star - g.theta[i];
  return d;
}

double sigma_plus(const Interface& M) { return M.theta_star; }
double sigma_minus(const Interface& M) { return M.theta_star - kPi; }

double level_area(int n, double phi) {
  if (phi <= 0.0 || phi >= kPi) return 0.0;
  double s = std::sin(phi);
  return n == 1 ? 2.0 * kPi * s : 4.0 * kPi * s * s;
}

double cap_volume(int n, double phi) {
  if (phi <= 0.0) return 0.0;
  if (phi >= kPi) return n == 1 ? 4.0 * kPi : 2.0 * kPi * kPi;
  if (n == 1) return 2.0 * kPi * (1.0 - std::cos(phi));
  return 2.0 * kPi * phi - kPi * std::sin(2.0 * phi);
}

TubeProfile tube_profile(const Interface& M, double t, int n) {
  validate_interface(M);
  TubeProfile out;
  out.t = t;
  double lambda = n / std::tan(M.theta_star);
  double m = double(n);
  out.bound_H = lambda + m * t;
  out.bound_theta = std::exp(-t * (lambda + 0.5 * m * t));
  double phi = M.theta_star - t;  // polar angle of the level set
  if (phi <= 0.0 || phi >= kPi) {
    out.inside = false;
    return out;  // level_measure 0, H carries no meaning here
  }
  out.inside = true;
  out.level_measure = level_area(n, phi);
  out.H = n / std::tan(phi);
  double r = std::sin(phi) / std::sin(M.theta_star);
  out.theta = n == 1 ? r : r * r;
  return out;
}

double f_lambda(const Interface& M, double t, double lambda, int n) {
  validate_interface(M);
  double phi = M.theta_star - t;
  if (phi <= 0.0) return 0.0;
  if (phi >= kPi) {
    double vol = (n == 1) ? 4.0 * kPi : 2.0 * kPi * kPi;
    return -lambda * vol;
  }
  return level_area(n, phi) - lambda * cap_volume(n, phi);
}

FLambdaSweep f_lambda_sweep(const Interface& M, double lambda, int n,
                            int samples) {
  validate_interface(M);
  FLambdaSweep sweep;
  sweep.value_at_zero = f_lambda(M, 0.0, lambda, n);
  double lo = sigma_minus(M), hi = sigma_plus(M);
  sweep.t.reserve(samples);
  sweep.value.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    double t = lo + (hi - lo) * (i + 0.5) / samples;
    double v = f_lambda(M, t, lambda, n);
    sweep.t.push_back(t);
    sweep.value.push_back(v);
    if (v > sweep.value_at_zero + 1e-12) sweep.max_at_zero = false;
  }
  return sweep;
}

std::vector<TubeProfile> tube_sweep(const Interface& M, int n, int samples,
                                    double margin) {
  validate_interface(M);
  std::vector<TubeProfile> rows;
  rows.reserve(samples);
  double lo = sigma_minus(M) + margin, hi = sigma_plus(M) - margin;
  for (int i = 0; i < samples; ++i) {
    double t = lo + (hi - lo) * i / double(samples - 1);
    rows.push_back(tube_profile(M, t, n));
  }
  return rows;
}

}  // namespace phase
