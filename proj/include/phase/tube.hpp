// Signed distance to a latitude interface, level-set geometry of the
// normal-exponential tube (area element, mean curvature, cut times), and
// the sharp-interface functional F_lambda.
#pragma once

#include <vector>

#include "phase/manifold.hpp"

namespace phase {

// Latitude interface theta = theta_star. The enclosed region E is the north
// cap {theta < theta_star}; the unit normal points into E, so the mean
// curvature of the interface is n * cot(theta_star).
struct Interface {
  double theta_star;
};

void validate_interface(const Interface& M);

// theta_star for a lambda-CMC latitude on S^{n+1}: arccot(lambda / n).
double cmc_latitude(double lambda, int n);

// Signed distance field d(theta) = theta_star - theta: positive in E.
Field signed_distance(const SphereGrid& g, const Interface& M);

double sigma_plus(const Interface& M);   // theta_star (north pole cut)
double sigma_minus(const Interface& M);  // theta_star - pi (south pole cut)

struct TubeProfile {
  double t = 0.0;
  bool inside = false;      // t strictly between the cut times
  double level_measure = 0.0;  // H^n of the level set {d = t}
  double H = 0.0;              // mean curvature w.r.t. grad d
  double theta = 0.0;          // area element relative to the interface
  double bound_H = 0.0;        // lambda + m t
  double bound_theta = 0.0;    // exp(-t (lambda + m t / 2))
};

// Closed forms for the latitude interface on the unit S^{n+1}.
TubeProfile tube_profile(const Interface& M, double t, int n);

// H^n of a latitude sphere at polar angle phi, and the volume of the polar
// cap {theta < phi}.
double level_area(int n, double phi);
double cap_volume(int n, double phi);

// F_lambda(E_t) = |level set| - lambda * vol(E_t) where E_t = {d > t}.
double f_lambda(const Interface& M, double t, double lambda, int n);

struct FLambdaSweep {
  std::vector<double> t;
  std::vector<double> value;
  double value_at_zero = 0.0;
  bool max_at_zero = true;  // F(E_t) <= F(E_0) at every sample
};

FLambdaSweep f_lambda_sweep(const Interface& M, double lambda, int n,
                            int samples);

// One row of the tube sweep report (CSV: t,level_measure,H,theta,bound_H,
// bound_theta).
std::vector<TubeProfile> tube_sweep(const Interface& M, int n, int samples,
                                    double margin);

}  // namespace phase
