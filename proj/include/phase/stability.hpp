// Stability of the latitude interface: Jacobi operator spectrum on the
// orbit, the quadratic form B(phi, phi), and the Ricci-positivity
// instability certificate.
#pragma once

#include <string>
#include <vector>

#include "phase/tube.hpp"

namespace phase {

struct JacobiSpectrum {
  std::vector<double> eigenvalues;  // ascending, first `count`
  int index = 0;    // eigenvalues < -tol
  int nullity = 0;  // |eigenvalue| <= tol (relative to the spectral radius)
};

// Closed-form spectrum of -Delta_M - (|A|^2 + Ric(nu, nu)) on the latitude
// orbit (circle for n = 1, round 2-sphere for n = 2):
//   kappa_l = (l (l + n - 1) - n) / sin^2(theta_star), multiplicity 1 / 2 / 2
//   for the circle and 2l + 1 for the 2-sphere.
JacobiSpectrum stability_spectrum(const Interface& M, int n, int count = 10);

// Discrete cross-check: finite differences on the orbit. For n = 1, the
// periodic second-difference spectrum on the circle; eigenvalues ascending.
std::vector<double> orbit_fd_spectrum(const Interface& M, int n, int K,
                                      int count);

struct StabilityCertificate {
  double value = 0.0;     // B(1, 1) = -H^n(M) (|A|^2 + Ric)
  bool negative = false;  // instability witnessed by the constant function
  std::string branch;     // "closed" or "singular-unsupported"
};

StabilityCertificate capacity_cutoff_test(const Interface& M, int n);

// B(phi, phi) for a constant test function phi = c.
double stability_form_constant(const Interface& M, int n, double c);

double orbit_measure(const Interface& M, int n);  // H^n of the orbit

}  // namespace phase
