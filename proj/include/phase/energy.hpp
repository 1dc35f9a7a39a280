// Inhomogeneous Allen-Cahn functional on a sphere grid, its first and
// second variations, and the stable constant solutions.
#pragma once

#include "phase/manifold.hpp"

namespace phase {

struct EnergyParams {
  double epsilon = 0.05;
  double lambda = 1.0;
  double sigma = 0.47140452079103168;  // sqrt(2)/3
};

// Largest epsilon (10% margin) for which W'(t) = eps * sigma * lambda still
// has three roots. lambda = 0 is always admissible.
double admissible_epsilon_max(double sigma, double lambda);

void validate(const EnergyParams& p);

// (eps/2)|grad u|^2 + W(u)/eps - sigma lambda u integrated over the grid.
// The gradient part uses the edge quadrature of dirichlet_energy so that
// ac_gradient below is the exact derivative of this discrete value.
double ac_energy(const Field& u, const EnergyParams& p);

// L2(weight) gradient: -eps lap(u) + W'(u)/eps - sigma lambda.
Field ac_gradient(const Field& u, const EnergyParams& p);

// Linearization applied to phi: -eps lap(phi) + W''(u)/eps phi.
Field hessian_apply(const Field& u, const Field& phi, const EnergyParams& p);

// <hessian_apply(u, phi), phi> in the weighted inner product; equals the
// second variation integral eps |grad phi|^2 + W''(u)/eps phi^2.
double hessian_quadform(const Field& u, const Field& phi,
                        const EnergyParams& p);

double weighted_inner(const Field& a, const Field& b);
double weighted_norm(const Field& a);

struct StableConstants {
  double a;  // root near -1 (stable)
  double b;  // root near +1 (stable)
  double c;  // middle root (unstable)
};

// Roots of W'(t) = eps sigma lambda, refined to machine precision.
// Throws if the equation does not have three roots with 10% margin.
StableConstants stable_constants(const EnergyParams& p);

// (2 sigma)^{-1} * \int (eps/2 |grad u|^2 + W(u)/eps).
double energy_measure_mass(const Field& u, const EnergyParams& p);

}  // namespace phase
