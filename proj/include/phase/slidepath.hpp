// Sliding-profile path v^t = Hbar(d - t): co-area energy, the limit energy
// A2 with the wall inequality, and the recovery path between the stable
// constants.
#pragma once

#include <vector>

#include "phase/energy.hpp"
#include "phase/manifold.hpp"
#include "phase/tube.hpp"

namespace phase {

struct SlideTrace {
  std::vector<double> t;
  std::vector<double> energy_coarea;
  std::vector<double> energy_grid;  // empty if grid evaluation was skipped
  double argmax_t = 0.0;
  double max_energy = 0.0;  // co-area value at the argmax
};

struct LimitEnergies {
  double A2 = 0.0;        // 2 sigma H^n(M) - sigma lambda mu(E) + sigma lambda mu(N\E)
  double wall_lhs = 0.0;  // H^n(M)
  double wall_rhs = 0.0;  // lambda mu(E)
};

// Energy of v^t by the co-area formula: 1D quadrature against the closed-form
// level measures; independent of any PDE grid.
double sliding_energy(const Interface& M, const EnergyParams& p, double t,
                      int n);

// The same state sampled on the PDE grid.
Field slide_field(const SphereGrid& g, const Interface& M,
                  const EnergyParams& p, double t);

SlideTrace slide_trace(const SphereGrid& g, const Interface& M,
                       const EnergyParams& p, int samples,
                       bool with_grid_energy = true);

LimitEnergies limit_energies(const Interface& M, double lambda, int n);

// Perimeter minus lambda * volume for the latitude family; stationary
// exactly at the lambda-CMC latitude, where the sweep attains its maximum.
double latitude_family_gap(double theta, double lambda, int n);

struct RecoveryPath {
  std::vector<Field> nodes;
  std::vector<double> energies;
  SlideTrace trace;
  double max_energy = 0.0;
  bool below_bound = true;  // max < A2 + tau
  int violating_segment = -1;  // 0 constants->-1, 1 slide, 2 constants->b
};

// Piecewise path a -> -1 -> (slide) -> +1 -> b with the stated bound check.
RecoveryPath recovery_path(const SphereGrid& g, const Interface& M,
                           const EnergyParams& p, double tau,
                           int slide_samples = 129, int const_samples = 9);

}  // namespace phase
