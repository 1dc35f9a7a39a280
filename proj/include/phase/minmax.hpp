// Mountain pass between the stable constants: string-method path
// relaxation, damped-Newton refinement of the saddle, and the Morse index
// of the linearization.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "phase/energy.hpp"
#include "phase/manifold.hpp"

namespace phase {

struct PathOfFields {
  std::vector<Field> nodes;  // endpoints pinned to the constant fields a, b
};

void validate(const PathOfFields& path);  // P >= 16, common grid

// Resample a polygonal path to `count` nodes at equal L2(weight) arclength.
PathOfFields reparametrize(const PathOfFields& path, int count);

struct SweepStat {
  int sweep = 0;
  double max_energy = 0.0;
  double residual = 0.0;  // sup-norm of the gradient at the max node
};

struct RelaxOptions {
  int max_sweeps = 600;
  int reparam_every = 10;
  double tol = 1e-10;            // stop when max-node energy stalls
  double step_fraction = 0.9;    // of 1 / max diag of the linearization
  int divergence_window = 50;
};

struct RelaxDivergence : std::runtime_error {
  explicit RelaxDivergence(const std::string& what, std::vector<SweepStat> tr)
      : std::runtime_error(what), trace(std::move(tr)) {}
  std::vector<SweepStat> trace;
};

// Gradient descent on interior nodes + periodic arclength reparametrization
// until the max-node energy stalls. Endpoints never move.
PathOfFields relax_path(const PathOfFields& initial, const EnergyParams& p,
                        const RelaxOptions& opts,
                        std::vector<SweepStat>* trace = nullptr);

struct MorseIndexResult {
  int index = 0;
  int nullity = 0;
  std::vector<double> low_eigenvalues;  // everything found below the band
};

// Negative eigenvalue count of the linearization at u. Eigenvalues with
// |mu| < null_tol count as nullity. Bisection-guided shifted inverse
// iteration with deflation on the weight-symmetrized tridiagonal form.
MorseIndexResult morse_index(const Field& u, const EnergyParams& p,
                             double null_tol = 1e-6);

struct MinMaxResult {
  double beta_eps = 0.0;
  Field u_crit;
  double residual = 0.0;
  int morse_index = -1;
  int iterations = 0;
  bool converged = false;
  double interface_theta_estimate = 0.0;
  std::vector<double> residual_history;
};

struct NewtonOptions {
  int max_iter = 100;
  double tol = 1e-10;  // sup-norm residual target
};

// Damped Newton on the critical-point equation seeded near the saddle.
// Computes beta, the Morse index, and the zero-crossing latitude.
MinMaxResult refine_critical_point(const Field& seed, const EnergyParams& p,
                                   const NewtonOptions& opts = {});

// Zero crossing latitude of u by linear interpolation; the count of sign
// changes comes back in `crossings`.
double interface_latitude(const Field& u, int* crossings = nullptr);

}  // namespace phase
