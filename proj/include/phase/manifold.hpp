// Latitude-reduced round spheres S^2 and S^3: grids, fields, integration,
// and the Laplace-Beltrami operator for rotationally symmetric functions.
#pragma once

#include <string>
#include <vector>

namespace phase {

// Uniform latitude grid on (0, pi) with half-cell offset from the poles.
// Node weights are A_n sin^n(theta_i) dtheta with A_1 = 2 pi, A_2 = 4 pi.
struct SphereGrid {
  int ambient_dim = 2;  // 2 -> S^2 (n = 1), 3 -> S^3 (n = 2)
  int n = 1;            // interface dimension
  int K = 0;
  double dtheta = 0.0;
  double An = 0.0;
  std::vector<double> theta;      // K node latitudes
  std::vector<double> weight;     // quadrature weights
  std::vector<double> sn;         // sin^n(theta_i)
  std::vector<double> sn_half;    // sin^n at cell faces, size K+1
  std::vector<double> cellvol;    // exact cell measures A_n \int sin^n

  static SphereGrid make(int ambient_dim, int K);

  double volume_closed_form() const;  // 4 pi or 2 pi^2
  double diameter() const;            // pi
  double ricci_lower() const;         // n for the unit round sphere
};

struct GeometryConstants {
  double m;     // Ricci lower bound
  double diam;  // diameter
  double vol;   // total volume
};

GeometryConstants geometry_constants(const SphereGrid& g);

struct Field {
  const SphereGrid* grid = nullptr;
  std::vector<double> v;

  Field() = default;
  explicit Field(const SphereGrid& g, double fill = 0.0)
      : grid(&g), v(g.K, fill) {}
};

// Throws if the field has non-finite entries or a size mismatch.
void validate(const Field& u);

// Flux-form discretization of u'' + n cot(theta) u' against the exact cell
// measures: second-order at interior nodes and consistent at the pole cells,
// where the zero-flux faces encode the Neumann symmetry of even latitude
// functions. Requires K >= 8.
Field laplace_beltrami(const Field& u);

// Same fluxes against the midpoint weights A_n sin^n(theta_i) dtheta: the
// exact (weighted) gradient of dirichlet_energy, hence the operator the
// energy module differentiates. Differs from laplace_beltrami only by a
// diagonal O(dtheta^2) rescaling concentrated at the poles.
Field laplace_variational(const Field& u);

double integrate(const Field& u);

// Edge-based Dirichlet integral: sum over faces of A_n sin^n(face) dtheta
// ((u_{i+1}-u_i)/dtheta)^2. Its gradient is exactly -2 * weight * laplacian.
double dirichlet_energy(const Field& u);

// Centered d/dtheta with even reflection at the poles.
Field gradient_theta(const Field& u);

}  // namespace phase
