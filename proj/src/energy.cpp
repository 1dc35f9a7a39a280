#include "phase/energy.hpp"

#include <cmath>
#include <stdexcept>

#include "phase/potential.hpp"

namespace phase {

namespace {
// Local max of W' on (-1, 0) sits at t = -1/sqrt(3).
const double kWpLocalMax = 2.0 / (3.0 * std::sqrt(3.0));

double bisect_wprime(double lo, double hi, double target) {
  auto f = [&](double t) { return eval_well(t).dW - target; };
  double flo = f(lo);
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  double t = 0.5 * (lo + hi);
  // Newton polish.
  for (int it = 0; it < 4; ++it) {
    WellValue w = eval_well(t);
    if (w.d2W == 0.0) break;
    t -= (w.dW - target) / w.d2W;
  }
  return t;
}
}  // namespace

double admissible_epsilon_max(double sigma, double lambda) {
  if (lambda <= 0.0) return 0.25;
  return std::min(0.25, 0.9 * kWpLocalMax / (sigma * lambda));
}

void validate(const EnergyParams& p) {
  if (!(p.epsilon > 0.0 && p.epsilon < 0.25))
    throw std::invalid_argument("EnergyParams: epsilon must be in (0, 1/4)");
  if (p.lambda < 0.0)
    throw std::invalid_argument("EnergyParams: lambda must be >= 0");
  if (p.epsilon > admissible_epsilon_max(p.sigma, p.lambda))
    throw std::invalid_argument(
        "EnergyParams: epsilon above admissibility threshold for this lambda "
        "(stable_constants would lose its three roots)");
}

double ac_energy(const Field& u, const EnergyParams& p) {
  validate(u);
  const SphereGrid& g = *u.grid;
  double grad = 0.5 * p.epsilon * dirichlet_energy(u);
  double pot = 0.0;
  for (int i = 0; i < g.K; ++i)
    pot += (eval_well(u.v[i]).W / p.epsilon - p.sigma * p.lambda * u.v[i]) *
           g.weight[i];
  return grad + pot;
}

Field ac_gradient(const Field& u, const EnergyParams& p) {
  Field lap = laplace_variational(u);
  Field out(*u.grid);
  for (int i = 0; i < u.grid->K; ++i)
    out.v[i] = -p.epsilon * lap.v[i] + eval_well(u.v[i]).dW / p.epsilon -
               p.sigma * p.lambda;
  return out;
}

Field hessian_apply(const Field& u, const Field& phi, const EnergyParams& p) {
  if (u.grid != phi.grid)
    throw std::invalid_argument("hessian_apply: fields on different grids");
  Field lap = laplace_variational(phi);
  Field out(*u.grid);
  for (int i = 0; i < u.grid->K; ++i)
    out.v[i] =
        -p.epsilon * lap.v[i] + eval_well(u.v[i]).d2W / p.epsilon * phi.v[i];
  return out;
}

double hessian_quadform(const Field& u, const Field& phi,
                        const EnergyParams& p) {
  return weighted_inner(hessian_apply(u, phi, p), phi);
}

double weighted_inner(const Field& a, const Field& b) {
  if (a.grid != b.grid)
    throw std::invalid_argument("weighted_inner: fields on different grids");
  double acc = 0.0;
  for (int i = 0; i < a.grid->K; ++i)
    acc += a.v[i] * b.v[i] * a.grid->weight[i];
  return acc;
}

double weighted_norm(const Field& a) { return std::sqrt(weighted_inner(a, a)); }

StableConstants stable_constants(const EnergyParams& p) {
  validate(p);
  double c = p.epsilon * p.sigma * p.lambda;
  if (c == 0.0) return {-1.0, 1.0, 0.0};
  const double tl = -1.0 / std::sqrt(3.0);
  return {bisect_wprime(-2.0, tl, c), bisect_wprime(-tl, 2.0, c),
          bisect_wprime(tl, -tl, c)};
}

double energy_measure_mass(const Field& u, const EnergyParams& p) {
  const SphereGrid& g = *u.grid;
  double grad = 0.5 * p.epsilon * dirichlet_energy(u);
  double pot = 0.0;
  for (int i = 0; i < g.K; ++i)
    pot += eval_well(u.v[i]).W / p.epsilon * g.weight[i];
  return (grad + pot) / (2.0 * p.sigma);
}

}  // namespace phase
