#include "phase/manifold.hpp"

#include <cmath>
#include <stdexcept>

namespace phase {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}
}  // namespace

SphereGrid SphereGrid::make(int ambient_dim, int K) {
  if (ambient_dim != 2 && ambient_dim != 3)
    throw std::invalid_argument("SphereGrid: ambient_dim must be 2 or 3");
  if (K < 8) throw std::invalid_argument("SphereGrid: grid too small (K < 8)");
  SphereGrid g;
  g.ambient_dim = ambient_dim;
  g.n = ambient_dim - 1;
  g.K = K;
  g.dtheta = kPi / K;
  g.An = (g.n == 1) ? 2.0 * kPi : 4.0 * kPi;
  g.theta.resize(K);
  g.weight.resize(K);
  g.sn.resize(K);
  g.sn_half.resize(K + 1);
  for (int i = 0; i < K; ++i) {
    g.theta[i] = (i + 0.5) * g.dtheta;
    g.sn[i] = ipow(std::sin(g.theta[i]), g.n);
    g.weight[i] = g.An * g.sn[i] * g.dtheta;
  }
  for (int i = 0; i <= K; ++i)
    g.sn_half[i] = ipow(std::sin(i * g.dtheta), g.n);
  g.sn_half[0] = 0.0;
  g.sn_half[K] = 0.0;
  g.cellvol.resize(K);
  for (int i = 0; i < K; ++i) {
    double a = i * g.dtheta, b = (i + 1) * g.dtheta;
    double v = (g.n == 1)
                   ? std::cos(a) - std::cos(b)
                   : 0.5 * (b - a) - 0.25 * (std::sin(2.0 * b) - std::sin(2.0 * a));
    g.cellvol[i] = g.An * v;
  }
  return g;
}

double SphereGrid::volume_closed_form() const {
  return n == 1 ? 4.0 * kPi : 2.0 * kPi * kPi;
}

double SphereGrid::diameter() const { return kPi; }

double SphereGrid::ricci_lower() const { return double(n); }

GeometryConstants geometry_constants(const SphereGrid& g) {
  return {g.ricci_lower(), g.diameter(), g.volume_closed_form()};
}

void validate(const Field& u) {
  if (!u.grid || int(u.v.size()) != u.grid->K)
    throw std::invalid_argument("Field: size does not match grid");
  for (double x : u.v)
    if (!std::isfinite(x)) throw std::invalid_argument("Field: non-finite value");
}

Field laplace_beltrami(const Field& u) {
  validate(u);
  const SphereGrid& g = *u.grid;
  Field out(g);
  for (int i = 0; i < g.K; ++i) {
    double up = (i + 1 < g.K) ? g.sn_half[i + 1] * (u.v[i + 1] - u.v[i]) : 0.0;
    double dn = (i > 0) ? g.sn_half[i] * (u.v[i] - u.v[i - 1]) : 0.0;
    out.v[i] = (up - dn) * g.An / (g.dtheta * g.cellvol[i]);
  }
  return out;
}

Field laplace_variational(const Field& u) {
  validate(u);
  const SphereGrid& g = *u.grid;
  Field out(g);
  const double inv_h2 = 1.0 / (g.dtheta * g.dtheta);
  for (int i = 0; i < g.K; ++i) {
    double up = (i + 1 < g.K) ? g.sn_half[i + 1] * (u.v[i + 1] - u.v[i]) : 0.0;
    double dn = (i > 0) ? g.sn_half[i] * (u.v[i] - u.v[i - 1]) : 0.0;
    out.v[i] = (up - dn) * inv_h2 / g.sn[i];
  }
  return out;
}

double integrate(const Field& u) {
  validate(u);
  const SphereGrid& g = *u.grid;
  double acc = 0.0;
  for (int i = 0; i < g.K; ++i) acc += u.v[i] * g.weight[i];
  return acc;
}

double dirichlet_energy(const Field& u) {
  validate(u);
  const SphereGrid& g = *u.grid;
  double acc = 0.0;
  for (int i = 0; i + 1 < g.K; ++i) {
    double du = (u.v[i + 1] - u.v[i]) / g.dtheta;
    acc += g.An * g.sn_half[i + 1] * g.dtheta * du * du;
  }
  return acc;
}

Field gradient_theta(const Field& u) {
  validate(u);
  const SphereGrid& g = *u.grid;
  Field out(g);
  for (int i = 0; i < g.K; ++i) {
    double um = (i > 0) ? u.v[i - 1] : u.v[0];
    double up = (i + 1 < g.K) ? u.v[i + 1] : u.v[g.K - 1];
    out.v[i] = (up - um) / (2.0 * g.dtheta);
  }
  return out;
}

}  // namespace phase
