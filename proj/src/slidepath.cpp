#include "phase/slidepath.hpp"

#include <algorithm>
#include <cmath>

#include "phase/numerics.hpp"
#include "phase/potential.hpp"

namespace phase {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

double sliding_energy(const Interface& M, const EnergyParams& p, double t,
                      int n) {
  validate_interface(M);
  TruncatedProfile prof(p.epsilon);
  const double c = prof.cutoff();
  const double lo = sigma_minus(M), hi = sigma_plus(M);

  // Q-part: window [t-c, t+c] intersected with the level range.
  double qa = std::max(lo, t - c), qb = std::min(hi, t + c);
  double q_part = 0.0;
  if (qa < qb) {
    auto f = [&](double s) {
      return prof.q_density(s - t) * level_area(n, M.theta_star - s);
    };
    q_part = integrate_gl(f, qa, qb, std::max(64, int(16.0 * prof.lambda_log())));
  }

  // Volume part: Hbar = sgn + compactly supported remainder U.
  //   -sigma lambda \int sgn(s-t) |G_s| ds = -sigma lambda (vol(d > t) - vol(d < t))
  double phi_t = std::min(std::max(M.theta_star - t, 0.0), kPi);
  double vol = cap_volume(n, kPi);
  double above = cap_volume(n, phi_t);  // measure of {d > t}
  double vol_part = -p.sigma * p.lambda * (above - (vol - above));

  double u_part = 0.0;
  if (qa < qb) {
    auto f = [&](double s) {
      double sgn = (s - t) > 0.0 ? 1.0 : ((s - t) < 0.0 ? -1.0 : 0.0);
      return (prof.value(s - t) - sgn) * level_area(n, M.theta_star - s);
    };
    u_part = -p.sigma * p.lambda *
             integrate_gl(f, qa, qb, std::max(64, int(16.0 * prof.lambda_log())));
  }
  return q_part + vol_part + u_part;
}

Field slide_field(const SphereGrid& g, const Interface& M,
                  const EnergyParams& p, double t) {
  TruncatedProfile prof(p.epsilon);
  Field u(g);
  for (int i = 0; i < g.K; ++i)
    u.v[i] = prof.value(M.theta_star - g.theta[i] - t);
  return u;
}

SlideTrace slide_trace(const SphereGrid& g, const Interface& M,
                       const EnergyParams& p, int samples,
                       bool with_grid_energy) {
  SlideTrace tr;
  double range = 2.0 * g.diameter();
  tr.t.resize(samples);
  tr.energy_coarea.resize(samples);
  if (with_grid_energy) tr.energy_grid.resize(samples);
  double best = -1e300, best_t = 0.0;
  for (int i = 0; i < samples; ++i) {
    double t = -range + 2.0 * range * i / double(samples - 1);
    tr.t[i] = t;
    tr.energy_coarea[i] = sliding_energy(M, p, t, g.n);
    if (with_grid_energy)
      tr.energy_grid[i] = ac_energy(slide_field(g, M, p, t), p);
    if (tr.energy_coarea[i] > best) {
      best = tr.energy_coarea[i];
      best_t = t;
    }
  }
  // Refine the argmax on a local grid.
  double step = 2.0 * range / (samples - 1);
  for (int pass = 0; pass < 8; ++pass) {
    double l = best_t - step, r = best_t + step;
    for (int j = 0; j <= 8; ++j) {
      double t = l + (r - l) * j / 8.0;
      double e = sliding_energy(M, p, t, g.n);
      if (e > best) {
        best = e;
        best_t = t;
      }
    }
    step *= 0.25;
  }
  tr.argmax_t = best_t;
  tr.max_energy = best;
  return tr;
}

LimitEnergies limit_energies(const Interface& M, double lambda, int n) {
  validate_interface(M);
  LimitEnergies out;
  double sigma = sigma_closed_form();
  double area = level_area(n, M.theta_star);
  double volE = cap_volume(n, M.theta_star);
  double vol = cap_volume(n, kPi);
  out.A2 = 2.0 * sigma * area - sigma * lambda * volE +
           sigma * lambda * (vol - volE);
  out.wall_lhs = area;
  out.wall_rhs = lambda * volE;
  return out;
}

double latitude_family_gap(double theta, double lambda, int n) {
  return level_area(n, theta) - lambda * cap_volume(n, theta);
}

RecoveryPath recovery_path(const SphereGrid& g, const Interface& M,
                           const EnergyParams& p, double tau,
                           int slide_samples, int const_samples) {
  RecoveryPath path;
  StableConstants sc = stable_constants(p);
  LimitEnergies lim = limit_energies(M, p.lambda, g.n);
  double bound = lim.A2 + tau;
  double range = 2.0 * g.diameter();

  auto push = [&](const Field& u, int segment) {
    double e = ac_energy(u, p);
    path.nodes.push_back(u);
    path.energies.push_back(e);
    path.max_energy = std::max(path.max_energy, e);
    if (e >= bound && path.violating_segment < 0)
      path.violating_segment = segment;
  };

  path.max_energy = -1e300;
  // Constants a -> -1 (the slide starts saturated at -1).
  for (int i = 0; i < const_samples; ++i) {
    double c = sc.a + (-1.0 - sc.a) * i / double(const_samples - 1);
    push(Field(g, c), 0);
  }
  // Slide t: +2 diam -> -2 diam.
  for (int i = 1; i + 1 < slide_samples; ++i) {
    double t = range - 2.0 * range * i / double(slide_samples - 1);
    push(slide_field(g, M, p, t), 1);
  }
  // Constants +1 -> b.
  for (int i = 0; i < const_samples; ++i) {
    double c = 1.0 + (sc.b - 1.0) * i / double(const_samples - 1);
    push(Field(g, c), 2);
  }
  path.below_bound = path.violating_segment < 0;
  path.trace = slide_trace(g, M, p, slide_samples, false);
  return path;
}

}  // namespace phase
