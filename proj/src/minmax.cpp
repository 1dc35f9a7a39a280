#include "phase/minmax.hpp"

#include <algorithm>
#include <cmath>

#include "phase/numerics.hpp"
#include "phase/parallel.hpp"
#include "phase/potential.hpp"

namespace phase {

namespace {

double max_abs(const Field& u) {
  double m = 0.0;
  for (double x : u.v) m = std::max(m, std::abs(x));
  return m;
}

// Conservative bound for the largest diagonal entry of the linearization.
double linearization_diag_max(const Field& u, const EnergyParams& p) {
  const SphereGrid& g = *u.grid;
  double dmax = 0.0;
  for (int i = 0; i < g.K; ++i) {
    double lap_diag =
        p.epsilon * (g.sn_half[i] + g.sn_half[i + 1]) / (g.sn[i] * g.dtheta * g.dtheta);
    double w2 = std::abs(eval_well(u.v[i]).d2W) / p.epsilon;
    dmax = std::max(dmax, lap_diag + w2);
  }
  return dmax;
}

// Symmetric tridiagonal form of -eps lap + W''(u)/eps under the weight
// similarity v = sqrt(w) u.
void symmetric_tridiag(const Field& u, const EnergyParams& p,
                       std::vector<double>& d, std::vector<double>& e) {
  const SphereGrid& g = *u.grid;
  const double inv_h2 = 1.0 / (g.dtheta * g.dtheta);
  d.resize(g.K);
  e.resize(g.K - 1);
  for (int i = 0; i < g.K; ++i)
    d[i] = p.epsilon * (g.sn_half[i] + g.sn_half[i + 1]) * inv_h2 / g.sn[i] +
           eval_well(u.v[i]).d2W / p.epsilon;
  for (int i = 0; i + 1 < g.K; ++i)
    e[i] = -p.epsilon * g.sn_half[i + 1] * inv_h2 / std::sqrt(g.sn[i] * g.sn[i + 1]);
}

}  // namespace

void validate(const PathOfFields& path) {
  if (path.nodes.size() < 16)
    throw std::invalid_argument("PathOfFields: need at least 16 nodes");
  const SphereGrid* g = path.nodes.front().grid;
  for (const Field& u : path.nodes) {
    validate(u);
    if (u.grid != g)
      throw std::invalid_argument("PathOfFields: nodes on different grids");
  }
}

PathOfFields reparametrize(const PathOfFields& path, int count) {
  const auto& nodes = path.nodes;
  const int P = int(nodes.size());
  std::vector<double> cum(P, 0.0);
  for (int i = 1; i < P; ++i) {
    Field diff(*nodes[i].grid);
    for (int k = 0; k < diff.grid->K; ++k)
      diff.v[k] = nodes[i].v[k] - nodes[i - 1].v[k];
    cum[i] = cum[i - 1] + weighted_norm(diff);
  }
  PathOfFields out;
  out.nodes.reserve(count);
  double total = cum.back();
  int seg = 0;
  for (int j = 0; j < count; ++j) {
    double target = total * j / double(count - 1);
    while (seg + 2 < P && cum[seg + 1] < target) ++seg;
    double span = cum[seg + 1] - cum[seg];
    double a = span > 0.0 ? (target - cum[seg]) / span : 0.0;
    a = std::clamp(a, 0.0, 1.0);
    Field u(*nodes[seg].grid);
    for (int k = 0; k < u.grid->K; ++k)
      u.v[k] = (1.0 - a) * nodes[seg].v[k] + a * nodes[seg + 1].v[k];
    out.nodes.push_back(std::move(u));
  }
  // Keep the endpoints bit-exact.
  out.nodes.front() = nodes.front();
  out.nodes.back() = nodes.back();
  return out;
}

PathOfFields relax_path(const PathOfFields& initial, const EnergyParams& p,
                        const RelaxOptions& opts,
                        std::vector<SweepStat>* trace) {
  validate(initial);
  validate(p);
  PathOfFields path = initial;
  const int P = int(path.nodes.size());
  std::vector<double> energy(P);
  for (int i = 0; i < P; ++i) energy[i] = ac_energy(path.nodes[i], p);

  auto max_node = [&]() {
    int arg = 0;
    for (int i = 1; i < P; ++i)
      if (energy[i] > energy[arg]) arg = i;
    return arg;
  };

  double prev_max = energy[max_node()];
  int stall = 0, rising = 0;
  std::vector<SweepStat> local_trace;

  for (int sweep = 1; sweep <= opts.max_sweeps; ++sweep) {
    // One descent pass over the interior nodes, each with backtracking.
    parallel_for(std::size_t(P - 2), [&](std::size_t idx) {
      int i = int(idx) + 1;
      Field& u = path.nodes[i];
      Field grad = ac_gradient(u, p);
      double step = opts.step_fraction / linearization_diag_max(u, p);
      for (int half = 0; half < 25; ++half) {
        Field trial(*u.grid);
        for (int k = 0; k < u.grid->K; ++k)
          trial.v[k] = u.v[k] - step * grad.v[k];
        double e = ac_energy(trial, p);
        if (e <= energy[i]) {
          u = std::move(trial);
          energy[i] = e;
          break;
        }
        step *= 0.5;
      }
    });

    if (sweep % opts.reparam_every == 0) {
      // Interpolation can lift the max node (averaged interfaces stack); if
      // extra descent cannot bring it back under the pre-reparametrization
      // max, reject the reparametrization for this cycle.
      PathOfFields saved = path;
      std::vector<double> saved_energy = energy;
      double pre = energy[max_node()];
      path = reparametrize(path, P);
      for (int i = 0; i < P; ++i) energy[i] = ac_energy(path.nodes[i], p);
      for (int guard = 0; guard < 30 && energy[max_node()] > pre + 1e-12;
           ++guard) {
        for (int i = 1; i + 1 < P; ++i) {
          Field grad = ac_gradient(path.nodes[i], p);
          double step = opts.step_fraction / linearization_diag_max(path.nodes[i], p);
          for (int half = 0; half < 25; ++half) {
            Field trial(*path.nodes[i].grid);
            for (int k = 0; k < trial.grid->K; ++k)
              trial.v[k] = path.nodes[i].v[k] - step * grad.v[k];
            double e = ac_energy(trial, p);
            if (e <= energy[i]) {
              path.nodes[i] = std::move(trial);
              energy[i] = e;
              break;
            }
            step *= 0.5;
          }
        }
      }
      if (energy[max_node()] > pre + 1e-12) {
        path = std::move(saved);
        energy = std::move(saved_energy);
      }
    }

    int arg = max_node();
    double cur_max = energy[arg];
    SweepStat st{sweep, cur_max, max_abs(ac_gradient(path.nodes[arg], p))};
    local_trace.push_back(st);
    if (trace) trace->push_back(st);

    if (cur_max > prev_max + 1e-12) {
      if (++rising >= opts.divergence_window)
        throw RelaxDivergence("relax_path: max-node energy rose for too many sweeps",
                              local_trace);
    } else {
      rising = 0;
    }
    if (prev_max - cur_max < opts.tol * (1.0 + std::abs(cur_max))) {
      if (++stall >= 3 && sweep > opts.reparam_every) break;
    } else {
      stall = 0;
    }
    prev_max = std::min(prev_max, cur_max);
  }
  return path;
}

MorseIndexResult morse_index(const Field& u, const EnergyParams& p,
                             double null_tol) {
  validate(u);
  std::vector<double> d, e;
  symmetric_tridiag(u, p, d, e);
  MorseIndexResult out;
  out.low_eigenvalues = eigenvalues_below(d, e, null_tol, 1e-12, 512);
  if (int(out.low_eigenvalues.size()) == 512)
    throw std::runtime_error("morse_index: too many low eigenvalues");
  // Confirm each located eigenvalue with one inverse-iteration residual.
  for (double mu : out.low_eigenvalues) {
    std::vector<double> v = inverse_iteration(d, e, mu);
    double res = 0.0;
    const int K = int(d.size());
    for (int i = 0; i < K; ++i) {
      double av = d[i] * v[i];
      if (i > 0) av += e[i - 1] * v[i - 1];
      if (i + 1 < K) av += e[i] * v[i + 1];
      res = std::max(res, std::abs(av - mu * v[i]));
    }
    double scale = std::abs(mu) + 1.0;
    if (res > 1e-6 * scale)
      throw std::runtime_error("morse_index: eigenpair failed to converge");
    if (mu < -null_tol)
      ++out.index;
    else
      ++out.nullity;
  }
  return out;
}

double interface_latitude(const Field& u, int* crossings) {
  const SphereGrid& g = *u.grid;
  int count = 0;
  double latitude = 0.0;
  for (int i = 0; i + 1 < g.K; ++i) {
    if ((u.v[i] > 0.0) != (u.v[i + 1] > 0.0)) {
      double a = u.v[i] / (u.v[i] - u.v[i + 1]);
      if (count == 0) latitude = g.theta[i] + a * g.dtheta;
      ++count;
    }
  }
  if (crossings) *crossings = count;
  return latitude;
}

MinMaxResult refine_critical_point(const Field& seed, const EnergyParams& p,
                                   const NewtonOptions& opts) {
  validate(seed);
  validate(p);
  const SphereGrid& g = *seed.grid;
  MinMaxResult res;
  res.u_crit = seed;
  Field grad = ac_gradient(res.u_crit, p);
  double rnorm = max_abs(grad);
  res.residual_history.push_back(rnorm);

  const double inv_h2 = 1.0 / (g.dtheta * g.dtheta);
  for (int it = 0; it < opts.max_iter && rnorm > opts.tol; ++it) {
    // Tridiagonal Newton system (-eps lap + W''/eps) s = -grad.
    std::vector<double> sub(g.K, 0.0), diag(g.K), super(g.K, 0.0), rhs(g.K);
    for (int i = 0; i < g.K; ++i) {
      diag[i] = p.epsilon * (g.sn_half[i] + g.sn_half[i + 1]) * inv_h2 / g.sn[i] +
                eval_well(res.u_crit.v[i]).d2W / p.epsilon;
      if (i > 0) sub[i] = -p.epsilon * g.sn_half[i] * inv_h2 / g.sn[i];
      if (i + 1 < g.K) super[i] = -p.epsilon * g.sn_half[i + 1] * inv_h2 / g.sn[i];
      rhs[i] = -grad.v[i];
    }
    std::vector<double> step;
    double shift = 0.0;
    for (int attempt = 0;; ++attempt) {
      try {
        auto dg = diag;
        if (shift != 0.0)
          for (auto& x : dg) x += shift;
        step = solve_tridiag(sub, dg, super, rhs);
        break;
      } catch (const std::runtime_error&) {
        if (attempt >= 3)
          throw std::runtime_error("refine_critical_point: singular linearization");
        shift = (shift == 0.0) ? 1e-8 : shift * 100.0;
      }
    }
    // Damping on the residual norm.
    double t = 1.0;
    Field trial(g);
    double trial_norm = 0.0;
    for (int half = 0; half < 40; ++half) {
      for (int i = 0; i < g.K; ++i) trial.v[i] = res.u_crit.v[i] + t * step[i];
      trial_norm = max_abs(ac_gradient(trial, p));
      if (trial_norm < rnorm || t < 1e-8) break;
      t *= 0.5;
    }
    if (trial_norm >= rnorm) break;  // stall: keep the best iterate
    res.u_crit = trial;
    grad = ac_gradient(res.u_crit, p);
    rnorm = max_abs(grad);
    res.residual_history.push_back(rnorm);
    ++res.iterations;
  }
  res.residual = rnorm;
  res.converged = rnorm <= opts.tol;
  res.beta_eps = ac_energy(res.u_crit, p);
  res.morse_index = morse_index(res.u_crit, p).index;
  res.interface_theta_estimate = interface_latitude(res.u_crit);
  return res;
}

}  // namespace phase
