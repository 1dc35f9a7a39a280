#include <doctest.h>

#include <cmath>
#include <cstring>

#include "phase/minmax.hpp"
#include "phase/numerics.hpp"
#include "phase/potential.hpp"
#include "phase/slidepath.hpp"

using namespace phase;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

PathOfFields seeded_path(const SphereGrid& g, const EnergyParams& p, int P) {
  Interface M{cmc_latitude(p.lambda, g.n)};
  RecoveryPath rec = recovery_path(g, M, p, 0.2, 81, 7);
  PathOfFields path;
  path.nodes = rec.nodes;
  path = reparametrize(path, P);
  StableConstants sc = stable_constants(p);
  path.nodes.front() = Field(g, sc.a);
  path.nodes.back() = Field(g, sc.b);
  return path;
}

// Independent eigenvalue-count oracle: raw Sturm count on the symmetrized
// linearization (rebuilt here from the grid data, not via morse_index).
int sturm_negative_count(const Field& u, const EnergyParams& p, double tol) {
  const SphereGrid& g = *u.grid;
  std::vector<double> d(g.K), e(g.K - 1);
  double inv_h2 = 1.0 / (g.dtheta * g.dtheta);
  for (int i = 0; i < g.K; ++i)
    d[i] = p.epsilon * (g.sn_half[i] + g.sn_half[i + 1]) * inv_h2 / g.sn[i] +
           eval_well(u.v[i]).d2W / p.epsilon;
  for (int i = 0; i + 1 < g.K; ++i)
    e[i] = -p.epsilon * g.sn_half[i + 1] * inv_h2 /
           std::sqrt(g.sn[i] * g.sn[i + 1]);
  return sturm_count(d, e, -tol);
}
}  // namespace

TEST_CASE("path validation") {
  SphereGrid g = SphereGrid::make(2, 64);
  PathOfFields tiny;
  for (int i = 0; i < 8; ++i) tiny.nodes.push_back(Field(g, 0.0));
  CHECK_THROWS_AS(validate(tiny), std::invalid_argument);
}

TEST_CASE("reparametrization balances consecutive distances") {
  SphereGrid g = SphereGrid::make(2, 64);
  PathOfFields path;
  for (int i = 0; i < 20; ++i)
    path.nodes.push_back(Field(g, -1.0 + 2.0 * (i * i) / (19.0 * 19.0)));
  PathOfFields even = reparametrize(path, 20);
  std::vector<double> dist;
  for (int i = 1; i < 20; ++i) {
    Field diff(g);
    for (int k = 0; k < g.K; ++k)
      diff.v[k] = even.nodes[i].v[k] - even.nodes[i - 1].v[k];
    dist.push_back(weighted_norm(diff));
  }
  double lo = 1e300, hi = 0.0;
  for (double x : dist) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  CHECK(hi <= 2.0 * lo);
}

TEST_CASE("relaxation: pinned endpoints, monotone max energy") {
  SphereGrid g = SphereGrid::make(2, 300);
  EnergyParams p{0.08, 1.0, sigma_closed_form()};
  StableConstants sc = stable_constants(p);
  PathOfFields init = seeded_path(g, p, 17);
  Field a0 = init.nodes.front(), b0 = init.nodes.back();

  RelaxOptions opts;
  opts.max_sweeps = 120;
  std::vector<SweepStat> trace;
  PathOfFields relaxed = relax_path(init, p, opts, &trace);

  // Endpoints bitwise identical to the constants.
  CHECK(std::memcmp(relaxed.nodes.front().v.data(), a0.v.data(),
                    sizeof(double) * g.K) == 0);
  CHECK(std::memcmp(relaxed.nodes.back().v.data(), b0.v.data(),
                    sizeof(double) * g.K) == 0);
  CHECK(relaxed.nodes.front().v[0] == sc.a);
  CHECK(relaxed.nodes.back().v[0] == sc.b);

  // Monotone relaxation up to reparametrization slack.
  for (std::size_t i = 1; i < trace.size(); ++i)
    CHECK(trace[i].max_energy <= trace[i - 1].max_energy + 1e-12);

  // Max node approaches the limit energy.
  Interface M{cmc_latitude(p.lambda, g.n)};
  LimitEnergies lim = limit_energies(M, p.lambda, g.n);
  CHECK(std::abs(trace.back().max_energy - lim.A2) < 0.04 * lim.A2);
}

TEST_CASE("relaxation with the symmetric well centers on the equator") {
  SphereGrid g = SphereGrid::make(2, 300);
  EnergyParams p{0.08, 0.0, sigma_closed_form()};
  PathOfFields init = seeded_path(g, p, 17);
  RelaxOptions opts;
  opts.max_sweeps = 60;
  PathOfFields relaxed = relax_path(init, p, opts);
  int arg = 0;
  double best = -1e300;
  for (int i = 0; i < 17; ++i) {
    double e = ac_energy(relaxed.nodes[i], p);
    if (e > best) {
      best = e;
      arg = i;
    }
  }
  const Field& u = relaxed.nodes[arg];
  double lat = interface_latitude(u);
  CHECK(std::abs(lat - kPi / 2.0) < 0.05);
  // Interface profile: u matches the truncated profile of the signed distance.
  TruncatedProfile prof(p.epsilon);
  double worst = 0.0;
  for (int i = 0; i < g.K; ++i)
    worst = std::max(worst,
                     std::abs(u.v[i] - prof.value(kPi / 2.0 - g.theta[i])));
  CHECK(worst < 0.05);
}

TEST_CASE("newton refinement lands on the CMC interface") {
  SphereGrid g = SphereGrid::make(2, 400);
  EnergyParams p{0.05, 1.0, sigma_closed_form()};
  Interface M{cmc_latitude(p.lambda, g.n)};
  Field seed = slide_field(g, M, p, 0.0);
  MinMaxResult res = refine_critical_point(seed, p);
  CHECK(res.converged);
  CHECK(res.residual <= 1e-10);
  CHECK(std::abs(res.interface_theta_estimate - kPi / 4.0) <= g.dtheta);
  CHECK(res.morse_index == 1);

  // Index one forces a single interface component: one zero crossing.
  int crossings = 0;
  interface_latitude(res.u_crit, &crossings);
  CHECK(crossings == 1);

  // Quadratic contraction over the final Newton steps: the convergence
  // order log r_{k+1} / log r_k stays well above linear.
  const auto& hist = res.residual_history;
  REQUIRE(hist.size() >= 3);
  int superlinear = 0;
  for (std::size_t i = 1; i < hist.size(); ++i) {
    if (hist[i - 1] < 1e-2 && hist[i - 1] > 1e-10 && hist[i] > 1e-14) {
      double order = std::log(hist[i]) / std::log(hist[i - 1]);
      if (order >= 1.5) ++superlinear;
    }
  }
  CHECK(superlinear >= 2);

  // Trivial seed: already critical.
  StableConstants sc = stable_constants(p);
  MinMaxResult triv = refine_critical_point(Field(g, sc.a), p);
  CHECK(triv.converged);
  CHECK(triv.iterations <= 1);
  CHECK(triv.beta_eps ==
        doctest::Approx(ac_energy(Field(g, sc.a), p)).epsilon(1e-12));
  CHECK(triv.morse_index == 0);
}

TEST_CASE("morse index of constants and the saddle, against a Sturm oracle") {
  SphereGrid g = SphereGrid::make(2, 400);
  EnergyParams p{0.05, 1.0, sigma_closed_form()};
  StableConstants sc = stable_constants(p);

  MorseIndexResult ia = morse_index(Field(g, sc.a), p);
  CHECK(ia.index == 0);
  CHECK(ia.index == sturm_negative_count(Field(g, sc.a), p, 1e-6));

  MorseIndexResult ic = morse_index(Field(g, sc.c), p);
  CHECK(ic.index >= 1);
  CHECK(ic.index == sturm_negative_count(Field(g, sc.c), p, 1e-6));

  Interface M{cmc_latitude(p.lambda, g.n)};
  MinMaxResult res = refine_critical_point(slide_field(g, M, p, 0.0), p);
  CHECK(res.morse_index == 1);
  CHECK(res.morse_index == sturm_negative_count(res.u_crit, p, 1e-6));
}

TEST_CASE("mountain pass ordering and the recovery-path upper bound") {
  SphereGrid g = SphereGrid::make(2, 400);
  EnergyParams p{0.05, 1.0, sigma_closed_form()};
  StableConstants sc = stable_constants(p);
  Interface M{cmc_latitude(p.lambda, g.n)};
  MinMaxResult res = refine_critical_point(slide_field(g, M, p, 0.0), p);
  double fa = ac_energy(Field(g, sc.a), p);
  double fb = ac_energy(Field(g, sc.b), p);
  CHECK(res.beta_eps > fa);
  CHECK(fa > fb);
  RecoveryPath rec = recovery_path(g, M, p, 0.2, 81, 7);
  CHECK(res.beta_eps <= rec.max_energy);
}
