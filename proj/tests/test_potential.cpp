#include <doctest.h>

#include <cmath>
#include <random>

#include "phase/numerics.hpp"
#include "phase/potential.hpp"

using namespace phase;

TEST_CASE("well values and derivatives") {
  auto [W1, dW1, d2W1] = eval_well(1.0);
  CHECK(W1 == doctest::Approx(0.0));
  CHECK(dW1 == doctest::Approx(0.0));
  CHECK(d2W1 == doctest::Approx(2.0));

  auto [W0, dW0, d2W0] = eval_well(0.0);
  CHECK(W0 == doctest::Approx(0.25));
  CHECK(dW0 == doctest::Approx(0.0));
  CHECK(d2W0 == doctest::Approx(-1.0));

  // Linear branch: value continues the blend with constant slope.
  auto [W35, dW35, d2W35] = eval_well(3.5);
  double p1 = 2.25 + 6.0 + 5.5 - 11.0 / 6.0;   // blend value at |t| = 3
  double dp1 = 6.0 + 11.0 - 5.5;               // blend slope at |t| = 3
  CHECK(W35 == doctest::Approx(p1 + 0.5 * dp1));
  CHECK(dW35 == doctest::Approx(dp1));
  CHECK(d2W35 == doctest::Approx(0.0));
}

TEST_CASE("well is C2 at the branch points and even") {
  for (double t0 : {2.0, 3.0}) {
    double h = 1e-7;
    auto lo = eval_well(t0 - h), hi = eval_well(t0 + h);
    CHECK(std::abs(hi.W - lo.W) < 1e-5);
    CHECK(std::abs(hi.dW - lo.dW) < 1e-5);
    CHECK(std::abs(hi.d2W - lo.d2W) < 1e-4);
  }
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(0.0, 4.0);
  for (int i = 0; i < 100; ++i) {
    double t = dist(rng);
    CHECK(eval_well(t).W == doctest::Approx(eval_well(-t).W));
    CHECK(eval_well(t).dW == doctest::Approx(-eval_well(-t).dW));
  }
}

TEST_CASE("well has exactly three critical points") {
  // W' changes sign only at -1, 0, 1.
  int crossings = 0;
  double prev = eval_well(-5.0).dW;
  for (int i = 1; i <= 4000; ++i) {
    double t = -5.0 + 10.0 * i / 4000.0;
    double cur = eval_well(t).dW;
    if ((cur > 0) != (prev > 0)) ++crossings;
    prev = cur;
  }
  CHECK(crossings == 3);
  for (double t : {-1.0, 0.0, 1.0}) CHECK(eval_well(t).dW == doctest::Approx(0.0));
  CHECK(eval_well(-1.0).d2W > 0);
  CHECK(eval_well(1.0).d2W > 0);
}

TEST_CASE("sigma constant") {
  CHECK(sigma_constant() == doctest::Approx(std::sqrt(2.0) / 3.0).epsilon(1e-10));

  // Scaling: W -> 4W doubles sigma.
  DoubleWell scaled{4.0};
  CHECK(sigma_constant(scaled) ==
        doctest::Approx(2.0 * sigma_constant()).epsilon(1e-10));

  // Brute-force Riemann oracle.
  const int N = 1000000;
  double riemann = 0.0;
  for (int i = 0; i < N; ++i) {
    double s = -1.0 + 2.0 * (i + 0.5) / N;
    riemann += std::sqrt(eval_well(s).W / 2.0) * 2.0 / N;
  }
  CHECK(std::abs(sigma_constant() - riemann) < 1e-8);
}

TEST_CASE("1d profile") {
  CHECK(profile_1d(0.0) == doctest::Approx(0.0));
  CHECK(profile_1d(std::sqrt(2.0)) == doctest::Approx(std::tanh(1.0)));
  for (double t : {0.3, 1.0, 2.7}) CHECK(profile_1d(-t) == doctest::Approx(-profile_1d(t)));

  // ODE residual H'' = W'(H) by finite differences.
  for (double t : {-1.5, -0.2, 0.4, 1.1, 2.0}) {
    double h = 1e-5;
    double d2 = (profile_1d(t + h) - 2.0 * profile_1d(t) + profile_1d(t - h)) / (h * h);
    CHECK(d2 == doctest::Approx(eval_well(profile_1d(t)).dW).epsilon(1e-4));
  }
}

TEST_CASE("shooting profile matches the closed form for the standard well") {
  auto W = [](double u) { return eval_well(u).W; };
  for (double t : {0.25, 0.7, 1.4, 2.2}) {
    CHECK(profile_shoot(W, t) == doctest::Approx(profile_1d(t)).epsilon(1e-9));
    CHECK(profile_shoot(W, -t) == doctest::Approx(-profile_1d(t)).epsilon(1e-9));
  }
}

TEST_CASE("shooting profile for a synthetic well") {
  // (1 - u^2)^2 (1 + 0.3 u^2) / 4: same minima, steeper side walls.
  auto W = [](double u) {
    double q = 1.0 - u * u;
    return 0.25 * q * q * (1.0 + 0.3 * u * u);
  };
  auto Wp = [&](double u) {
    double h = 1e-6;
    return (W(u + h) - W(u - h)) / (2.0 * h);
  };
  double t0 = 0.9;
  double h = 1e-4;
  double H = profile_shoot(W, t0);
  double d2 = (profile_shoot(W, t0 + h) - 2.0 * H + profile_shoot(W, t0 - h)) / (h * h);
  CHECK(d2 == doctest::Approx(Wp(H)).epsilon(1e-4));
  CHECK(std::abs(profile_shoot(W, 30.0)) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("truncated profile saturates and stays monotone") {
  CHECK_THROWS_AS(TruncatedProfile(0.3), std::invalid_argument);
  CHECK_THROWS_AS(TruncatedProfile(0.0), std::invalid_argument);

  TruncatedProfile p(0.01);
  CHECK(p.cutoff() == doctest::Approx(0.27631).epsilon(1e-4));
  CHECK(p.value(0.3) == 1.0);
  CHECK(p.value(-0.3) == -1.0);
  CHECK(p.value(0.0) == 0.0);

  TruncatedProfile q(0.05);
  double eL = 0.05 * q.lambda_log();
  for (double t = -0.99 * eL; t < eL; t += eL / 7) {
    CHECK(q.value(t) == doctest::Approx(profile_1d(t / 0.05)).epsilon(1e-14));
  }

  // Nondecreasing on a fine grid.
  double prev = -1.0;
  double worst = 0.0;
  for (int i = 0; i <= 10000; ++i) {
    double t = -0.5 + 1.0 * i / 10000.0;
    double v = q.value(t);
    worst = std::min(worst, v - prev);
    prev = v;
  }
  CHECK(worst >= -1e-12);

  // Oddness.
  for (double t : {0.01, 0.1, 0.2, 0.4}) CHECK(q.value(-t) == doctest::Approx(-q.value(t)));
}

TEST_CASE("profile energy approaches 2 sigma") {
  double two_sigma = 2.0 * sigma_closed_form();
  TruncatedProfile p(0.05);
  CHECK(std::abs(p.energy() - two_sigma) < 1e-3);
  CHECK(p.q_density(2.0 * 0.05 * p.lambda_log()) == 0.0);
  CHECK(p.q_density(-0.9) == 0.0);

  // Frozen truncation constant dominates a log-spaced sweep.
  for (int i = 0; i < 20; ++i) {
    double eps = std::exp(std::log(1e-3) +
                          (std::log(0.2) - std::log(1e-3)) * i / 19.0);
    TruncatedProfile pr(eps);
    CHECK(std::abs(pr.energy() - two_sigma) <= kTruncationBeta * eps * eps);
  }
}

TEST_CASE("q density integrates identically on uniform and adaptive grids") {
  TruncatedProfile p(0.02);
  double c = p.cutoff();
  const int N = 200000;
  double uniform = 0.0;
  for (int i = 0; i < N; ++i) {
    double t = -c + 2.0 * c * (i + 0.5) / N;
    uniform += p.q_density(t) * 2.0 * c / N;
  }
  double adaptive = integrate_adaptive([&](double t) { return p.q_density(t); },
                                       -c, c, 1e-12);
  CHECK(std::abs(uniform - adaptive) / adaptive <= 1e-6);
}
