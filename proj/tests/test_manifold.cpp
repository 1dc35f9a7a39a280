#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "phase/io.hpp"
#include "phase/manifold.hpp"
#include "phase/numerics.hpp"

using namespace phase;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

Field from_fn(const SphereGrid& g, double (*fn)(double)) {
  Field u(g);
  for (int i = 0; i < g.K; ++i) u.v[i] = fn(g.theta[i]);
  return u;
}
}  // namespace

TEST_CASE("grid construction and weights") {
  CHECK_THROWS_AS(SphereGrid::make(4, 100), std::invalid_argument);
  CHECK_THROWS_AS(SphereGrid::make(2, 4), std::invalid_argument);

  SphereGrid s2 = SphereGrid::make(2, 2000);
  SphereGrid s3 = SphereGrid::make(3, 2000);
  CHECK(s2.n == 1);
  CHECK(s3.n == 2);

  double w2 = 0.0, w3 = 0.0;
  for (double w : s2.weight) w2 += w;
  for (double w : s3.weight) w3 += w;
  CHECK(std::abs(w2 - 4.0 * kPi) < 1e-4);
  CHECK(std::abs(w3 - 2.0 * kPi * kPi) < 1e-3);

  // Quadratic convergence of the total weight.
  for (int ad : {2, 3}) {
    double vol = SphereGrid::make(ad, 100).volume_closed_form();
    double e100 = 0.0, e200 = 0.0;
    for (double w : SphereGrid::make(ad, 100).weight) e100 += w;
    for (double w : SphereGrid::make(ad, 200).weight) e200 += w;
    e100 = std::abs(e100 - vol) / vol;
    e200 = std::abs(e200 - vol) / vol;
    CHECK(e100 <= 4.0 / (100.0 * 100.0));
    CHECK(e200 <= 4.0 / (200.0 * 200.0));
  }
}

TEST_CASE("integration") {
  SphereGrid s2 = SphereGrid::make(2, 2000);
  CHECK(integrate(Field(s2, 1.0)) == doctest::Approx(4.0 * kPi).epsilon(1e-5));

  SphereGrid s3 = SphereGrid::make(3, 2000);
  CHECK(integrate(Field(s3, 1.0)) ==
        doctest::Approx(2.0 * kPi * kPi).epsilon(1e-4));

  // Odd about the equator: exact cancellation on the symmetric grid.
  Field c = from_fn(s2, [](double t) { return std::cos(t); });
  CHECK(std::abs(integrate(c)) < 1e-8);
}

TEST_CASE("laplacian eigenfunctions") {
  SphereGrid s2 = SphereGrid::make(2, 400);
  Field u(s2, 0.7);
  Field lap = laplace_beltrami(u);
  for (double x : lap.v) CHECK(std::abs(x) < 1e-12);

  // S^2: cos(theta) is the l = 1 zonal harmonic, eigenvalue -2.
  Field c2 = from_fn(s2, [](double t) { return std::cos(t); });
  Field l2 = laplace_beltrami(c2);
  double worst = 0.0;
  for (int i = 0; i < s2.K; ++i)
    worst = std::max(worst, std::abs(l2.v[i] + 2.0 * c2.v[i]));
  CHECK(worst <= 2.0 * s2.dtheta * s2.dtheta);

  // S^3: eigenvalue -l(l + n) = -3 for l = 1, n = 2.
  SphereGrid s3 = SphereGrid::make(3, 400);
  Field c3 = from_fn(s3, [](double t) { return std::cos(t); });
  Field l3 = laplace_beltrami(c3);
  worst = 0.0;
  for (int i = 0; i < s3.K; ++i)
    worst = std::max(worst, std::abs(l3.v[i] + 3.0 * c3.v[i]));
  CHECK(worst <= 3.0 * s3.dtheta * s3.dtheta);
}

TEST_CASE("geometry constants") {
  GeometryConstants g2 = geometry_constants(SphereGrid::make(2, 64));
  CHECK(g2.m == 1.0);
  CHECK(g2.diam == doctest::Approx(kPi));
  CHECK(g2.vol == doctest::Approx(4.0 * kPi));

  GeometryConstants g3 = geometry_constants(SphereGrid::make(3, 64));
  CHECK(g3.m == 2.0);
  CHECK(g3.diam == doctest::Approx(kPi));
  CHECK(g3.vol == doctest::Approx(2.0 * kPi * kPi));

  CHECK(g2.m > 0.0);
  CHECK(g3.m > 0.0);
}

TEST_CASE("integration by parts") {
  for (int ad : {2, 3}) {
    SphereGrid g = SphereGrid::make(ad, 800);
    Field u = from_fn(g, [](double t) { return std::cos(t); });
    Field v = from_fn(g, [](double t) { return std::cos(2.0 * t); });
    Field lv = laplace_beltrami(v);
    double lhs = 0.0;
    for (int i = 0; i < g.K; ++i) lhs += u.v[i] * lv.v[i] * g.weight[i];
    Field du = gradient_theta(u), dv = gradient_theta(v);
    double rhs = 0.0;
    for (int i = 0; i < g.K; ++i) rhs += du.v[i] * dv.v[i] * g.weight[i];
    CHECK(std::abs(lhs + rhs) <= 100.0 / (800.0 * 800.0));
  }
}

TEST_CASE("laplacian spectrum: smallest nonzero eigenvalue of -lap on S2") {
  SphereGrid g = SphereGrid::make(2, 2000);
  // Weight-symmetrized tridiagonal of -lap; Sturm-located eigenvalues.
  std::vector<double> d(g.K), e(g.K - 1);
  double inv_h2 = 1.0 / (g.dtheta * g.dtheta);
  for (int i = 0; i < g.K; ++i)
    d[i] = (g.sn_half[i] + g.sn_half[i + 1]) * inv_h2 / g.sn[i];
  for (int i = 0; i + 1 < g.K; ++i)
    e[i] = -g.sn_half[i + 1] * inv_h2 / std::sqrt(g.sn[i] * g.sn[i + 1]);
  double mu0 = eigenvalue_kth(d, e, 0, 1e-10);
  double mu1 = eigenvalue_kth(d, e, 1, 1e-10);
  CHECK(std::abs(mu0) < 1e-8);
  CHECK(std::abs(mu1 - 2.0) < 0.04);
}

TEST_CASE("field checkpoints roundtrip") {
  SphereGrid g = SphereGrid::make(2, 64);
  Field u(g);
  for (int i = 0; i < g.K; ++i) u.v[i] = std::sin(3.0 * g.theta[i]) / 7.0;
  std::string path = "field_roundtrip_test.csv";
  save_field(path, u);
  Field back = load_field(path, g);
  for (int i = 0; i < g.K; ++i) CHECK(back.v[i] == u.v[i]);

  // Header mismatch.
  {
    std::ofstream bad("field_bad_header.csv", std::ios::binary);
    bad << "idx,theta,value\n0,0.1,0.5\n";
  }
  CHECK_THROWS_AS(load_field("field_bad_header.csv", g), ParseError);

  // Shape mismatch with the target grid.
  SphereGrid g2 = SphereGrid::make(2, 32);
  CHECK_THROWS_AS(load_field(path, g2), std::invalid_argument);

  // Malformed row reports the line number.
  {
    std::ofstream bad("field_bad_row.csv", std::ios::binary);
    bad << "index,theta,value\n0,0.1,0.5\n1,xyz,0.5\n";
  }
  try {
    load_field("field_bad_row.csv", g2);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line_number == 3);
  }

  std::remove(path.c_str());
  std::remove("field_bad_header.csv");
  std::remove("field_bad_row.csv");
}
