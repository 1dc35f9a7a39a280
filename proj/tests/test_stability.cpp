#include <doctest.h>

#include <cmath>

#include "phase/stability.hpp"

using namespace phase;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_CASE("circle spectrum at the quarter latitude") {
  Interface M{kPi / 4.0};
  JacobiSpectrum spec = stability_spectrum(M, 1, 10);
  // kappa = 2 k^2 - 2 with multiplicity 2 for k >= 1.
  CHECK(spec.eigenvalues[0] == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(spec.eigenvalues[1] == doctest::Approx(0.0));
  CHECK(spec.eigenvalues[2] == doctest::Approx(0.0));
  CHECK(spec.eigenvalues[3] == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(spec.eigenvalues[4] == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(spec.index == 1);
  CHECK(spec.nullity == 2);
}

TEST_CASE("orbit 2-sphere spectrum on S3") {
  double star = cmc_latitude(1.0, 2);
  Interface M{star};
  JacobiSpectrum spec = stability_spectrum(M, 2, 12);
  double s2 = std::sin(star) * std::sin(star);
  CHECK(spec.eigenvalues[0] == doctest::Approx(-2.0 / s2));
  // l = 1 shell: three rotational null directions.
  CHECK(spec.eigenvalues[1] == doctest::Approx(0.0));
  CHECK(spec.eigenvalues[2] == doctest::Approx(0.0));
  CHECK(spec.eigenvalues[3] == doctest::Approx(0.0));
  CHECK(spec.eigenvalues[4] == doctest::Approx(4.0 / s2));
  CHECK(spec.index == 1);
  CHECK(spec.nullity == 3);
}

TEST_CASE("finite-difference orbit spectrum cross-check") {
  Interface M{kPi / 4.0};
  int K = 512;
  std::vector<double> fd = orbit_fd_spectrum(M, 1, K, 6);
  JacobiSpectrum spec = stability_spectrum(M, 1, 6);
  double h = 2.0 * kPi / K;
  for (int i = 0; i < 6; ++i)
    CHECK(std::abs(fd[i] - spec.eigenvalues[i]) <= 20.0 * h * h + 1e-12);

  // Zonal modes of the S3 orbit via the latitude reduction; the FD spectrum
  // holds one eigenvalue per zonal degree l: (l(l+1) - 2)/sin^2.
  double star = cmc_latitude(1.0, 2);
  Interface M3{star};
  std::vector<double> fd3 = orbit_fd_spectrum(M3, 2, 600, 4);
  double s2 = std::sin(star) * std::sin(star);
  double hh = kPi / 600.0;
  for (int l = 0; l < 4; ++l) {
    double exact = (l * (l + 1.0) - 2.0) / s2;
    CHECK(std::abs(fd3[l] - exact) <= 50.0 * hh * hh + 1e-10);
  }
}

TEST_CASE("instability certificate from the constant test function") {
  Interface M{kPi / 4.0};
  StabilityCertificate cert = capacity_cutoff_test(M, 1);
  CHECK(cert.negative);
  CHECK(cert.branch == "closed");
  // B(1,1) = -length * (|A|^2 + Ric) = -pi sqrt(2) * 2.
  CHECK(cert.value == doctest::Approx(-2.0 * kPi * std::sqrt(2.0)));
  CHECK(cert.value == doctest::Approx(-8.8858).epsilon(1e-4));

  // Consistency: the constant is the ground eigenfunction on the orbit, so
  // B(1,1) = kappa_0 * ||1||^2.
  JacobiSpectrum spec = stability_spectrum(M, 1, 4);
  CHECK(cert.value ==
        doctest::Approx(spec.eigenvalues[0] * orbit_measure(M, 1)));

  // Geodesic equator at lambda = 0: |A| = 0, Ricci alone forces instability.
  Interface Eq{kPi / 2.0};
  JacobiSpectrum eq = stability_spectrum(Eq, 1, 4);
  CHECK(eq.eigenvalues[0] == doctest::Approx(-1.0));
  CHECK(eq.index >= 1);
}

TEST_CASE("index is one for every CMC latitude with positive curvature") {
  for (int n : {1, 2}) {
    for (double lambda : {0.3, 1.0, 2.5}) {
      Interface M{cmc_latitude(lambda, n)};
      JacobiSpectrum spec = stability_spectrum(M, n, 8);
      CHECK(spec.index == 1);
      CHECK(spec.eigenvalues[0] < 0.0);
    }
  }
}
