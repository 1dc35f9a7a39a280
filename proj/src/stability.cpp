#include "phase/stability.hpp"

#include <algorithm>
#include <cmath>

namespace phase {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

double orbit_measure(const Interface& M, int n) {
  return level_area(n, M.theta_star);
}

JacobiSpectrum stability_spectrum(const Interface& M, int n, int count) {
  validate_interface(M);
  JacobiSpectrum out;
  double s2 = std::sin(M.theta_star);
  s2 *= s2;
  std::vector<double> eigs;
  for (int l = 0; int(eigs.size()) < count + 4; ++l) {
    double kappa = (double(l) * (l + n - 1) - n) / s2;
    int mult = (n == 1) ? (l == 0 ? 1 : 2) : (2 * l + 1);
    for (int m = 0; m < mult && int(eigs.size()) < count + 4; ++m)
      eigs.push_back(kappa);
  }
  std::sort(eigs.begin(), eigs.end());
  double radius = std::abs(eigs.back());
  double tol = 1e-8 * std::max(1.0, radius);
  for (double k : eigs) {
    if (k < -tol)
      ++out.index;
    else if (k <= tol)
      ++out.nullity;
  }
  eigs.resize(count);
  out.eigenvalues = std::move(eigs);
  return out;
}

std::vector<double> orbit_fd_spectrum(const Interface& M, int n, int K,
                                      int count) {
  validate_interface(M);
  std::vector<double> eigs;
  double s2 = std::sin(M.theta_star);
  s2 *= s2;
  if (n == 1) {
    // Periodic uniform grid on the circle: the FD operator is circulant and
    // its spectrum is available mode by mode.
    double h = 2.0 * kPi / K;  // intrinsic angle; metric factor sin^2
    for (int k = 0; k <= K / 2; ++k) {
      double lap = (2.0 - 2.0 * std::cos(k * h)) / (h * h) / s2;
      // potential |A|^2 + Ric = n / sin^2(theta_star) on the unit sphere
      double kappa = lap - double(n) / s2;
      eigs.push_back(kappa);
      if (k != 0 && 2 * k != K) eigs.push_back(kappa);
    }
  } else {
    // Zonal modes of the orbit 2-sphere of radius sin(theta_star): Legendre
    // operator on a latitude grid, scaled by 1/sin^2(theta_star).
    double h = kPi / K;
    std::vector<double> d(K), e(K - 1), sn(K), snh(K + 1);
    for (int i = 0; i < K; ++i) sn[i] = std::sin((i + 0.5) * h);
    for (int i = 0; i <= K; ++i) snh[i] = std::sin(i * h);
    snh[0] = snh[K] = 0.0;
    for (int i = 0; i < K; ++i)
      d[i] = (snh[i] + snh[i + 1]) / (h * h) / sn[i] / s2 - double(n) / s2;
    for (int i = 0; i + 1 < K; ++i)
      e[i] = -snh[i + 1] / (h * h) / std::sqrt(sn[i] * sn[i + 1]) / s2;
    // Smallest `count` eigenvalues by Sturm bisection on the tridiagonal.
    for (int k = 0; k < count; ++k) {
      // local bisection
      double lo = -10.0 / s2, hi = 10.0 / s2 + count * count / s2;
      auto cnt = [&](double x) {
        int c = 0;
        double q = 1.0;
        for (int i = 0; i < K; ++i) {
          double off2 = (i == 0) ? 0.0 : e[i - 1] * e[i - 1];
          q = d[i] - x - (q == 0.0 ? off2 / 1e-300 : off2 / q);
          if (q < 0.0) ++c;
        }
        return c;
      };
      for (int it = 0; it < 120; ++it) {
        double mid = 0.5 * (lo + hi);
        if (cnt(mid) > k)
          hi = mid;
        else
          lo = mid;
      }
      eigs.push_back(0.5 * (lo + hi));
    }
  }
  std::sort(eigs.begin(), eigs.end());
  if (int(eigs.size()) > count) eigs.resize(count);
  return eigs;
}

double stability_form_constant(const Interface& M, int n, double c) {
  // B(c, c) = -c^2 \int (|A|^2 + Ric) = -c^2 H^n(M) n / sin^2(theta_star)
  double s2 = std::sin(M.theta_star);
  s2 *= s2;
  return -c * c * orbit_measure(M, n) * double(n) / s2;
}

StabilityCertificate capacity_cutoff_test(const Interface& M, int n) {
  StabilityCertificate cert;
  cert.branch = "closed";  // latitude interfaces are closed at desk scale
  cert.value = stability_form_constant(M, n, 1.0);
  cert.negative = cert.value < 0.0;
  return cert;
}

}  // namespace phase
