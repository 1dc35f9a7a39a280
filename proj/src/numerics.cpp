#include "phase/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace phase {

namespace {

double bump_g(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

double bump_g_d1(double x) {
  if (x <= 0.0) return 0.0;
  return std::exp(-1.0 / x) / (x * x);
}

// 16-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr int kGL = 16;
const double kGLx[kGL] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318,
    -0.7554044083550030, -0.6178762444026438, -0.4580167776572274,
    -0.2816035507792589, -0.0950125098376374, 0.0950125098376374,
    0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,
    0.9894009349916499};
const double kGLw[kGL] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928,
    0.1246289712555339, 0.1495959888165767, 0.1691565193950025,
    0.1826034150449236, 0.1894506104550685, 0.1894506104550685,
    0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479,
    0.0271524594117541};

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double fa, double fm, double fb, double whole, double tol,
             int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(a, m, fa, flm, fm);
  double right = simpson(m, b, fm, frm, fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double smooth01(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double g = bump_g(x), h = bump_g(1.0 - x);
  return g / (g + h);
}

double smooth01_d1(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  double g = bump_g(x), h = bump_g(1.0 - x);
  double gp = bump_g_d1(x), hp = bump_g_d1(1.0 - x);
  double s = g + h;
  return (gp * h + g * hp) / (s * s);
}

double integrate_gl(const std::function<double(double)>& f, double a, double b,
                    int panels) {
  if (panels < 1) panels = 1;
  double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    double lo = a + p * h;
    double mid = lo + 0.5 * h;
    double acc = 0.0;
    for (int i = 0; i < kGL; ++i) acc += kGLw[i] * f(mid + 0.5 * h * kGLx[i]);
    total += 0.5 * h * acc;
  }
  return total;
}

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol, int max_depth) {
  if (a == b) return 0.0;
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = simpson(a, b, fa, fm, fb);
  return adapt(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

std::vector<double> solve_tridiag(std::vector<double> sub,
                                  std::vector<double> diag,
                                  std::vector<double> super,
                                  std::vector<double> rhs) {
  const std::size_t n = diag.size();
  if (n == 0 || sub.size() != n || super.size() != n || rhs.size() != n)
    throw std::invalid_argument("solve_tridiag: inconsistent sizes");
  // Gaussian elimination with row pivoting; fill-in limited to one extra band.
  std::vector<double> extra(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double below = sub[i + 1];
    if (std::abs(below) > std::abs(diag[i])) {
      std::swap(diag[i], below);
      std::swap(super[i], diag[i + 1]);
      std::swap(extra[i], super[i + 1]);
      std::swap(rhs[i], rhs[i + 1]);
    }
    if (diag[i] == 0.0) throw std::runtime_error("solve_tridiag: singular");
    double m = below / diag[i];
    diag[i + 1] -= m * super[i];
    super[i + 1] -= m * extra[i];
    rhs[i + 1] -= m * rhs[i];
  }
  if (diag[n - 1] == 0.0) throw std::runtime_error("solve_tridiag: singular");
  std::vector<double> x(n);
  x[n - 1] = rhs[n - 1] / diag[n - 1];
  if (n >= 2) {
    std::size_t i = n - 2;
    while (true) {
      double v = rhs[i] - super[i] * x[i + 1];
      if (i + 2 < n) v -= extra[i] * x[i + 2];
      x[i] = v / diag[i];
      if (i == 0) break;
      --i;
    }
  }
  return x;
}

int sturm_count(const std::vector<double>& d, const std::vector<double>& e,
                double x) {
  const std::size_t n = d.size();
  int count = 0;
  double q = 1.0;
  const double tiny = std::numeric_limits<double>::min() * 4.0;
  for (std::size_t i = 0; i < n; ++i) {
    double off2 = (i == 0) ? 0.0 : e[i - 1] * e[i - 1];
    q = d[i] - x - (q == 0.0 ? off2 / tiny : off2 / q);
    if (q < 0.0) ++count;
    if (q == 0.0) q = -tiny;
  }
  return count;
}

static void spectrum_bounds(const std::vector<double>& d,
                            const std::vector<double>& e, double& lo,
                            double& hi) {
  lo = std::numeric_limits<double>::infinity();
  hi = -lo;
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    double r = (i > 0 ? std::abs(e[i - 1]) : 0.0) +
               (i + 1 < n ? std::abs(e[i]) : 0.0);
    lo = std::min(lo, d[i] - r);
    hi = std::max(hi, d[i] + r);
  }
}

double eigenvalue_kth(const std::vector<double>& d, const std::vector<double>& e,
                      int k, double tol) {
  double lo, hi;
  spectrum_bounds(d, e, lo, hi);
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (sturm_count(d, e, mid) > k)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> eigenvalues_below(const std::vector<double>& d,
                                      const std::vector<double>& e,
                                      double bound, double tol, int max_count) {
  int below = sturm_count(d, e, bound);
  below = std::min(below, max_count);
  std::vector<double> eigs;
  eigs.reserve(below);
  for (int k = 0; k < below; ++k) eigs.push_back(eigenvalue_kth(d, e, k, tol));
  return eigs;
}

std::vector<double> inverse_iteration(const std::vector<double>& d,
                                      const std::vector<double>& e,
                                      double eigenvalue, int max_iter) {
  const std::size_t n = d.size();
  std::vector<double> sub(n, 0.0), diag(n), super(n, 0.0);
  // A small shift off the eigenvalue keeps the solve well posed.
  double scale = 0.0;
  for (double x : d) scale = std::max(scale, std::abs(x));
  double shift = eigenvalue + 1e-12 * (scale + 1.0);
  for (std::size_t i = 0; i < n; ++i) diag[i] = d[i] - shift;
  for (std::size_t i = 1; i < n; ++i) sub[i] = e[i - 1];
  for (std::size_t i = 0; i + 1 < n; ++i) super[i] = e[i];
  std::vector<double> v(n, 1.0 / std::sqrt(double(n)));
  for (int it = 0; it < max_iter; ++it) {
    std::vector<double> w;
    try {
      w = solve_tridiag(sub, diag, super, v);
    } catch (const std::runtime_error&) {
      shift += 1e-10 * (scale + 1.0);
      for (std::size_t i = 0; i < n; ++i) diag[i] = d[i] - shift;
      continue;
    }
    double nrm = 0.0;
    for (double x : w) nrm += x * x;
    nrm = std::sqrt(nrm);
    for (auto& x : w) x /= nrm;
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      diff = std::max(diff, std::abs(std::abs(w[i]) - std::abs(v[i])));
    v = std::move(w);
    if (diff < 1e-13) break;
  }
  return v;
}

double rk4_integrate(const std::function<double(double, double)>& f, double t0,
                     double u0, double t1, int steps) {
  double h = (t1 - t0) / steps;
  double t = t0, u = u0;
  for (int i = 0; i < steps; ++i) {
    double k1 = f(t, u);
    double k2 = f(t + 0.5 * h, u + 0.5 * h * k1);
    double k3 = f(t + 0.5 * h, u + 0.5 * h * k2);
    double k4 = f(t + h, u + h * k3);
    u += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += h;
  }
  return u;
}

}  // namespace phase
