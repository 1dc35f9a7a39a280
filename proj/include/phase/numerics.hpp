// Small numerical toolbox: quadrature, tridiagonal solves, symmetric
// tridiagonal eigenvalues (Sturm bisection + inverse iteration), RK4.
#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace phase {

// C-infinity transition, 0 at x<=0, 1 at x>=1.
double smooth01(double x);
double smooth01_d1(double x);

// Composite Gauss-Legendre (16-point panels).
double integrate_gl(const std::function<double(double)>& f, double a, double b,
                    int panels);

// Adaptive Simpson with absolute tolerance.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol, int max_depth = 40);

// Solve tridiagonal system with partial pivoting. a = sub, b = diag, c = super.
// a[0] and c[n-1] are ignored. Throws on numerically singular matrices.
std::vector<double> solve_tridiag(std::vector<double> sub,
                                  std::vector<double> diag,
                                  std::vector<double> super,
                                  std::vector<double> rhs);

// Number of eigenvalues of the symmetric tridiagonal (diag d, offdiag e)
// strictly below x.
int sturm_count(const std::vector<double>& d, const std::vector<double>& e,
                double x);

// All eigenvalues below `bound` (ascending), located by Sturm bisection to
// absolute tolerance `tol`; stops after max_count.
std::vector<double> eigenvalues_below(const std::vector<double>& d,
                                      const std::vector<double>& e,
                                      double bound, double tol,
                                      int max_count = 256);

// k-th smallest eigenvalue (k is 0-based), Sturm bisection.
double eigenvalue_kth(const std::vector<double>& d, const std::vector<double>& e,
                      int k, double tol);

// Inverse iteration for the eigenvector at a located eigenvalue.
std::vector<double> inverse_iteration(const std::vector<double>& d,
                                      const std::vector<double>& e,
                                      double eigenvalue, int max_iter = 50);

// Classic RK4 for du/dt = f(t, u).
double rk4_integrate(const std::function<double(double, double)>& f, double t0,
                     double u0, double t1, int steps);

}  // namespace phase
