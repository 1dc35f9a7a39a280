#include "phase/competitor.hpp"

#include <quadmath.h>

#include <algorithm>
#include <array>
#include <cmath>

#include "phase/numerics.hpp"
#include "phase/parallel.hpp"

namespace phase {

namespace {

using qd = __float128;

constexpr double kPi = 3.141592653589793238462643383279502884;

qd qabs(qd x) { return x < 0 ? -x : x; }
qd qmin(qd a, qd b) { return a < b ? a : b; }
qd qmax(qd a, qd b) { return a > b ? a : b; }

const qd kSigmaW = sqrtq(qd(2)) / 3;  // surface tension of the quartic well
const qd kPiW = qd(3.14159265358979323846264338327950288419716939937510582Q);

// ---------------------------------------------------------------------------
// Wide Gauss-Legendre rules, generated once by Newton iteration.

struct GLRule {
  std::vector<qd> x, w;
  explicit GLRule(int n) : x(n), w(n) {
    for (int i = 0; i < n; ++i) {
      // Chebyshev initial guess.
      qd t = cosq(kPiW * (qd(i) + qd(0.75Q)) / (qd(n) + qd(0.5Q)));
      for (int it = 0; it < 60; ++it) {
        qd p0 = 1, p1 = t;
        for (int j = 2; j <= n; ++j) {
          qd p2 = ((2 * j - 1) * t * p1 - (j - 1) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        qd dp = n * (t * p1 - p0) / (t * t - 1);
        qd dt = p1 / dp;
        t -= dt;
        if (qabs(dt) < qd(1e-35Q)) break;
      }
      qd p0 = 1, p1 = t;
      for (int j = 2; j <= n; ++j) {
        qd p2 = ((2 * j - 1) * t * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      qd dp = n * (t * p1 - p0) / (t * t - 1);
      x[i] = t;
      w[i] = 2 / ((1 - t * t) * dp * dp);
    }
  }
};

const GLRule& gl_rule() {
  static const GLRule rule(32);
  return rule;
}

const GLRule& gl_rule8() {
  static const GLRule rule(8);
  return rule;
}

template <class F>
qd gl_integrate(const F& f, qd a, qd b, int panels) {
  if (!(b > a)) return 0;
  const GLRule& r = gl_rule();
  qd h = (b - a) / panels;
  qd total = 0;
  for (int p = 0; p < panels; ++p) {
    qd mid = a + (qd(p) + qd(0.5Q)) * h;
    qd acc = 0;
    for (int i = 0; i < 32; ++i) acc += r.w[i] * f(mid + qd(0.5Q) * h * r.x[i]);
    total += qd(0.5Q) * h * acc;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Wide truncated profile.

qd smooth01_w(qd x) {
  if (x <= 0) return 0;
  if (x >= 1) return 1;
  qd g = expq(-1 / x), h = expq(-1 / (1 - x));
  return g / (g + h);
}

qd smooth01_d1_w(qd x) {
  if (x <= 0 || x >= 1) return 0;
  qd g = expq(-1 / x), h = expq(-1 / (1 - x));
  qd gp = g / (x * x), hp = h / ((1 - x) * (1 - x));
  qd s = g + h;
  return (gp * h + g * hp) / (s * s);
}

qd chi_w(qd u) {
  qd a = qabs(u);
  if (a <= 1) return 1;
  if (a >= 2) return 0;
  return smooth01_w(2 - a);
}

qd chi_d1_abs_w(qd a) {  // d/da chi(a), a >= 0
  if (a <= 1 || a >= 2) return 0;
  return -smooth01_d1_w(2 - a);
}

struct ProfileW {
  qd eps, Lambda, cut;  // cut = 2 eps Lambda

  explicit ProfileW(double e) : eps(e) {
    Lambda = 3 * qabs(logq(eps));
    cut = 2 * eps * Lambda;
  }

  qd value(qd t) const {
    if (t == 0) return 0;
    qd sign = t > 0 ? qd(1) : qd(-1);
    qd a = qabs(t);
    if (a >= cut) return sign;
    qd c = chi_w(a / (eps * Lambda));
    return sign * (c * tanhq(a / (eps * sqrtq(qd(2)))) + (1 - c));
  }

  qd deriv(qd t) const {  // even in t
    qd a = qabs(t);
    if (a >= cut) return 0;
    qd eL = eps * Lambda;
    qd c = chi_w(a / eL);
    qd dc = chi_d1_abs_w(a / eL) / eL;
    qd s2 = sqrtq(qd(2));
    qd H = tanhq(a / (eps * s2));
    qd ch = coshq(qmin(a / (eps * s2), qd(300)));
    qd dH = 1 / (s2 * eps * ch * ch);
    return dc * (H - 1) + c * dH;
  }

  qd q_density(qd t) const {
    qd a = qabs(t);
    if (a >= cut) return 0;
    qd v = value(t);
    qd dv = deriv(t);
    qd q = 1 - v * v;
    return qd(0.5Q) * eps * dv * dv + q * q / (4 * eps);
  }

  qd u_remainder(qd t) const {  // value - sgn, odd, supported in [-cut, cut]
    if (t == 0) return 0;
    qd sign = t > 0 ? qd(1) : qd(-1);
    return value(t) - sign;
  }
};

// Profile moments over the support window (odd ones vanish by parity).
struct Moments {
  qd Q0 = 0, Q2 = 0;       // \int Q, \int Q xi^2
  qd U1 = 0, U3 = 0, Ua = 0;  // \int U xi, \int U xi^3, \int |U|
  qd H0 = 2, H2 = 0;       // \int Hbar', \int Hbar' xi^2
  qd G0 = 0, G2 = 0;       // (eps/2) \int Hbar'^2 (1, xi^2)
};

// Cumulative profile integrals on a uniform eta = xi/eps grid, for partial
// (clipped) windows: Q, Q xi, Q xi^2, Hbar', Hbar' xi, U, U xi, g, g xi
// with g = (eps/2) Hbar'^2.
struct PartialMoments {
  qd Q0 = 0, Q1 = 0, Q2 = 0, H0 = 0, H1 = 0, U0 = 0, U1 = 0, G0 = 0, G1 = 0;
};

struct ProfileTables {
  static constexpr int kN = 2048;
  static constexpr int kC = 13;  // Q, Qx, Qx2, H', H'x, U, Ux, g, gx,
                                 // Ux3, |U|, H'x2, gx2
  const ProfileW* pr;
  qd xi0, dxi;                        // knots xi0 + j dxi, j = 0..kN
  std::vector<std::array<qd, kC>> cum;  // cumulative from -cut

  // One fused profile evaluation for all integrands.
  static std::array<qd, kC> evalC(const ProfileW& p, qd x) {
    qd a = x < 0 ? -x : x;
    qd sign = x > 0 ? qd(1) : (x < 0 ? qd(-1) : qd(0));
    qd v, dv;
    if (a >= p.cut) {
      v = sign;
      dv = 0;
    } else {
      qd eL = p.eps * p.Lambda;
      qd c = chi_w(a / eL);
      qd dc = chi_d1_abs_w(a / eL) / eL;
      qd s2 = sqrtq(qd(2));
      qd H = tanhq(a / (p.eps * s2));
      qd ch = coshq(qmin(a / (p.eps * s2), qd(300)));
      qd dH = 1 / (s2 * p.eps * ch * ch);
      v = sign * (c * H + (1 - c));
      dv = dc * (H - 1) + c * dH;  // even in x
    }
    qd q = 1 - v * v;
    qd G = qd(0.5Q) * p.eps * dv * dv;
    qd Q = G + q * q / (4 * p.eps);
    qd U = v - sign;
    qd Ua = U < 0 ? -U : U;
    return {Q, Q * x, Q * x * x, dv, dv * x, U, U * x, G, G * x,
            U * x * x * x, Ua, dv * x * x, G * x * x};
  }

  explicit ProfileTables(const ProfileW& p) : pr(&p) {
    xi0 = -p.cut;
    dxi = 2 * p.cut / kN;
    cum.assign(kN + 1, {});
    const GLRule& r = gl_rule8();
    std::array<qd, kC> acc{};
    cum[0] = acc;
    for (int j = 0; j < kN; ++j) {
      qd mid = xi0 + j * dxi + dxi / 2;
      for (int i = 0; i < 8; ++i) {
        std::array<qd, kC> f = evalC(p, mid + dxi / 2 * r.x[i]);
        for (int t = 0; t < kC; ++t) acc[t] += dxi / 2 * r.w[i] * f[t];
      }
      cum[j + 1] = acc;
    }
  }

  Moments moments() const {
    const std::array<qd, kC>& full = cum.back();
    Moments mo;
    mo.Q0 = full[0];
    mo.Q2 = full[2];
    mo.U1 = full[6];
    mo.U3 = full[9];
    mo.Ua = full[10];
    mo.H0 = full[3];
    mo.H2 = full[11];
    mo.G0 = full[7];
    mo.G2 = full[12];
    return mo;
  }

  // \int_a^b of the first nine integrands, -cut <= a <= b <= cut.
  PartialMoments partial(qd a, qd b) const {
    PartialMoments out;
    if (!(b > a)) return out;
    auto strip = [&](qd lo, qd hi, std::array<qd, kC>& dst) {
      if (!(hi > lo)) return;
      const GLRule& r = gl_rule8();
      qd mid = (lo + hi) / 2, half = (hi - lo) / 2;
      for (int i = 0; i < 8; ++i) {
        std::array<qd, kC> f = evalC(*pr, mid + half * r.x[i]);
        for (int t = 0; t < kC; ++t) dst[t] += half * r.w[i] * f[t];
      }
    };
    int ja = int((a - xi0) / dxi) + 1;
    int jb = int((b - xi0) / dxi);
    ja = std::max(0, std::min(ja, kN));
    jb = std::max(0, std::min(jb, kN));
    std::array<qd, kC> acc{};
    if (ja <= jb) {
      for (int t = 0; t < kC; ++t) acc[t] = cum[jb][t] - cum[ja][t];
      strip(a, xi0 + ja * dxi, acc);
      strip(xi0 + jb * dxi, b, acc);
    } else {
      strip(a, b, acc);
    }
    out.Q0 = acc[0];
    out.Q1 = acc[1];
    out.Q2 = acc[2];
    out.H0 = acc[3];
    out.H1 = acc[4];
    out.U0 = acc[5];
    out.U1 = acc[6];
    out.G0 = acc[7];
    out.G1 = acc[8];
    return out;
  }
};

// ---------------------------------------------------------------------------
// Model geometry in wide precision.

struct ModelW {
  int n;
  qd R, C1, lambda, m, Sm, Sp;
  qd ball_coeff;  // H^n of the two balls of radius t is 2 * ball_coeff * t^n

  explicit ModelW(const CylinderModel& c)
      : n(c.n), R(c.R), C1(c.C1), lambda(c.lambda), m(c.m), Sm(c.S_minus),
        Sp(c.S_plus) {
    // Unit-ball volume omega_n via the recursion omega_n = omega_{n-2} 2 pi / n.
    qd w2 = kPiW, w3 = 4 * kPiW / 3;
    for (int d = 4; d <= n; ++d) {
      if (d % 2 == 0)
        w2 = w2 * 2 * kPiW / d;
      else
        w3 = w3 * 2 * kPiW / d;
    }
    ball_coeff = (n % 2 == 0) ? w2 : w3;
  }

  qd area_two_balls(qd t) const {
    qd r = qmin(qmax(t, qd(0)), R);
    return 2 * ball_coeff * powq(r, n);
  }
  qd area_total() const { return area_two_balls(R); }
  // Radial density of H^n on the two disks: d(area)/dd.
  qd radial_density(qd d) const {
    return 2 * ball_coeff * n * powq(d, n - 1);
  }
  qd sigma_minus(qd d) const { return -qmin(C1 * d * d, Sm); }
  qd w_of(qd t) const { return lambda * t + qd(0.5Q) * m * t * t; }
  qd theta(qd t) const { return expq(-w_of(t)); }

  // \int_a^b exp(-w) via the error function.
  qd theta_int(qd a, qd b) const {
    qd s = sqrtq(m / 2);
    qd pref = expq(lambda * lambda / (2 * m)) * sqrtq(kPiW / (2 * m));
    return pref * (erfq(s * (b + lambda / m)) - erfq(s * (a + lambda / m)));
  }

  // exp(-w(T)) - 1 + lambda * Theta(0, T): the level-shift combination whose
  // linear parts cancel. Series below the switch point, exact form above.
  qd level_shift(qd T) const {
    if (qabs(lambda * T) + m * T * T < qd(1e-4Q)) {
      qd t2 = T * T;
      return -qd(0.5Q) * m * t2 + lambda * m * t2 * T / 3 +
             m * (m - lambda * lambda) * t2 * t2 / 8;
    }
    return expm1q(-w_of(T)) + lambda * theta_int(0, T);
  }

  qd diam() const { return Sp + Sm; }
};

// ---------------------------------------------------------------------------
// Window evaluation: integrals of profile quantities against the clipped
// area element at level T over a base point with cut time s_minus.

struct WindowOut {
  qd IQ = 0;   // \int Q(xi) theta^(T + xi) dxi
  qd IQx = 0;  // \int Q(xi) xi theta^ dxi
  qd IH = 0;   // \int Hbar'(xi) theta^ dxi
  qd IU = 0;   // \int U(xi) theta^ dxi
  bool clipped = false;
};

struct EvalCtx {
  const ModelW* mw;
  const ProfileW* pr;
  const Moments* mo;
  const ProfileTables* tab;
};

WindowOut window_eval(const EvalCtx& cx, qd T, qd s_minus) {
  const ModelW& mw = *cx.mw;
  const ProfileW& pr = *cx.pr;
  const Moments& mo = *cx.mo;
  qd c = pr.cut;
  WindowOut out;
  qd alpha = mw.lambda + mw.m * T;
  qd beta = qd(0.5Q) * mw.m;
  qd dmax = qabs(alpha) * c + beta * c * c;
  bool clip = (T - c <= s_minus) || (T + c >= mw.Sp);
  if (!clip && dmax < qd(1e-3Q)) {
    out.clipped = false;
    qd thT = mw.theta(T);
    qd c2 = alpha * alpha / 2 - beta;
    qd c3 = alpha * beta - alpha * alpha * alpha / 6;
    out.IQ = thT * (mo.Q0 + c2 * mo.Q2);
    out.IQx = thT * (-alpha * mo.Q2);
    out.IH = thT * (mo.H0 + c2 * mo.H2);
    out.IU = thT * (-alpha * mo.U1 + c3 * mo.U3);
    return out;
  }
  out.clipped = true;
  qd lo = qmax(-c, s_minus - T), hi = qmin(c, mw.Sp - T);
  if (!(hi > lo)) return out;  // window entirely outside the tube
  if (dmax < qd(1e-3Q)) {
    // Partial window, slowly varying area element: cumulative tables plus a
    // second-order tilt in exp(w(T) - w(T + xi)).
    PartialMoments pm = cx.tab->partial(lo, hi);
    qd thT = mw.theta(T);
    qd c2 = alpha * alpha / 2 - beta;
    out.IQ = thT * (pm.Q0 - alpha * pm.Q1 + c2 * pm.Q2);
    out.IQx = thT * (pm.Q1 - alpha * pm.Q2);
    out.IH = thT * (pm.H0 - alpha * pm.H1);
    out.IU = thT * (pm.U0 - alpha * pm.U1);
    return out;
  }
  qd eL = pr.eps * pr.Lambda;
  auto add = [&](qd a, qd b, int panels) {
    if (!(b > a)) return;
    const GLRule& r = gl_rule();
    qd h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
      qd mid = a + (qd(p) + qd(0.5Q)) * h;
      for (int i = 0; i < 32; ++i) {
        qd x = mid + qd(0.5Q) * h * r.x[i];
        qd wgt = qd(0.5Q) * h * r.w[i] * mw.theta(T + x);
        qd q = pr.q_density(x);
        out.IQ += wgt * q;
        out.IQx += wgt * q * x;
        out.IH += wgt * pr.deriv(x);
        out.IU += wgt * pr.u_remainder(x);
      }
    }
  };
  // Split at the blend shoulders to keep the panels aligned with structure.
  qd pts[4] = {lo, qmax(lo, qmin(hi, -eL)), qmax(lo, qmin(hi, eL)), hi};
  for (int i = 0; i < 3; ++i) add(pts[i], pts[i + 1], 16);
  return out;
}

// Relative energy density at one base point: F_x(level T) - A2_x where
// A2_x = 2 sigma - sigma lambda (Theta(0, Sp) - Theta(s-, 0)).
qd delta_x(const EvalCtx& cx, qd T, qd s_minus) {
  const ModelW& mw = *cx.mw;
  qd sg = kSigmaW;
  WindowOut wo = window_eval(cx, T, s_minus);
  qd cstar = qmin(qmax(T, s_minus), mw.Sp);
  if (!wo.clipped) {
    // w_x = theta_T (Q0 + corr) and the 2 sigma anchor combine into the
    // cancellation-free level_shift form.
    qd thT = mw.theta(T);
    qd base = wo.IQ - sg * mw.lambda * wo.IU;       // theta_T (Q0 + corr)
    qd excess = base - thT * cx.mo->Q0;             // theta_T * corr only
    return 2 * sg * mw.level_shift(T) + thT * (cx.mo->Q0 - 2 * sg) + excess;
  }
  qd w_x = wo.IQ - sg * mw.lambda * wo.IU;
  return w_x - 2 * sg + 2 * sg * mw.lambda * mw.theta_int(0, cstar);
}

// Gradient-term density: (da/dd)^2 * \int (eps/2) Hbar'(xi)^2 theta^ dxi.
qd grad_term_x(const EvalCtx& cx, qd T, qd s_minus, qd da) {
  if (da == 0) return 0;
  const ModelW& mw = *cx.mw;
  const ProfileW& pr = *cx.pr;
  const Moments& mo = *cx.mo;
  qd c = pr.cut;
  qd alpha = mw.lambda + mw.m * T;
  qd beta = qd(0.5Q) * mw.m;
  qd dmax = qabs(alpha) * c + beta * c * c;
  bool clip = (T - c <= s_minus) || (T + c >= mw.Sp);
  qd inner;
  if (!clip && dmax < qd(1e-3Q)) {
    qd c2 = alpha * alpha / 2 - beta;
    inner = mw.theta(T) * (mo.G0 + c2 * mo.G2);
  } else {
    qd lo = qmax(-c, s_minus - T), hi = qmin(c, mw.Sp - T);
    if (!(hi > lo)) {
      inner = 0;
    } else if (dmax < qd(1e-3Q)) {
      PartialMoments pm = cx.tab->partial(lo, hi);
      inner = mw.theta(T) * (pm.G0 - alpha * pm.G1);
    } else {
      inner = gl_integrate(
          [&](qd x) {
            qd d = pr.deriv(x);
            return pr.eps / 2 * d * d * mw.theta(T + x);
          },
          lo, hi, 48);
    }
  }
  return da * da * inner;
}

// ---------------------------------------------------------------------------
// Radial states (level profiles) and integration with feature breakpoints.

struct LedgerW {
  qd delta, L, k, r0, rho, l, gamma, tau, eps_tau;
  qd margin;  // sigma H^n(A_l) / (2 (2^n - 1))
  qd G0;
};

struct Bumps {
  const ModelW* mw;
  LedgerW lw;

  qd f(qd d) const {  // -1 on [0, l], 0 beyond 2l
    if (d <= lw.l) return -1;
    if (d >= 2 * lw.l) return 0;
    return -1 + smooth01_w((d - lw.l) / lw.l);
  }
  qd df(qd d) const {
    if (d <= lw.l || d >= 2 * lw.l) return 0;
    return smooth01_d1_w((d - lw.l) / lw.l) / lw.l;
  }
  qd ftilde(qd d) const {  // 0 on [0, L/k], 1 beyond L
    if (d <= lw.L / lw.k) return 0;
    if (d >= lw.L) return 1;
    if (mw->n == 2) return logq(d * lw.k / lw.L) / logq(lw.k);
    qd p = qd(2 - mw->n);
    qd a = powq(lw.L / lw.k, p), b = powq(lw.L, p);
    return (powq(d, p) - a) / (b - a);
  }
  qd dftilde(qd d) const {
    if (d <= lw.L / lw.k || d >= lw.L) return 0;
    if (mw->n == 2) return 1 / (d * logq(lw.k));
    qd p = qd(2 - mw->n);
    qd a = powq(lw.L / lw.k, p), b = powq(lw.L, p);
    return p * powq(d, p - 1) / (b - a);
  }
};

// State of the path: level a(d) and its radial derivative.
struct StateW {
  std::function<qd(qd)> a, da;
};

// Integrate fn(d) * radial_density(d) over [0, R] with the given breakpoints.
qd integrate_radial(const ModelW& mw, const std::vector<qd>& brk,
                    const std::function<qd(qd)>& fn, int panels_per_piece) {
  qd total = 0;
  for (std::size_t i = 0; i + 1 < brk.size(); ++i) {
    qd a = brk[i], b = brk[i + 1];
    if (!(b > a)) continue;
    // Log substitution for pieces spanning many decades.
    if (a > 0 && b / a > 50) {
      qd ua = logq(a), ub = logq(b);
      total += gl_integrate(
          [&](qd u) {
            qd d = expq(u);
            return fn(d) * mw.radial_density(d) * d;
          },
          ua, ub, 4 * panels_per_piece);
    } else {
      total += gl_integrate([&](qd d) { return fn(d) * mw.radial_density(d); },
                            a, b, panels_per_piece);
    }
  }
  return total;
}

// Sorted breakpoints: structural radii plus clip transitions of the state.
std::vector<qd> radial_breakpoints(const ModelW& mw, const LedgerW& lw,
                                   const StateW& st, qd cut) {
  std::vector<qd> pts{qd(0), mw.R};
  auto push = [&](qd d) {
    if (d > 0 && d < mw.R) pts.push_back(d);
  };
  push(lw.l);
  push(2 * lw.l);
  push(lw.L / lw.k);
  push(lw.L);
  push(sqrtq(mw.Sm / mw.C1));
  // Clip transitions: a(d) - sigma^-(d) in {-cut, 0, +cut}. Scan + bisect.
  auto q = [&](qd d) { return st.a(d) - mw.sigma_minus(d); };
  for (qd target : {-cut, qd(0), cut}) {
    const int scan = 96;
    qd dmaxs[2] = {4 * lw.l, mw.R};
    qd prev_d = 0, prev_v = q(0) - target;
    for (int half = 0; half < 2; ++half) {
      qd lo = (half == 0) ? qd(0) : dmaxs[0];
      qd hi = dmaxs[half];
      for (int i = 1; i <= scan; ++i) {
        qd d = lo + (hi - lo) * i / scan;
        qd v = q(d) - target;
        if ((v < 0) != (prev_v < 0)) {
          qd a = prev_d, b = d;
          for (int it = 0; it < 120; ++it) {
            qd mid = (a + b) / 2;
            if (((q(mid) - target) < 0) == (prev_v < 0))
              a = mid;
            else
              b = mid;
          }
          push((a + b) / 2);
        }
        prev_d = d;
        prev_v = v;
      }
    }
  }
  std::sort(pts.begin(), pts.end(),
            [](qd a, qd b) { return a < b; });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](qd a, qd b) { return a == b; }),
            pts.end());
  return pts;
}

// F(state) - A2 plus the tangential-gradient term.
qd state_delta(const EvalCtx& cx, const LedgerW& lw, const StateW& st) {
  const ModelW& mw = *cx.mw;
  std::vector<qd> brk = radial_breakpoints(mw, lw, st, cx.pr->cut);
  qd bulk = integrate_radial(
      mw, brk,
      [&](qd d) {
        qd s = mw.sigma_minus(d);
        return delta_x(cx, st.a(d), s) + grad_term_x(cx, st.a(d), s, st.da(d));
      },
      6);
  return bulk;
}

// Light 8-point panels for diagnostics.
template <class F>
qd gl8_integrate(const F& f, qd a, qd b, int panels) {
  if (!(b > a)) return 0;
  const GLRule& r = gl_rule8();
  qd h = (b - a) / panels;
  qd total = 0;
  for (int p = 0; p < panels; ++p) {
    qd mid = a + (qd(p) + qd(0.5Q)) * h;
    qd acc = 0;
    for (int i = 0; i < 8; ++i) acc += r.w[i] * f(mid + qd(0.5Q) * h * r.x[i]);
    total += qd(0.5Q) * h * acc;
  }
  return total;
}

// L2 distance between two states (coarse quadrature; diagnostic only).
qd state_l2_distance(const EvalCtx& cx, const LedgerW& lw, const StateW& s1,
                     const StateW& s2) {
  const ModelW& mw = *cx.mw;
  const ProfileW& pr = *cx.pr;
  std::vector<qd> brk = radial_breakpoints(mw, lw, s1, cx.pr->cut);
  qd acc = 0;
  for (std::size_t i = 0; i + 1 < brk.size(); ++i) {
    qd a = brk[i], b = brk[i + 1];
    if (!(b > a)) continue;
    bool logsub = a > 0 && b / a > 50;
    qd ua = logsub ? logq(a) : a, ub = logsub ? logq(b) : b;
    acc += gl8_integrate(
        [&](qd u) {
          qd d = logsub ? expq(u) : u;
          qd jac = logsub ? d : qd(1);
          qd a1 = s1.a(d), a2 = s2.a(d);
          qd s = mw.sigma_minus(d);
          qd lo = qmax(s, qmin(a1, a2) - pr.cut);
          qd hi = qmin(mw.Sp, qmax(a1, a2) + pr.cut);
          if (!(hi > lo)) return qd(0);
          qd inner = gl8_integrate(
              [&](qd t) {
                qd dv = pr.value(t - a1) - pr.value(t - a2);
                return dv * dv * mw.theta(t);
              },
              lo, hi, 4);
          return inner * mw.radial_density(d) * jac;
        },
        ua, ub, logsub ? 4 : 1);
  }
  return sqrtq(qmax(acc, qd(0)));
}

// ---------------------------------------------------------------------------
// Shared context bundling everything the path machinery needs.

struct Machine {
  ModelW mw;
  LedgerW lw;
  Bumps bumps;
  ProfileW pr;
  ProfileTables tab;
  Moments mo;
  EvalCtx cx;

  Machine(const CylinderModel& model, const LedgerW& ledger, double eps)
      : mw(model), lw(ledger), bumps{&mw, ledger}, pr(eps), tab(pr),
        mo(tab.moments()), cx{&mw, &pr, &mo, &tab} {}

  StateW slide_state(qd T) const {
    return {[T](qd) { return T; }, [](qd) { return qd(0); }};
  }
  StateW g1_state(qd r) const {
    const Bumps* b = &bumps;
    return {[b, r](qd d) { return r * b->f(d); },
            [b, r](qd d) { return r * b->df(d); }};
  }
  StateW g2_state(qd r) const {
    const Bumps* b = &bumps;
    qd rho = lw.rho;
    return {[b, r, rho](qd d) { return rho * b->f(d) + r * b->ftilde(d); },
            [b, r, rho](qd d) { return rho * b->df(d) + r * b->dftilde(d); }};
  }
  StateW g3_state(qd r) const {
    const Bumps* b = &bumps;
    qd r0 = lw.r0, rho = lw.rho;
    return {
        [b, r, r0, rho](qd d) { return r0 * b->ftilde(d) + (rho - r) * b->f(d); },
        [b, r, r0, rho](qd d) {
          return r0 * b->dftilde(d) + (rho - r) * b->df(d);
        }};
  }
  StateW g4_state(qd r) const {
    const Bumps* b = &bumps;
    qd r0 = lw.r0;
    return {[b, r, r0](qd d) { return (r0 - r) * b->ftilde(d) + r; },
            [b, r, r0](qd d) { return (r0 - r) * b->dftilde(d); }};
  }
  StateW g6_state(qd r) const {
    const Bumps* b = &bumps;
    qd rho = lw.rho;
    return {[b, r, rho](qd d) { return rho * b->f(d) - r * (1 + b->f(d)); },
            [b, r, rho](qd d) { return (rho - r) * b->df(d); }};
  }

  qd A2() const {
    qd HM = mw.area_total();
    qd Vp = HM * mw.theta_int(0, mw.Sp);
    std::vector<qd> brk{qd(0), sqrtq(mw.Sm / mw.C1), mw.R};
    if (!(brk[1] < brk[2])) brk.erase(brk.begin() + 1);
    qd Vm = integrate_radial(
        mw, brk, [&](qd d) { return mw.theta_int(mw.sigma_minus(d), 0); }, 8);
    return 2 * kSigmaW * HM - kSigmaW * mw.lambda * Vp + kSigmaW * mw.lambda * Vm;
  }

  qd cyl_volume() const {
    std::vector<qd> brk{qd(0), sqrtq(mw.Sm / mw.C1), mw.R};
    if (!(brk[1] < brk[2])) brk.erase(brk.begin() + 1);
    return integrate_radial(
        mw, brk, [&](qd d) { return mw.theta_int(mw.sigma_minus(d), mw.Sp); },
        8);
  }

  // F(u = const c) - A2.
  qd const_delta(qd c, qd A2v, qd vol) const {
    qd q = 1 - c * c;
    qd well = q * q / 4;
    return vol * (well / pr.eps - kSigmaW * mw.lambda * c) - A2v;
  }

  qd stable_root(qd start) const {  // W'(t) = eps sigma lambda near start
    qd target = pr.eps * kSigmaW * mw.lambda;
    qd t = start;
    for (int it = 0; it < 80; ++it) {
      qd g = t * t * t - t - target;
      qd dg = 3 * t * t - 1;
      qd step = g / dg;
      t -= step;
      if (qabs(step) < qd(1e-36Q)) break;
    }
    return t;
  }
};

// ---------------------------------------------------------------------------
// Error-term primitives (all per unit model, wide).

// Max/min of the clipped area element over the window [w1, w2] at cut time s.
qd theta_wmax(const ModelW& mw, qd s, qd w1, qd w2) {
  qd lo = qmax(s, w1), hi = qmin(mw.Sp, w2);
  if (!(hi > lo)) return 0;
  qd tpk = qmin(qmax(-mw.lambda / mw.m, lo), hi);
  return mw.theta(tpk);
}

qd theta_wmin(const ModelW& mw, qd s, qd w1, qd w2) {
  qd lo = qmax(s, w1), hi = qmin(mw.Sp, w2);
  if (!(hi > lo)) return 0;
  if (w1 < s || w2 > mw.Sp) return 0;  // window leaves the tube
  return qmin(mw.theta(lo), mw.theta(hi));
}

qd theta_osc(const ModelW& mw, qd s, qd w1, qd w2) {
  return theta_wmax(mw, s, w1, w2) - theta_wmin(mw, s, w1, w2);
}

struct ErrorPrimitives {
  qd q1_int, q2_int, q3_max, q4_min, p1_max, p2_zero, m1_int, m2_int, mu_band;
  qd Mg_max;
  qd band_Bl, band_ftilde, band_B2L;
};

qd ball_radius_area(const ModelW& mw, qd r) {  // both disks, radius capped
  return mw.area_two_balls(r);
}

ErrorPrimitives error_primitives(const Machine& M) {
  const ModelW& mw = M.mw;
  const LedgerW& lw = M.lw;
  const ProfileW& pr = M.pr;
  qd c = pr.cut;
  ErrorPrimitives ep{};

  // q1 = max over [-2c, c] of (H - lambda) theta^ = m c theta(c), constant.
  ep.q1_int = mw.m * c * mw.theta(c) * ball_radius_area(mw, 2 * lw.l);

  // q2(x) = (-m t*) theta(t*), t* = max(sigma^-, -c); integrate over A_L^k.
  {
    qd dstar = sqrtq(qmin(c, mw.Sm) / mw.C1);
    std::vector<qd> brk{lw.L / lw.k, lw.L};
    if (dstar > brk[0] && dstar < brk[1]) brk.insert(brk.begin() + 1, dstar);
    ep.q2_int = integrate_radial(
        mw, brk,
        [&](qd d) {
          qd ts = qmax(mw.sigma_minus(d), -c);
          return -mw.m * ts * mw.theta(ts);
        },
        8);
  }

  // zeta-oscillation terms on A_L^k for the g4 family,
  // zeta(x, t) = |grad ftilde|^2 theta^_t.
  {
    auto zeta_at = [&](qd d, qd t) {
      qd g = M.bumps.dftilde(d);
      qd s = mw.sigma_minus(d);
      if (t <= s || t >= mw.Sp) return qd(0);
      return g * g * mw.theta(t);
    };
    auto g4_at = [&](qd r, qd d) { return (lw.r0 - r) * M.bumps.ftilde(d) + r; };
    qd q3mx = 0, q4mn = 0, p1mx = 0, p2z = 0;
    std::vector<qd> brk{lw.L / lw.k, lw.L};
    qd dstar = sqrtq(qmin(3 * c, mw.Sm) / mw.C1);
    if (dstar > brk.front() && dstar < brk.back())
      brk.insert(brk.begin() + 1, dstar);
    for (int ri = 0; ri <= 8; ++ri) {
      qd r = lw.r0 * ri / 8;
      qd p1 = integrate_radial(
          mw, brk,
          [&](qd d) {
            qd g4 = g4_at(r, d);
            qd gf = M.bumps.dftilde(d);
            qd q3 = gf * gf * theta_wmax(mw, mw.sigma_minus(d), g4 - c, g4 + c) -
                    zeta_at(d, g4);
            return q3 > 0 ? q3 : qd(0);
          },
          3);
      if (p1 > p1mx) p1mx = p1;
      if (ri == 0) {
        p2z = integrate_radial(
            mw, brk,
            [&](qd d) {
              qd g4 = g4_at(0, d);
              qd gf = M.bumps.dftilde(d);
              qd q4 = gf * gf * theta_wmin(mw, mw.sigma_minus(d), g4 - c, g4 + c) -
                      zeta_at(d, g4);
              return q4 < 0 ? q4 : qd(0);
            },
            3);
      }
      for (int di = 1; di < 24; ++di) {
        qd d = lw.L / lw.k + (lw.L - lw.L / lw.k) * powq(qd(di) / 24, qd(3));
        qd g4 = g4_at(r, d);
        qd gf = M.bumps.dftilde(d);
        qd s = mw.sigma_minus(d);
        qd base = zeta_at(d, g4);
        qd mx = gf * gf * theta_wmax(mw, s, g4 - c, g4 + c);
        qd mn = gf * gf * theta_wmin(mw, s, g4 - c, g4 + c);
        if (mx - base > q3mx) q3mx = mx - base;
        if (mn - base < q4mn) q4mn = mn - base;
      }
    }
    ep.q3_max = q3mx;
    ep.q4_min = q4mn;
    ep.p1_max = p1mx;
    ep.p2_zero = p2z;
  }

  // m1 over the complement of B_{L/k}, window [-c, 2c].
  {
    qd dstar = sqrtq(qmin(c, mw.Sm) / mw.C1);
    std::vector<qd> brk{lw.L / lw.k, mw.R};
    if (dstar > brk.front() && dstar < brk.back())
      brk.insert(brk.begin() + 1, dstar);
    ep.m1_int = integrate_radial(
        mw, brk,
        [&](qd d) { return theta_osc(mw, mw.sigma_minus(d), -c, 2 * c); }, 3);
  }
  // m2 over {rho f >= -c}, window [-3c, c].
  {
    qd cutoff = qmin(qd(1), c / lw.rho);  // f >= -cutoff
    // radius where f(d) = -cutoff (f increasing from -1 to 0 on [l, 2l])
    qd dlo = lw.l, dhi = 2 * lw.l;
    if (cutoff >= 1) {
      dlo = 0;  // whole surface qualifies
    } else {
      for (int it = 0; it < 120; ++it) {
        qd mid = (dlo + dhi) / 2;
        if (M.bumps.f(mid) < -cutoff)
          dlo = mid;
        else
          dhi = mid;
      }
    }
    qd dstar = sqrtq(qmin(3 * c, mw.Sm) / mw.C1);
    std::vector<qd> brk{dlo, mw.R};
    if (dstar > brk.front() && dstar < brk.back())
      brk.insert(brk.begin() + 1, dstar);
    ep.m2_int = integrate_radial(
        mw, brk,
        [&](qd d) { return theta_osc(mw, mw.sigma_minus(d), -3 * c, c); }, 3);
  }
  ep.mu_band = (c >= mw.Sm) ? mw.area_total()
                            : ball_radius_area(mw, sqrtq(c / mw.C1));
  ep.band_Bl = ball_radius_area(mw, sqrtq(qmin(c / mw.C1, lw.l * lw.l)));
  // {x outside B_{L/k}: sigma^- >= c (ftilde - 1)}: solve d^2 = c (1 - ftilde).
  {
    qd lo = lw.L / lw.k, hi = lw.L;
    auto h = [&](qd d) { return mw.C1 * d * d - c * (1 - M.bumps.ftilde(d)); };
    if (h(lo) >= 0) {
      ep.band_ftilde = 0;
    } else {
      for (int it = 0; it < 120; ++it) {
        qd mid = (lo + hi) / 2;
        if (h(mid) < 0)
          lo = mid;
        else
          hi = mid;
      }
      ep.band_ftilde =
          ball_radius_area(mw, (lo + hi) / 2) - ball_radius_area(mw, lw.L / lw.k);
    }
  }
  ep.band_B2L = (c >= mw.Sm)
                    ? mw.area_total()
                    : ball_radius_area(mw, qmin(sqrtq(c / mw.C1), 2 * lw.L));

  // Dini table entry: M^g(r) for g = g2 on an r-grid, max over the grid.
  {
    qd mg_max = 0;
    std::vector<qd> brk{qd(0), lw.l, 2 * lw.l, lw.L / lw.k, lw.L, mw.R};
    qd dstar = sqrtq(qmin(3 * c, mw.Sm) / mw.C1);
    if (dstar < mw.R) brk.push_back(dstar);
    std::sort(brk.begin(), brk.end(), [](qd a, qd b) { return a < b; });
    for (int ri = 1; ri <= 4; ++ri) {
      qd r = lw.r0 * ri / 4;
      qd val = integrate_radial(
          mw, brk,
          [&](qd d) {
            qd g0 = lw.rho * M.bumps.f(d);
            qd g1 = g0 + r * M.bumps.ftilde(d);
            if (!(g1 > g0)) return qd(0);
            qd s = mw.sigma_minus(d);
            return gl_integrate(
                [&](qd T) { return theta_osc(mw, s, T - c, T + c); }, g0, g1,
                2);
          },
          2);
      if (val > mg_max) mg_max = val;
    }
    ep.Mg_max = mg_max;
  }
  return ep;
}

}  // namespace

// ---------------------------------------------------------------------------
// Public API.

CylinderModel build_model(int n, double R, double C1, double lambda, double m,
                          double S_minus, double S_plus) {
  if (n < 2) throw std::invalid_argument("build_model: n must be >= 2");
  if (!(R > 0) || !(C1 > 0) || !(lambda > 0) || !(m > 0) || !(S_minus > 0) ||
      !(S_plus > 0))
    throw std::invalid_argument("build_model: parameters must be positive");
  return CylinderModel{n, R, C1, lambda, m, S_minus, S_plus};
}

double model_area(const CylinderModel& c) {
  return double(ModelW(c).area_total());
}

double model_volume(const CylinderModel& c) {
  ModelW mw(c);
  std::vector<qd> brk{qd(0), sqrtq(mw.Sm / mw.C1), mw.R};
  if (!(brk[1] < brk[2])) brk.erase(brk.begin() + 1);
  return double(integrate_radial(
      mw, brk, [&](qd d) { return mw.theta_int(mw.sigma_minus(d), mw.Sp); }, 8));
}

double model_limit_energy(const CylinderModel& c) {
  ModelW mw(c);
  qd HM = mw.area_total();
  qd Vp = HM * mw.theta_int(0, mw.Sp);
  std::vector<qd> brk{qd(0), sqrtq(mw.Sm / mw.C1), mw.R};
  if (!(brk[1] < brk[2])) brk.erase(brk.begin() + 1);
  qd Vm = integrate_radial(
      mw, brk, [&](qd d) { return mw.theta_int(mw.sigma_minus(d), 0); }, 8);
  return double(2 * kSigmaW * HM - kSigmaW * mw.lambda * Vp +
                kSigmaW * mw.lambda * Vm);
}

double model_sigma_minus(const CylinderModel& c, double dist) {
  return double(ModelW(c).sigma_minus(qd(dist)));
}

double model_theta_profile(const CylinderModel& c, double t) {
  return double(ModelW(c).theta(qd(t)));
}

double model_theta(const CylinderModel& c, double dist, double t) {
  ModelW mw(c);
  qd s = mw.sigma_minus(qd(dist));
  if (t < double(s) || t > c.S_plus) return 0.0;
  return double(mw.theta(qd(t)));
}

namespace {

LedgerW ledger_wide(const CylinderModel& model, const ConstantsLedger& led) {
  ModelW mw(model);
  LedgerW lw{};
  lw.delta = led.delta;
  lw.L = led.L;
  lw.k = led.k;
  lw.r0 = led.r0;
  lw.l = led.l;
  lw.rho = mw.C1 * lw.l * lw.l;  // exact by the definition of l(rho)
  lw.gamma = led.gamma;
  lw.tau = led.tau;
  lw.eps_tau = led.eps_tau;
  qd areaAl = mw.area_two_balls(2 * lw.l) - mw.area_two_balls(lw.l);
  lw.margin = kSigmaW * areaAl / (2 * (powq(qd(2), mw.n) - 1));
  lw.G0 = led.G0;
  return lw;
}

// Capacity gradient mass at the g4 level, sampled on an r-grid.
struct GScan {
  qd G0 = 0, Gmin = 0, C6 = 0;
  qd worst_increase = 0;  // of F(r) = (r0 - r)^2 G(r); <= 0 when nonincreasing
};

GScan g_scan(const ModelW& mw, const Bumps& bumps, qd r0c) {
  const int N = 32;
  std::vector<qd> r(N + 1), G(N + 1);
  std::vector<qd> brk{bumps.lw.L / bumps.lw.k, bumps.lw.L};
  for (int j = 0; j <= N; ++j) {
    r[j] = r0c * j / N;
    G[j] = integrate_radial(
        mw, brk,
        [&](qd d) {
          qd g4 = (r0c - r[j]) * bumps.ftilde(d) + r[j];
          qd s = mw.sigma_minus(d);
          if (g4 <= s || g4 >= mw.Sp) return qd(0);
          qd gf = bumps.dftilde(d);
          return gf * gf * mw.theta(g4);
        },
        6);
  }
  GScan out;
  out.G0 = G[0];
  out.Gmin = G[0];
  for (qd g : G) out.Gmin = qmin(out.Gmin, g);
  qd h = r0c / N;
  for (int j = 0; j + 1 <= N; ++j) {
    qd gp = (j == 0)   ? (G[1] - G[0]) / h
            : (j == N) ? (G[N] - G[N - 1]) / h
                       : (G[j + 1] - G[j - 1]) / (2 * h);
    out.C6 = qmax(out.C6, qabs(gp));
  }
  qd worst = -qd(1e30Q);
  for (int j = 0; j + 1 <= N; ++j) {
    qd Fj = (r0c - r[j]) * (r0c - r[j]) * G[j];
    qd Fn = (r0c - r[j + 1]) * (r0c - r[j + 1]) * G[j + 1];
    worst = qmax(worst, Fn - Fj);
  }
  out.worst_increase = worst;
  return out;
}

struct BudgetW {
  qd iii[9];
  qd dF0;
  qd total;
};

qd theta_error_range(const Machine& M, int schedule, qd lo, qd hi);

BudgetW budget_wide(const Machine& M) {
  gl_rule();
  gl_rule8();
  const ModelW& mw = M.mw;
  const LedgerW& lw = M.lw;
  qd sg = kSigmaW;
  qd eps = M.pr.eps, c = M.pr.cut, eL = c / 2;
  qd Om = expq(mw.lambda * mw.lambda / (2 * mw.m));
  qd C2 = M.mo.Q0 * Om + sg * mw.lambda * Om + 1;
  qd C4 = C2 + 1;
  qd C5 = sg + C2;
  qd diam2 = 2 * mw.diam();
  ErrorPrimitives ep{};
  qd th1c = 0, th1r = 0, th2 = 0, th4 = 0, th5 = 0, th6a = 0, th6b = 0,
     th7 = 0, dF0 = 0;
  std::function<void()> tasks[] = {
      [&] { ep = error_primitives(M); },
      [&] { th1c = theta_error_range(M, 1, 0, qmin(4 * eL, lw.rho)); },
      [&] { th1r = theta_error_range(M, 1, 0, lw.rho); },
      [&] { th2 = theta_error_range(M, 2, 0, lw.r0); },
      [&] { th4 = theta_error_range(M, 4, 0, lw.r0); },
      [&] { th5 = theta_error_range(M, 5, lw.r0, diam2); },
      [&] { th6a = theta_error_range(M, 6, 0, qmin(c, lw.rho)); },
      [&] { th6b = theta_error_range(M, 6, 0, lw.rho); },
      [&] { th7 = theta_error_range(M, 7, lw.rho, diam2); },
      [&] {
        StateW v0 = M.slide_state(0);
        dF0 = state_delta(M.cx, lw, v0);
      }};
  parallel_for(std::size_t(10), [&](std::size_t i) { tasks[i](); });
  BudgetW b{};
  b.iii[0] = C4 * (eL * ep.q1_int + th1c + eL * eL);
  b.iii[1] = C2 * (ep.band_Bl + ep.q1_int + th1r + eps * eps);
  b.iii[2] = C2 * (ep.m1_int + eL);
  b.iii[3] = C2 * (ep.band_ftilde + ep.q2_int + th2 + ep.m1_int + eL);
  b.iii[4] = C5 * (ep.p1_max + qabs(ep.p2_zero) + ep.band_B2L + eL + th4);
  b.iii[5] = th5;
  b.iii[6] = C2 * (th6a + ep.m2_int + eL);
  b.iii[7] = C2 * (th6b + ep.m2_int + eL);
  b.iii[8] = th7;
  b.dF0 = dF0;
  b.total = b.dF0;
  for (qd x : b.iii) b.total += x;
  return b;
}

qd theta_error_range(const Machine& M, int schedule, qd lo, qd hi) {
  const ModelW& mw = M.mw;
  if (!(hi > lo)) return 0;
  auto dsg = [&](qd d) -> qd {
    switch (schedule) {
      case 1: return M.bumps.f(d);
      case 2: return M.bumps.ftilde(d);
      case 3: return -M.bumps.f(d);
      case 4: return 1 - M.bumps.ftilde(d);
      case 5: return 1;
      case 6: return -(1 + M.bumps.f(d));
      default: return -1;
    }
  };
  auto g_at = [&](qd s, qd d) -> qd {
    switch (schedule) {
      case 1: return s * M.bumps.f(d);
      case 2: return M.lw.rho * M.bumps.f(d) + s * M.bumps.ftilde(d);
      case 3:
        return M.lw.r0 * M.bumps.ftilde(d) + (M.lw.rho - s) * M.bumps.f(d);
      case 4: return (M.lw.r0 - s) * M.bumps.ftilde(d) + s;
      case 5: return s;
      case 6: return M.lw.rho * M.bumps.f(d) - s * (1 + M.bumps.f(d));
      default: return -s;
    }
  };
  std::vector<qd> brk{qd(0), M.lw.l, 2 * M.lw.l, M.lw.L / M.lw.k, M.lw.L, mw.R};
  qd c = M.pr.cut;
  qd reach = qmin(4 * c + 4 * (qabs(lo) + qabs(hi)), mw.Sm);
  qd dstar = sqrtq(reach / mw.C1);
  if (dstar < mw.R) brk.push_back(dstar);
  std::sort(brk.begin(), brk.end(), [](qd a, qd b) { return a < b; });
  brk.erase(std::unique(brk.begin(), brk.end(),
                        [](qd a, qd b) { return a == b; }),
            brk.end());
  return mw.lambda *
         gl_integrate(
             [&](qd s) {
               return integrate_radial(
                   mw, brk,
                   [&](qd d) {
                     qd dg = dsg(d);
                     if (dg == 0) return qd(0);
                     WindowOut wo =
                         window_eval(M.cx, g_at(s, d), mw.sigma_minus(d));
                     return qabs(dg * (kSigmaW * wo.IH - wo.IQ));
                   },
                   2);
             },
             lo, hi, 2);
}

StateW state_for(const Machine& M, int schedule, qd r) {
  switch (schedule) {
    case 1: return M.g1_state(r);
    case 2: return M.g2_state(r);
    case 3: return M.g3_state(r);
    case 4: return M.g4_state(r);
    case 5: return M.slide_state(r);
    case 6: return M.g6_state(r);
    default: return M.slide_state(-r);
  }
}

// One point of the contradiction path.
struct SampleState {
  bool is_const = false;
  qd c = 0;
  StateW st;
};

qd sample_l2(const Machine& M, const SampleState& s1, const SampleState& s2,
             qd vol) {
  const ModelW& mw = M.mw;
  const ProfileW& pr = M.pr;
  if (s1.is_const && s2.is_const) return qabs(s1.c - s2.c) * sqrtq(vol);
  if (s1.is_const || s2.is_const) {
    const SampleState& cs = s1.is_const ? s1 : s2;
    const SampleState& ls = s1.is_const ? s2 : s1;
    std::vector<qd> brk =
        radial_breakpoints(mw, M.lw, ls.st, pr.cut);
    qd acc = integrate_radial(
        mw, brk,
        [&](qd d) {
          qd a = ls.st.a(d);
          qd s = mw.sigma_minus(d);
          qd wlo = qmax(s, a - pr.cut), whi = qmin(mw.Sp, a + pr.cut);
          qd tails = 0;
          qd dplus = cs.c - 1, dminus = cs.c + 1;
          if (whi < mw.Sp) tails += dplus * dplus * mw.theta_int(whi, mw.Sp);
          if (wlo > s) tails += dminus * dminus * mw.theta_int(s, wlo);
          qd win = (whi > wlo)
                       ? gl8_integrate(
                             [&](qd t) {
                               qd dv = cs.c - pr.value(t - a);
                               return dv * dv * mw.theta(t);
                             },
                             wlo, whi, 4)
                       : qd(0);
          return tails + win;
        },
        1);
    return sqrtq(qmax(acc, qd(0)));
  }
  return state_l2_distance(M.cx, M.lw, s1.st, s2.st);
}

}  // namespace

ConstantsLedger choose_constants(const CylinderModel& model) {
  ModelW mw(model);
  ConstantsLedger out;
  qd sg = kSigmaW;
  qd HM = mw.area_total();
  qd twoN = powq(qd(2), mw.n) - 1;

  auto note = [&](const std::string& name, qd lhs, qd rhs, bool assumed = false) {
    RemarkCheck rc;
    rc.name = name;
    rc.lhs = double(lhs);
    rc.rhs = double(rhs);
    rc.assumed = assumed;
    rc.pass = assumed || lhs <= rhs;
    rc.margin = (rhs != 0) ? double((rhs - lhs) / qabs(rhs)) : 0.0;
    out.remarks.push_back(rc);
    if (!rc.pass) {
      out.feasible = false;
      throw InfeasibleModel(name);
    }
  };

  // delta: the disks stand in for the graphical chart around the tangency
  // point; the chart-existence remarks are model assumptions.
  out.delta = model.R;
  note("delta: graphical chart about the tangency point", 0, 1, true);
  note("delta: normal exponential is a chart on each side", 0, 1, true);
  note("delta: cut interface is a smooth graph", 0, 1, true);
  note("delta: metric distortion C3 <= 100 n^2", 1, 100.0 * mw.n * mw.n);

  // L.
  qd L = qd(0.9Q) * (mw.R / 2);
  out.L = double(L);
  note("L: chart containment L < R", L, mw.R);
  note("L: outer area 3/4 condition", qd(0.75Q) * HM,
       HM - mw.area_two_balls(L));

  // gamma and k (capacity scale).
  qd gamma = (mw.m * sg / 4) * HM;  // C3 = 1
  out.gamma = double(gamma);
  qd k;
  if (mw.n == 2) {
    k = expq(4 * kPiW / (qd(0.9Q) * gamma));
  } else {
    qd lo = 2, hi = 2;
    auto norm2 = [&](qd kk) {
      LedgerW tmp{};
      tmp.L = L;
      tmp.k = kk;
      Bumps b{&mw, tmp};
      return gl_integrate(
          [&](qd u) {
            qd d = expq(u);
            qd gf = b.dftilde(d);
            return gf * gf * mw.radial_density(d) * d;
          },
          logq(L / kk), logq(L), 64);
    };
    while (norm2(hi) >= qd(0.9Q) * gamma) hi *= 2;
    for (int it = 0; it < 80; ++it) {
      qd mid = sqrtq(lo * hi);
      if (norm2(mid) >= qd(0.9Q) * gamma)
        lo = mid;
      else
        hi = mid;
    }
    k = hi;
  }
  out.k = double(k);
  {
    LedgerW tmp{};
    tmp.L = L;
    tmp.k = k;
    Bumps b{&mw, tmp};
    qd norm2 = (mw.n == 2) ? 4 * kPiW / logq(k)
                           : gl_integrate(
                                 [&](qd u) {
                                   qd d = expq(u);
                                   qd gf = b.dftilde(d);
                                   return gf * gf * mw.radial_density(d) * d;
                                 },
                                 logq(L / k), logq(L), 64);
    note("k: capacity energy below gamma", norm2, gamma);
  }

  // r0 via the push-up claim.
  qd r0cap = qd(0.9Q) * qmin(qd(1), qmin(mw.diam() / 2, mw.Sp / 2));
  LedgerW lwk{};
  lwk.L = L;
  lwk.k = k;
  Bumps bumps{&mw, lwk};
  auto feasible_r0 = [&](qd r0c) {
    GScan gs = g_scan(mw, bumps, r0c);
    return gs.worst_increase <= qd(1e-30Q) * gs.G0 && gs.Gmin >= gs.G0 / 2 &&
           r0c < gs.G0 / qmax(gs.C6, qd(1e-300Q));
  };
  qd r0;
  if (feasible_r0(r0cap)) {
    r0 = r0cap;
  } else {
    qd lo = r0cap / 1024, hi = r0cap;
    while (!feasible_r0(lo)) lo /= 4;
    for (int it = 0; it < 60; ++it) {
      qd mid = (lo + hi) / 2;
      if (feasible_r0(mid))
        lo = mid;
      else
        hi = mid;
    }
    r0 = qd(0.9Q) * lo;
  }
  out.r0 = double(r0);
  GScan gs = g_scan(mw, bumps, r0);
  out.C6 = double(gs.C6);
  out.G0 = double(gs.G0);
  note("r0: below min(1, diam/2)", r0, qmin(qd(1), mw.diam() / 2));
  note("r0: level window below the outward cut", 2 * r0, mw.Sp);
  note("r0: half measure of Omega_r beyond B_L", qd(0.5Q) * HM,
       HM - mw.area_two_balls(L));
  note("r0: push-up claim r0 < G(0)/C6", r0, gs.G0 / gs.C6);
  note("r0: min G >= G(0)/2", gs.G0 / 2, gs.Gmin);
  note("r0: F(r) = (r0-r)^2 G(r) nonincreasing", gs.worst_increase,
       qd(1e-30Q) * gs.G0);

  // rho and l (l chosen at 90% of L/(2k); rho = C1 l^2 exactly).
  qd l = qd(0.45Q) * L / k;
  out.l = double(l);
  l = qd(out.l);  // freeze at double precision; rho derives from it exactly
  qd rho = mw.C1 * l * l;
  out.rho = double(rho);
  qd areaBl = mw.area_two_balls(l);
  qd areaAl = mw.area_two_balls(2 * l) - areaBl;
  out.area_M = double(HM);
  out.area_Bl = double(areaBl);
  out.area_Al = double(areaAl);
  note("rho: l(rho) inverts the quadratic cut", qabs(l - sqrtq(rho / mw.C1)),
       qd(1e-30Q) * l);
  note("rho: rho <= C1 l^2", rho, mw.C1 * l * l * (1 + qd(1e-33Q)));
  note("rho: B_2l inside the disk chart", 2 * l, mw.R);
  note("rho: B_2l inside B_{L/k}", 2 * l, L / k);
  note("rho: quadratic cut covers B_2l", mw.C1 * 4 * l * l, mw.Sm);
  note("rho: gradient cost below sigma/(2(2^n-1))", mw.C1 * rho,
       sg / (2 * twoN));
  note("rho: area ratio above 7/(8(2^n-1))", qd(7) / (8 * twoN),
       areaBl / areaAl);
  note("rho: deleted-area budget below the g2 gain", sg * areaAl / twoN,
       (mw.m * sg / 4) * HM * r0 * r0);
  note("rho: tube depth 2 rho < S_minus", 2 * rho, mw.Sm);
  note("rho: curvature band within [lambda/2, 3 lambda/2]", 2 * mw.m * rho,
       mw.lambda / 2);

  qd margin = sg * areaAl / (2 * twoN);
  out.margin = double(margin);
  qd tau = margin / 2;
  out.tau = double(tau);
  note("tau: positive and below the deleted-area margin", tau, margin);

  // eps_tau: the largest eps whose profile support obeys 2 eps Lambda <=
  // rho/8 (scalar bisection), tightened until the remainder budget fits
  // within tau/2.
  ConstantsLedger probe = out;
  double sat_cap;
  {
    double target = double(rho) / 8.0;
    double llo = std::log(1e-300), lhi = std::log(0.2);
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (llo + lhi);
      double eps = std::exp(mid);
      if (6.0 * eps * std::abs(std::log(eps)) <= target)
        llo = mid;
      else
        lhi = mid;
    }
    sat_cap = std::exp(llo);
  }
  auto budget_ok = [&](double eps) {
    LedgerW lw = ledger_wide(model, probe);
    Machine M(model, lw, eps);
    return budget_wide(M).total <= tau / 2;
  };
  double lo_e = sat_cap;
  int guard = 0;
  while (!budget_ok(lo_e)) {
    lo_e /= 10.0;
    if (++guard > 40) throw InfeasibleModel("eps_tau: no admissible epsilon");
  }
  if (guard > 0) {
    double llo = std::log(lo_e), lhi = std::log(std::min(sat_cap, lo_e * 10.0));
    for (int it = 0; it < 10; ++it) {
      double mid = 0.5 * (llo + lhi);
      if (budget_ok(std::exp(mid)))
        llo = mid;
      else
        lhi = mid;
    }
    lo_e = std::exp(llo);
  }
  out.eps_tau = 0.9 * lo_e;
  {
    LedgerW lw = ledger_wide(model, out);
    Machine M(model, lw, out.eps_tau);
    BudgetW b = budget_wide(M);
    note("eps_tau: profile support below rho/8", 2 * M.pr.eps * M.pr.Lambda,
         lw.rho / 8);
    note("eps_tau: remainder budget within tau/2", b.total, tau / 2);
    qd Om = expq(mw.lambda * mw.lambda / (2 * mw.m));
    out.C2 = double(M.mo.Q0 * Om + sg * mw.lambda * Om + 1);
    out.C3 = 1.0;
    out.C4 = out.C2 + 1.0;
    out.C5 = double(sg) + out.C2;
    out.C7 = double(2 * sg * Om * (mw.lambda + mw.m * 2 * mw.diam()) + 1);
  }
  out.feasible = true;
  return out;
}

BumpPair bump_functions(const CylinderModel& model, const ConstantsLedger& led) {
  BumpPair bp;
  bp.l = led.l;
  bp.L = led.L;
  bp.k = led.k;
  const double l = led.l, L = led.L, k = led.k;
  const int n = model.n;
  bp.f = [l](double d) {
    if (d <= l) return -1.0;
    if (d >= 2 * l) return 0.0;
    return -1.0 + smooth01((d - l) / l);
  };
  bp.df = [l](double d) {
    if (d <= l || d >= 2 * l) return 0.0;
    return smooth01_d1((d - l) / l) / l;
  };
  bp.ftilde = [L, k, n](double d) {
    if (d <= L / k) return 0.0;
    if (d >= L) return 1.0;
    if (n == 2) return std::log(d * k / L) / std::log(k);
    double p = 2.0 - n;
    double a = std::pow(L / k, p), b = std::pow(L, p);
    return (std::pow(d, p) - a) / (b - a);
  };
  bp.dftilde = [L, k, n](double d) {
    if (d <= L / k || d >= L) return 0.0;
    if (n == 2) return 1.0 / (d * std::log(k));
    double p = 2.0 - n;
    double a = std::pow(L / k, p), b = std::pow(L, p);
    return p * std::pow(d, p - 1) / (b - a);
  };
  double sup = 0.0;
  for (int i = 0; i <= 20000; ++i) {
    double d = l + (2 * l - l) * i / 20000.0;
    sup = std::max(sup, std::abs(bp.df(d)));
  }
  bp.grad_f_sup = sup;
  if (n == 2) {
    bp.grad_ftilde_norm2 = 4.0 * kPi / std::log(k);
  } else {
    ModelW mw(model);
    bp.grad_ftilde_norm2 = double(gl_integrate(
        [&](qd u) {
          qd d = expq(u);
          LedgerW tmp{};
          tmp.L = L;
          tmp.k = k;
          Bumps b{&mw, tmp};
          qd gf = b.dftilde(d);
          return gf * gf * mw.radial_density(d) * d;
        },
        logq(qd(L / k)), logq(qd(L)), 64));
  }
  if (led.gamma > 0 && bp.grad_ftilde_norm2 >= led.gamma)
    throw std::runtime_error(
        "bump_functions: capacity target unreachable at this k; increase k");
  return bp;
}

double model_energy_offset(const CylinderModel& model, double eps) {
  LedgerW lw{};
  Machine M(model, lw, eps);
  StateW v0 = M.slide_state(0);
  return double(state_delta(M.cx, lw, v0));
}

double slide_relative_energy(const CylinderModel& model, double eps, double T) {
  LedgerW lw{};
  Machine M(model, lw, eps);
  StateW st = M.slide_state(qd(T));
  return double(state_delta(M.cx, lw, st));
}

std::pair<double, double> schedule_range(const CylinderModel& model,
                                         const ConstantsLedger& led, int i) {
  double diam2 = 2.0 * (model.S_plus + model.S_minus);
  switch (i) {
    case 1: case 3: case 6: return {0.0, led.rho};
    case 2: case 4: return {0.0, led.r0};
    case 5: return {led.r0, diam2};
    case 7: return {led.rho, diam2};
    default: throw std::invalid_argument("schedule_range: i must be in 1..7");
  }
}

double schedule_relative_energy(const CylinderModel& model,
                                const ConstantsLedger& led, int i, double r,
                                double eps) {
  auto range = schedule_range(model, led, i);
  if (r < range.first - 1e-300 || r > range.second * (1 + 1e-12))
    throw std::invalid_argument("schedule_relative_energy: r out of range");
  LedgerW lw = ledger_wide(model, led);
  Machine M(model, lw, eps);
  StateW st = state_for(M, i, qd(r));
  qd delta = state_delta(M.cx, lw, st);
  qd dF0 = state_delta(M.cx, lw, M.slide_state(0));
  return double(delta - dF0);
}

double P_eps(const CylinderModel& model, const ConstantsLedger& led, double eps,
             double r) {
  ModelW mw(model);
  LedgerW lw = ledger_wide(model, led);
  ProfileW pr(eps);
  qd c = pr.cut;
  if (qd(r) <= c) return 0.0;
  qd rad2 = qmin(lw.l * lw.l, (qd(r) - c) / mw.C1);
  qd num = mw.area_two_balls(sqrtq(rad2));
  qd areaAl = mw.area_two_balls(2 * lw.l) - mw.area_two_balls(lw.l);
  return double(num / areaAl);
}

double kappa_eps(const CylinderModel& model, const ConstantsLedger& led,
                 double eps, double s) {
  ModelW mw(model);
  LedgerW lw = ledger_wide(model, led);
  ProfileW pr(eps);
  qd c = pr.cut;
  if (qd(s) * lw.rho < 2 * c) return 0.0;
  qd grad = mw.C1 * lw.rho * qd(s) * qd(s);  // C3 rho^2 / l^2 = C1 rho
  return double(grad) - 2.0 * double(kSigmaW) *
                             P_eps(model, led, eps, s * led.rho);
}

BaseTerms base_terms(const CylinderModel& model, const ConstantsLedger& led,
                     int schedule, double r, double eps) {
  BaseTerms out;
  if (schedule == 0 || r == 0.0) return out;  // g identically zero
  LedgerW lw = ledger_wide(model, led);
  Machine M(model, lw, eps);
  const ModelW& mw = M.mw;

  auto grad_at = [&](qd rr) {
    StateW st = state_for(M, schedule, rr);
    std::vector<qd> brk = radial_breakpoints(mw, lw, st, M.pr.cut);
    return integrate_radial(
        mw, brk,
        [&](qd d) {
          return grad_term_x(M.cx, st.a(d), mw.sigma_minus(d), st.da(d));
        },
        6);
  };
  auto range = schedule_range(model, led, schedule);
  qd r_lo = qd(range.first);
  out.I = double(grad_at(qd(r)) - grad_at(r_lo));

  auto dsg = [&](qd d) -> qd {
    switch (schedule) {
      case 1: return M.bumps.f(d);
      case 2: return M.bumps.ftilde(d);
      case 3: return -M.bumps.f(d);
      case 4: return 1 - M.bumps.ftilde(d);
      case 5: return 1;
      case 6: return -(1 + M.bumps.f(d));
      default: return -1;
    }
  };
  qd II = gl_integrate(
      [&](qd s) {
        StateW st = state_for(M, schedule, s);
        std::vector<qd> brk = radial_breakpoints(mw, lw, st, M.pr.cut);
        return integrate_radial(
            mw, brk,
            [&](qd d) {
              qd dg = dsg(d);
              if (dg == 0) return qd(0);
              qd g = st.a(d);
              qd smin = mw.sigma_minus(d);
              WindowOut wo = window_eval(M.cx, g, smin);
              qd boundary = -M.pr.q_density(mw.Sp - g) * mw.theta(mw.Sp) +
                            M.pr.q_density(smin - g) * mw.theta(smin);
              qd curvature = -mw.m * (g * wo.IQ + wo.IQx);
              qd theta_terms = mw.lambda * (kSigmaW * wo.IH - wo.IQ);
              return dg * (boundary + curvature + theta_terms);
            },
            4);
      },
      r_lo, qd(r), 6);
  out.II = double(II);
  out.theta_err = double(theta_error_range(M, schedule, r_lo, qd(r)));
  return out;
}

std::vector<ErrorTermsRow> error_terms(const CylinderModel& model,
                                       const ConstantsLedger& led,
                                       const std::vector<double>& eps_list) {
  std::vector<ErrorTermsRow> rows;
  LedgerW lw = ledger_wide(model, led);
  for (double eps : eps_list) {
    Machine M(model, lw, eps);
    ErrorPrimitives ep = error_primitives(M);
    ErrorTermsRow row;
    row.eps = eps;
    row.Mg_max = double(ep.Mg_max);
    row.q1_int = double(ep.q1_int);
    row.q2_int = double(ep.q2_int);
    row.q3_max = double(ep.q3_max);
    row.q4_min = double(ep.q4_min);
    row.p1_max = double(ep.p1_max);
    row.p2_zero = double(ep.p2_zero);
    row.m1_int = double(ep.m1_int);
    row.m2_int = double(ep.m2_int);
    row.mu_band = double(ep.mu_band);
    rows.push_back(row);
  }
  return rows;
}

RemainderBudget remainder_budget(const CylinderModel& model,
                                 const ConstantsLedger& led, double eps) {
  LedgerW lw = ledger_wide(model, led);
  Machine M(model, lw, eps);
  BudgetW b = budget_wide(M);
  RemainderBudget out;
  for (int i = 0; i < 9; ++i) out.iii[i] = double(b.iii[i]);
  out.dF0 = double(b.dF0);
  out.total = double(b.total);
  return out;
}

ContradictionVerdict contradiction_path(const CylinderModel& model,
                                        const ConstantsLedger& led, double eps,
                                        double tau_override) {
  if (!(eps > 0.0) || eps >= led.eps_tau)
    throw std::invalid_argument(
        "contradiction_path: requires 0 < eps < eps_tau from the ledger");
  LedgerW lw = ledger_wide(model, led);
  Machine M(model, lw, eps);
  const ModelW& mw = M.mw;

  qd tau = tau_override >= 0.0 ? qd(tau_override) : qd(led.tau);
  qd margin = lw.margin;
  qd bound = tau - margin;

  ContradictionVerdict verdict;
  verdict.A2 = double(M.A2());
  BudgetW bw = budget_wide(M);
  for (int i = 0; i < 9; ++i) verdict.budget.iii[i] = double(bw.iii[i]);
  verdict.budget.dF0 = double(bw.dF0);
  verdict.budget.total = double(bw.total);
  verdict.budget_margin = double(tau - bw.total);

  qd A2v = M.A2();
  qd vol = M.cyl_volume();
  qd a_eps = M.stable_root(qd(-1));
  qd b_eps = M.stable_root(qd(1));
  qd diam2 = 2 * mw.diam();

  struct SegSpec {
    int id;
    int count;
  };
  const SegSpec segs[8] = {{0, 17}, {1, 97}, {2, 49}, {3, 49},
                           {4, 49}, {5, 49}, {6, 97}, {7, 17}};

  // Lay out all samples, then evaluate energies and step lengths in
  // parallel (deterministic: every output lands in its own slot).
  std::vector<SampleState> states;
  std::vector<int> seg_of;
  std::vector<qd> rparam;
  for (const SegSpec& seg : segs) {
    for (int j = 0; j < seg.count; ++j) {
      qd u = qd(j) / (seg.count - 1);
      SampleState ss;
      qd rp = 0;
      switch (seg.id) {
        case 0: {  // constants a_eps -> -1
          ss.is_const = true;
          ss.c = a_eps + (qd(-1) - a_eps) * u;
          rp = ss.c;
          break;
        }
        case 1: {  // slide from saturation down to Gamma_{r0}
          qd T = diam2 + (lw.r0 - diam2) * u;
          ss.st = M.slide_state(T);
          rp = T;
          break;
        }
        case 2: {  // g4 reversed
          qd rr = lw.r0 * (1 - u);
          ss.st = M.g4_state(rr);
          rp = rr;
          break;
        }
        case 3: {  // g3 reversed
          qd rr = lw.rho * (1 - u);
          ss.st = M.g3_state(rr);
          rp = rr;
          break;
        }
        case 4: {  // g2 reversed
          qd rr = lw.r0 * (1 - u);
          ss.st = M.g2_state(rr);
          rp = rr;
          break;
        }
        case 5: {  // g6 forward
          qd rr = lw.rho * u;
          ss.st = M.g6_state(rr);
          rp = rr;
          break;
        }
        case 6: {  // slide from Gamma_{-rho} out to +1
          qd T = lw.rho + (diam2 - lw.rho) * u;
          ss.st = M.slide_state(-T);
          rp = T;
          break;
        }
        default: {  // constants 1 -> b_eps
          ss.is_const = true;
          ss.c = 1 + (b_eps - 1) * u;
          rp = ss.c;
          break;
        }
      }
      states.push_back(std::move(ss));
      seg_of.push_back(seg.id);
      rparam.push_back(rp);
    }
  }
  const std::size_t S = states.size();
  std::vector<qd> deltas(S, 0), steps(S, 0);
  gl_rule();
  gl_rule8();
  parallel_for(S, [&](std::size_t i) {
    deltas[i] = states[i].is_const
                    ? M.const_delta(states[i].c, A2v, vol)
                    : state_delta(M.cx, lw, states[i].st);
  });
  parallel_for(S - 1, [&](std::size_t i) {
    steps[i + 1] = sample_l2(M, states[i], states[i + 1], vol);
  });

  qd worst_gap = qd(1e30Q);
  bool samples_ok = true;
  for (std::size_t i = 0; i < S; ++i) {
    PathSample row;
    row.segment = seg_of[i];
    row.r = double(rparam[i]);
    row.delta_energy = double(deltas[i]);
    row.bound = double(bound);
    row.l2_step = double(steps[i]);
    verdict.trace.push_back(row);
    qd gap = bound - deltas[i];
    if (gap < worst_gap) worst_gap = gap;
    if (!(deltas[i] < bound) && samples_ok) {
      samples_ok = false;
      verdict.failure = "segment " + std::to_string(seg_of[i]) + " at r=" +
                        std::to_string(double(rparam[i])) +
                        ": energy bound A2 - margin + tau violated";
    }
  }
  verdict.sample_margin = double(worst_gap);
  bool budget_ok = bw.total < tau;
  if (!budget_ok && verdict.failure.empty())
    verdict.failure =
        "remainder budget: dF0 + sum III exceeds tau (finite-eps remainders "
        "are strictly positive)";
  verdict.pass = samples_ok && budget_ok;
  return verdict;
}

double gluing_mismatch(const CylinderModel& model, const ConstantsLedger& led,
                       double eps, double r) {
  LedgerW lw = ledger_wide(model, led);
  Machine M(model, lw, eps);
  const ModelW& mw = M.mw;
  auto psi_inverse = [](qd x) { return x; };  // dPsi = Id at the tangency point
  qd worst = 0;
  for (int i = 0; i <= 512; ++i) {
    qd d = 4 * lw.l * i / 512;
    if (d > mw.R) break;
    qd s = mw.sigma_minus(d);
    qd v1 = M.pr.value(s - qd(r) * M.bumps.f(d));
    qd v2 = M.pr.value(s - qd(r) * M.bumps.f(psi_inverse(d)));
    worst = qmax(worst, qabs(v1 - v2));
  }
  return double(worst);
}

std::vector<std::pair<double, double>> g_function_samples(
    const CylinderModel& model, const ConstantsLedger& led, int npts) {
  ModelW mw(model);
  LedgerW lw = ledger_wide(model, led);
  Bumps bumps{&mw, lw};
  std::vector<std::pair<double, double>> out;
  std::vector<qd> brk{lw.L / lw.k, lw.L};
  for (int j = 0; j < npts; ++j) {
    qd r = lw.r0 * j / (npts - 1);
    qd G = integrate_radial(
        mw, brk,
        [&](qd d) {
          qd g4 = (lw.r0 - r) * bumps.ftilde(d) + r;
          qd s = mw.sigma_minus(d);
          if (g4 <= s || g4 >= mw.Sp) return qd(0);
          qd gf = bumps.dftilde(d);
          return gf * gf * mw.theta(g4);
        },
        6);
    out.emplace_back(double(r), double(G));
  }
  return out;
}

}  // namespace phase
