#include "renormalist/counterterms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <thread>

namespace renormalist {

namespace {

constexpr double kPi = 3.14159265358979323846;

double bump_raw(double x) { return x > 0 ? std::exp(-1.0 / x) : 0.0; }

// smooth step: 0 at s<=0, 1 at s>=1
double smooth_step(double s) {
  if (s <= 0) return 0;
  if (s >= 1) return 1;
  double a = bump_raw(s), b = bump_raw(1 - s);
  return a / (a + b);
}

struct GaussRule {
  std::vector<double> x, w;  // on [-1, 1]
};

const GaussRule& gauss_rule(int n) {
  static std::mutex mu;
  static std::vector<GaussRule> cache(64);
  std::lock_guard<std::mutex> lock(mu);
  if (n < 1) n = 1;
  if (n >= static_cast<int>(cache.size())) cache.resize(n + 1);
  GaussRule& r = cache[n];
  if (!r.x.empty()) return r;
  // Newton iteration on Legendre polynomials
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      if (n == 1) p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double pn = n == 0 ? 1 : p1;
      double dpn = n * (x * p1 - p0) / (x * x - 1);
      double dx = pn / dpn;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double p0 = 1, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dpn = n * (x * p1 - p0) / (x * x - 1);
    r.x.push_back(x);
    r.w.push_back(2.0 / ((1 - x * x) * dpn * dpn));
  }
  return r;
}

// Quadrature nodes over [lo, hi] with panels geometrically graded toward lo
// at scale `floor` (for integrands singular at lo).
struct Nodes {
  std::vector<double> x, w;
};

Nodes graded_nodes(double lo, double hi, double floor_scale, int panels, int gauss) {
  Nodes out;
  if (hi <= lo) return out;
  const GaussRule& g = gauss_rule(gauss);
  double span = hi - lo;
  double rho = std::pow(1.0 + span / floor_scale, 1.0 / panels);
  double prev = lo;
  for (int k = 1; k <= panels; ++k) {
    double b = lo + floor_scale * (std::pow(rho, k) - 1.0);
    if (k == panels) b = hi;
    double mid = 0.5 * (prev + b), half = 0.5 * (b - prev);
    for (size_t i = 0; i < g.x.size(); ++i) {
      out.x.push_back(mid + half * g.x[i]);
      out.w.push_back(half * g.w[i]);
    }
    prev = b;
  }
  return out;
}

Nodes uniform_nodes(double lo, double hi, int panels, int gauss) {
  Nodes out;
  const GaussRule& g = gauss_rule(gauss);
  double h = (hi - lo) / panels;
  for (int k = 0; k < panels; ++k) {
    double a = lo + k * h, b = a + h;
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (size_t i = 0; i < g.x.size(); ++i) {
      out.x.push_back(mid + half * g.x[i]);
      out.w.push_back(half * g.w[i]);
    }
  }
  return out;
}

double phi_norm() {
  static double n = [] {
    // dense Simpson over (-1, 1); integrand vanishes to all orders at +-1
    const int N = 4000;
    double h = 2.0 / N, s = 0;
    for (int i = 0; i <= N; ++i) {
      double t = -1 + i * h;
      double f = bump_raw(1 - t * t) > 0 ? std::exp(-1.0 / (1 - t * t)) : 0.0;
      double w = (i == 0 || i == N) ? 1 : (i % 2 ? 4 : 2);
      s += w * f;
    }
    return 1.0 / (s * h / 3.0);
  }();
  return n;
}

}  // namespace

double kappa_cut(double t) {
  if (t < 0 || t > 2) return 0;
  if (t <= 1) return 1;
  return 1.0 - smooth_step(t - 1.0);
}

double phi_bump(double t) {
  if (t <= -1 || t >= 1) return 0;
  return phi_norm() * std::exp(-1.0 / (1 - t * t));
}

double psi_scaled(double y) {
  // psi(y) = int phi(z) phi(y - z) dz on the overlap, cached on a fine grid
  static std::vector<double> table;
  static std::mutex mu;
  constexpr int N = 2000;  // grid over [0, 2]; psi even
  {
    std::lock_guard<std::mutex> lock(mu);
    if (table.empty()) {
      table.resize(N + 1);
      const GaussRule& g = gauss_rule(24);
      for (int i = 0; i <= N; ++i) {
        double yy = 2.0 * i / N;
        double lo = std::max(-1.0, yy - 1.0), hi = std::min(1.0, yy + 1.0);
        double s = 0;
        if (hi > lo) {
          double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
          for (size_t k = 0; k < g.x.size(); ++k) {
            double z = mid + half * g.x[k];
            s += half * g.w[k] * phi_bump(z) * phi_bump(yy - z);
          }
        }
        table[i] = s;
      }
    }
  }
  double a = std::abs(y);
  if (a >= 2) return 0;
  double pos = a * N / 2.0;
  int i = std::min(static_cast<int>(pos), N - 1);
  double f = pos - i;
  return table[i] * (1 - f) + table[i + 1] * f;
}

double zbar(double t, double r2, int d) {
  double k = kappa_cut(t);
  if (k == 0 || t <= 0) return 0;
  return std::pow(4 * kPi * t, -0.5 * d) * std::exp(-r2 / (4 * t)) * k;
}

namespace {

// x^(d/2) for the even dimensions used here, avoiding std::pow
inline double half_power(double x, int d) {
  switch (d) {
    case 2: return x;
    case 3: return x * std::sqrt(x);
    case 4: return x * x;
    default: return std::pow(x, 0.5 * d);
  }
}

// int_{B_r in R^d} G_a(x) G_b(x) dx, Gaussians without cutoffs
double gaussian_pair_ball(double a, double b, double r, int d) {
  double c = (a + b) / (4 * a * b);
  double cr2 = c * r * r;
  switch (d) {
    case 2:
      return (1.0 - std::exp(-cr2)) / (4 * kPi * (a + b));
    case 3: {
      double pre = 4 * kPi / (half_power(4 * kPi * a, 3) * half_power(4 * kPi * b, 3));
      double radial = std::sqrt(kPi) / (4 * half_power(c, 3)) * std::erf(std::sqrt(cr2)) -
                      (r / (2 * c)) * std::exp(-cr2);
      return pre * radial;
    }
    default:
      throw QuadratureError("gaussian_pair_ball: unsupported dimension");
  }
}

// int_{B_r in R^2} d1 G_a d1 G_b dx
double gaussian_grad_pair_ball(double a, double b, double r) {
  double c = (a + b) / (4 * a * b);
  double cr2 = c * r * r;
  return (1.0 - (1.0 + cr2) * std::exp(-cr2)) / (8 * kPi * (a + b) * (a + b));
}

// Spatial reduction of a Gaussian kernel graph over R^d: product over edges
// of G_{a_e}(x_i - x_j) integrated over all internal vertices, one vertex
// pinned at the origin (index -1).
struct GaussEdge {
  int i, j;  // vertex indices, -1 = pinned root
  double a;
};

double gaussian_graph_value(int d, int internal, const std::vector<GaussEdge>& edges) {
  double pre = 1.0;
  std::array<std::array<double, 4>, 4> q{};
  for (auto& row : q) row.fill(0.0);
  for (const GaussEdge& e : edges) {
    if (e.a <= 0) return 0;
    pre *= half_power(4 * kPi * e.a, d);
    double beta = 1.0 / (4 * e.a);
    if (e.i >= 0) q[e.i][e.i] += beta;
    if (e.j >= 0) q[e.j][e.j] += beta;
    if (e.i >= 0 && e.j >= 0) {
      q[e.i][e.j] -= beta;
      q[e.j][e.i] -= beta;
    }
  }
  // determinant by elimination
  double det = 1.0;
  for (int k = 0; k < internal; ++k) {
    double piv = q[k][k];
    if (piv <= 0) return 0;
    det *= piv;
    for (int r = k + 1; r < internal; ++r) {
      double f = q[r][k] / piv;
      for (int c = k; c < internal; ++c) q[r][c] -= f * q[k][c];
    }
  }
  double pin = 1.0;
  for (int k = 0; k < internal; ++k) pin *= kPi;
  return half_power(pin / det, d) / pre;
}


// Gauss nodes on [lo, hi] in one panel
Nodes gauss_on(double lo, double hi, int pts) {
  Nodes out;
  if (hi <= lo) return out;
  const GaussRule& g = gauss_rule(pts);
  double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  for (size_t i = 0; i < g.x.size(); ++i) {
    out.x.push_back(mid + half * g.x[i]);
    out.w.push_back(half * g.w[i]);
  }
  return out;
}

// nodes for the scaled mollifier variable y in [-2, min(2, ycut)], split at 0
// so the kappa support boundary is a panel endpoint
Nodes mollifier_nodes(double ycut, int pts) {
  Nodes out;
  double hi = std::min(2.0, ycut);
  if (hi <= -2.0) return out;
  double mid = std::min(hi, 0.0);
  Nodes a = gauss_on(-2.0, mid, pts);
  out.x = a.x;
  out.w = a.w;
  if (hi > mid) {
    Nodes b = gauss_on(mid, hi, pts);
    out.x.insert(out.x.end(), b.x.begin(), b.x.end());
    out.w.insert(out.w.end(), b.w.begin(), b.w.end());
  }
  return out;
}

// Weight of a mollified noise pairing at total Gaussian time B: the two legs
// carry windows w, w' >= 0 with w' - w pinned to d by psi_eps and
// B = w + w' + 2 eps^2. Exact change of variables from the (w, w') plane.
double pair_weight(double d, double B, double eps, int pts) {
  const double e2 = eps * eps;
  double s = B - 2 * e2;
  if (s <= 0) return 0;
  // eta-window: |d + eta| <= s and |eta| <= 2 eps^2, in y = eta / eps^2 units
  double lo = std::max(-2.0, (-d - s) / e2);
  double hi = std::min(2.0, (-d + s) / e2);
  if (hi <= lo) return 0;
  Nodes y = gauss_on(lo, hi, pts);
  double sum = 0;
  for (size_t i = 0; i < y.x.size(); ++i) {
    double wlo = 0.5 * (s - d - e2 * y.x[i]);
    double whi = 0.5 * (s + d + e2 * y.x[i]);
    sum += y.w[i] * psi_scaled(y.x[i]) * kappa_cut(wlo) * kappa_cut(whi);
  }
  return 0.5 * sum;
}

QuadratureConfig coarser(const QuadratureConfig& cfg) {
  QuadratureConfig c = cfg;
  c.panels = std::max(3, (2 * cfg.panels) / 3);
  c.gauss = std::max(2, cfg.gauss - 1);
  c.panels4 = std::max(3, (2 * cfg.panels4) / 3);
  c.gauss4 = std::max(2, cfg.gauss4 - 1);
  c.smear = std::max(3, cfg.smear - 2);
  return c;
}

ConstantValue with_error(double (*fn)(double, const QuadratureConfig&), double eps,
                         const QuadratureConfig& cfg) {
  double fine = fn(eps, cfg);
  double coarse = fn(eps, coarser(cfg));
  return {fine, std::abs(fine - coarse)};
}

}  // namespace

// --- g-PAM (d = 2, spatial noise) ------------------------------------------

double pam_c_raw(double eps, const QuadratureConfig& cfg) {
  const double e2 = eps * eps;
  Nodes u = graded_nodes(0, 2, e2, cfg.panels, cfg.gauss);
  double sum = 0;
  for (size_t i = 0; i < u.x.size(); ++i) {
    double a = u.x[i] + e2;
    sum += u.w[i] * kappa_cut(u.x[i]) * gaussian_pair_ball(a, e2, cfg.rbar, 2);
  }
  return sum * kappa_cut(e2);
}

double pam_cp_raw(double eps, const QuadratureConfig& cfg) {
  const double e2 = eps * eps;
  Nodes u = graded_nodes(0, 2, e2, cfg.panels, cfg.gauss);
  double sum = 0;
  for (size_t i = 0; i < u.x.size(); ++i)
    for (size_t j = 0; j < u.x.size(); ++j) {
      double a = u.x[i] + e2, b = u.x[j] + e2;
      sum += u.w[i] * u.w[j] * kappa_cut(u.x[i]) * kappa_cut(u.x[j]) *
             gaussian_grad_pair_ball(a, b, cfg.rbar);
    }
  return sum;
}

PamConstants pam_constants(double eps, const QuadratureConfig& cfg) {
  if (!(eps > 0 && eps <= 1)) throw QuadratureError("eps must be in (0,1]");
  return {with_error(&pam_c_raw, eps, cfg), with_error(&pam_cp_raw, eps, cfg)};
}

// --- Phi^4_3 (d = 3, space-time noise) --------------------------------------

double phi4_c_raw(double eps, const QuadratureConfig& cfg) {
  const double e2 = eps * eps;
  Nodes w = graded_nodes(0, 2, e2, cfg.panels, cfg.gauss);
  double sum = 0;
  for (size_t i = 0; i < w.x.size(); ++i) {
    double kw = kappa_cut(w.x[i]);
    if (kw == 0) continue;
    Nodes y = mollifier_nodes(w.x[i] / e2, cfg.smear);
    for (size_t k = 0; k < y.x.size(); ++k) {
      double wp = w.x[i] - e2 * y.x[k];
      double kwp = kappa_cut(wp);
      if (kwp == 0) continue;
      sum += w.w[i] * y.w[k] * psi_scaled(y.x[k]) * kw * kwp *
             gaussian_pair_ball(w.x[i] + e2, wp + e2, cfg.rbar, 3);
    }
  }
  return sum;
}

namespace {

// mollified K * K two-point function at time separation t and radius rho
double phi4_q_kernel(double t, double rho, double eps, const QuadratureConfig& cfg) {
  const double e2 = eps * eps;
  Nodes w = graded_nodes(0, 2, e2, cfg.panels, cfg.gauss);
  double sum = 0;
  for (size_t i = 0; i < w.x.size(); ++i) {
    double kw = kappa_cut(w.x[i]);
    if (kw == 0) continue;
    Nodes y = mollifier_nodes((w.x[i] + t) / e2, cfg.smear);
    for (size_t k = 0; k < y.x.size(); ++k) {
      double wp = w.x[i] + t - e2 * y.x[k];
      double kwp = kappa_cut(wp);
      if (kwp == 0) continue;
      double arg = w.x[i] + wp + 2 * e2;
      sum += w.w[i] * y.w[k] * psi_scaled(y.x[k]) * kw * kwp *
             std::exp(-rho * rho / (4 * arg)) / half_power(4 * kPi * arg, 3);
    }
  }
  return sum;
}

}  // namespace

double phi4_cp_raw(double eps, const QuadratureConfig& cfg) {
  const double e2 = eps * eps;
  Nodes t = graded_nodes(0, 2, e2, cfg.panels, cfg.gauss);
  Nodes rho = graded_nodes(0, cfg.rbar, eps, cfg.panels, cfg.gauss);
  QuadratureConfig inner = cfg;
  inner.panels = std::max(4, cfg.panels - 2);
  inner.gauss = std::max(2, cfg.gauss - 1);
  double sum = 0;
  for (size_t i = 0; i < t.x.size(); ++i) {
    double kt = kappa_cut(t.x[i]);
    if (kt == 0) continue;
    for (size_t j = 0; j < rho.x.size(); ++j) {
      double q = phi4_q_kernel(t.x[i], rho.x[j], eps, inner);
      double g = std::exp(-rho.x[j] * rho.x[j] / (4 * t.x[i])) / half_power(4 * kPi * t.x[i], 3);
      sum += t.w[i] * rho.w[j] * kt * 4 * kPi * rho.x[j] * rho.x[j] * q * q * g;
    }
  }
  return sum;
}

Phi4Constants phi4_constants(double eps, const QuadratureConfig& cfg) {
  if (!(eps > 0 && eps <= 1)) throw QuadratureError("eps must be in (0,1]");
  return {with_error(&phi4_c_raw, eps, cfg), with_error(&phi4_cp_raw, eps, cfg)};
}

// --- phi^3_4 (d = 4, space-time noise) ---------------------------------------

double phi34_c21_raw(double eps, const QuadratureConfig& cfg) {
  const double e2 = eps * eps;
  Nodes B = graded_nodes(2 * e2, 4 + 2 * e2, e2, cfg.panels, cfg.gauss);
  double sum = 0;
  for (size_t i = 0; i < B.x.size(); ++i)
    sum += B.w[i] * pair_weight(0.0, B.x[i], eps, cfg.smear) /
           half_power(4 * kPi * B.x[i], 4);
  return sum;
}

double phi34_c22_raw(double eps, const QuadratureConfig& cfg) {
  const double e2 = eps * eps;
  Nodes B = graded_nodes(2 * e2, 4 + 2 * e2, e2, cfg.panels, cfg.gauss);
  double sum = 0;
  for (size_t i = 0; i < B.x.size(); ++i)
    sum += B.w[i] * pair_weight(0.0, B.x[i], eps, cfg.smear) * B.x[i] /
           half_power(4 * kPi * B.x[i], 4);
  return sum / 3.0;
}

double phi34_c11_raw(double eps, const QuadratureConfig& cfg) {
  const double e2 = eps * eps;
  Nodes t1 = graded_nodes(0, 2, e2, cfg.panels, cfg.gauss);
  Nodes wp = graded_nodes(0, 2, e2, cfg.panels, cfg.gauss);
  double sum = 0;
  for (size_t i = 0; i < t1.x.size(); ++i) {
    double k1 = kappa_cut(t1.x[i]);
    if (k1 == 0) continue;
    for (size_t j = 0; j < wp.x.size(); ++j) {
      double k2 = kappa_cut(wp.x[j]);
      if (k2 == 0) continue;
      // psi pins t1 - w + w' = eps^2 y  =>  w = t1 + w' - eps^2 y
      Nodes y = mollifier_nodes((t1.x[i] + wp.x[j]) / e2, cfg.smear);
      for (size_t k = 0; k < y.x.size(); ++k) {
        double w = t1.x[i] + wp.x[j] - e2 * y.x[k];
        double kw = kappa_cut(w);
        if (kw == 0) continue;
        double arg = t1.x[i] + w + wp.x[j] + 2 * e2;
        sum += t1.w[i] * wp.w[j] * y.w[k] * psi_scaled(y.x[k]) * k1 * k2 * kw *
               1.0 / half_power(4 * kPi * arg, 4);
      }
    }
  }
  return sum;
}

double phi34_c211_raw(double eps, const QuadratureConfig& cfg) {
  const double e2 = eps * eps;
  Nodes t1 = graded_nodes(0, 2, e2, cfg.panels4, cfg.gauss4);
  Nodes u2 = graded_nodes(0, 2, e2, cfg.panels4, cfg.gauss4);
  double sum = 0;
  std::vector<double> pw12, pw34;
  for (size_t i1 = 0; i1 < t1.x.size(); ++i1) {
    double ka1 = kappa_cut(t1.x[i1]);
    if (ka1 == 0) continue;
    for (size_t i2 = 0; i2 < u2.x.size(); ++i2) {
      double ka2 = kappa_cut(u2.x[i2]);
      if (ka2 == 0) continue;
      double t2 = t1.x[i1] + u2.x[i2];
      // root-side pairing pinned at d = t2, cross pairing at d = u2
      Nodes B12 = graded_nodes(2 * e2 + std::max(0.0, t2 - 2 * e2), 4 + 2 * e2, e2,
                               cfg.panels4, cfg.gauss4);
      Nodes B34 = graded_nodes(2 * e2 + std::max(0.0, u2.x[i2] - 2 * e2), 4 + 2 * e2, e2,
                               cfg.panels4, cfg.gauss4);
      pw12.assign(B12.x.size(), 0.0);
      pw34.assign(B34.x.size(), 0.0);
      for (size_t a = 0; a < B12.x.size(); ++a)
        pw12[a] = pair_weight(t2, B12.x[a], eps, cfg.smear);
      for (size_t b = 0; b < B34.x.size(); ++b)
        pw34[b] = pair_weight(u2.x[i2], B34.x[b], eps, cfg.smear);
      double inner = 0;
      for (size_t a = 0; a < B12.x.size(); ++a) {
        if (pw12[a] == 0) continue;
        for (size_t b = 0; b < B34.x.size(); ++b) {
          if (pw34[b] == 0) continue;
          double spatial = gaussian_graph_value(4, 2,
                                                {{0, -1, t1.x[i1]},
                                                 {1, 0, u2.x[i2]},
                                                 {1, -1, B12.x[a]},
                                                 {0, 1, B34.x[b]}});
          inner += B12.w[a] * B34.w[b] * pw12[a] * pw34[b] * spatial;
        }
      }
      sum += t1.w[i1] * u2.w[i2] * ka1 * ka2 * inner;
    }
  }
  return 2.0 * sum;
}

double phi34_c22j_raw(double eps, const QuadratureConfig& cfg) {
  const double e2 = eps * eps;
  Nodes tl = graded_nodes(0, 2, e2, cfg.panels4, cfg.gauss4);
  Nodes tr = graded_nodes(0, 2, e2, cfg.panels4, cfg.gauss4);
  double sum = 0;
  std::vector<double> pw;
  for (size_t il = 0; il < tl.x.size(); ++il) {
    double kl = kappa_cut(tl.x[il]);
    if (kl == 0) continue;
    for (size_t ir = 0; ir < tr.x.size(); ++ir) {
      double kr = kappa_cut(tr.x[ir]);
      if (kr == 0) continue;
      double dt = tl.x[il] - tr.x[ir];
      // both pairings pinned at d = -dt
      Nodes B = graded_nodes(2 * e2 + std::max(0.0, std::abs(dt) - 2 * e2), 4 + 2 * e2, e2,
                             cfg.panels4, cfg.gauss4);
      pw.assign(B.x.size(), 0.0);
      for (size_t a = 0; a < B.x.size(); ++a) pw[a] = pair_weight(-dt, B.x[a], eps, cfg.smear);
      double inner = 0;
      for (size_t a = 0; a < B.x.size(); ++a) {
        if (pw[a] == 0) continue;
        for (size_t b = 0; b < B.x.size(); ++b) {
          if (pw[b] == 0) continue;
          double spatial = gaussian_graph_value(4, 2,
                                                {{0, -1, tl.x[il]},
                                                 {1, -1, tr.x[ir]},
                                                 {0, 1, B.x[a]},
                                                 {0, 1, B.x[b]}});
          inner += B.w[a] * B.w[b] * pw[a] * pw[b] * spatial;
        }
      }
      sum += tl.w[il] * tr.w[ir] * kl * kr * inner;
    }
  }
  return 2.0 * sum;
}

Phi34Constants phi34_constants(double eps, const QuadratureConfig& cfg) {
  if (!(eps > 0 && eps <= 1)) throw QuadratureError("eps must be in (0,1]");
  return {with_error(&phi34_c21_raw, eps, cfg), with_error(&phi34_c22_raw, eps, cfg),
          with_error(&phi34_c211_raw, eps, cfg), with_error(&phi34_c22j_raw, eps, cfg),
          with_error(&phi34_c11_raw, eps, cfg)};
}

// --- divergence fits ---------------------------------------------------------

namespace {

struct LsqFit {
  double a = 0, b = 0, residual = 0;
};

// least squares y ~ a * f + b, relative RMS residual
LsqFit linear_fit(const std::vector<double>& f, const std::vector<double>& y) {
  size_t n = f.size();
  double sf = 0, sy = 0, sff = 0, sfy = 0;
  for (size_t i = 0; i < n; ++i) {
    sf += f[i];
    sy += y[i];
    sff += f[i] * f[i];
    sfy += f[i] * y[i];
  }
  double det = n * sff - sf * sf;
  LsqFit out;
  if (std::abs(det) < 1e-300) {
    out.residual = 1e300;
    return out;
  }
  out.a = (n * sfy - sf * sy) / det;
  out.b = (sy * sff - sf * sfy) / det;
  double num = 0, den = 0;
  for (size_t i = 0; i < n; ++i) {
    double d = y[i] - (out.a * f[i] + out.b);
    num += d * d;
    den += y[i] * y[i];
  }
  out.residual = den > 0 ? std::sqrt(num / den) : std::sqrt(num);
  return out;
}

}  // namespace

FitResult fit_divergence(const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 4) throw QuadratureError("fit_divergence needs at least 4 samples");
  std::vector<double> y;
  for (auto& [e, v] : samples) {
    if (!(e > 0)) throw QuadratureError("fit_divergence: nonpositive epsilon");
    y.push_back(v);
  }

  std::vector<double> flog;
  for (auto& [e, v] : samples) flog.push_back(std::log(1.0 / e));
  LsqFit logfit = linear_fit(flog, y);

  auto power_res = [&](double p) {
    std::vector<double> f;
    for (auto& [e, v] : samples) f.push_back(std::pow(e, -p));
    return linear_fit(f, y);
  };
  double best_p = 0.25;
  LsqFit best = power_res(best_p);
  for (double p = 0.25; p <= 6.0 + 1e-9; p += 0.25) {
    LsqFit r = power_res(p);
    if (r.residual < best.residual) {
      best = r;
      best_p = p;
    }
  }
  // golden-section refinement around the best grid point
  double lo = std::max(0.2, best_p - 0.25), hi = std::min(6.0, best_p + 0.25);
  for (int it = 0; it < 40; ++it) {
    double m1 = lo + 0.382 * (hi - lo), m2 = lo + 0.618 * (hi - lo);
    if (power_res(m1).residual < power_res(m2).residual) hi = m2;
    else lo = m1;
  }
  double p = 0.5 * (lo + hi);
  LsqFit pow_fit = power_res(p);

  FitResult out;
  if (logfit.residual <= pow_fit.residual) {
    out.model = FitResult::Model::Log;
    out.a = logfit.a;
    out.b = logfit.b;
    out.p = 0;
    out.residual = logfit.residual;
  } else {
    out.model = FitResult::Model::Power;
    out.a = pow_fit.a;
    out.b = pow_fit.b;
    out.p = p;
    out.residual = pow_fit.residual;
  }
  return out;
}

Rational power_counting_degree(const std::vector<Rational>& kernel_orders, const Rational& s_norm,
                               int integrated_vertices) {
  Rational sum;
  for (const Rational& a : kernel_orders) sum += a;
  return Rational(integrated_vertices) * s_norm - sum;
}

Rational divergence_oracle(const std::string& constant) {
  // (kernel orders, |s|, integrated vertices) per shipped diagram
  if (constant == "pam_c") return power_counting_degree({Rational(0), Rational(2)}, Rational(2), 1);
  if (constant == "pam_cp") return power_counting_degree({Rational(1), Rational(1)}, Rational(2), 1);
  if (constant == "phi4_c") return power_counting_degree({Rational(3), Rational(3)}, Rational(5), 1);
  if (constant == "phi4_cp")
    return power_counting_degree({Rational(1), Rational(1), Rational(3)}, Rational(5), 1);
  if (constant == "phi34_c21")
    return power_counting_degree({Rational(4), Rational(4)}, Rational(6), 1);
  if (constant == "phi34_c22")
    return power_counting_degree({Rational(4), Rational(4), Rational(-2)}, Rational(6), 1);
  if (constant == "phi34_c211")
    return power_counting_degree(
        {Rational(4), Rational(4), Rational(4), Rational(4), Rational(4), Rational(4)},
        Rational(6), 4);
  if (constant == "phi34_c22j")
    return power_counting_degree(
        {Rational(4), Rational(4), Rational(4), Rational(4), Rational(4), Rational(4)},
        Rational(6), 4);
  if (constant == "phi34_c11")
    return power_counting_degree({Rational(4), Rational(4), Rational(4)}, Rational(6), 2);
  throw QuadratureError("unknown constant for the divergence oracle: " + constant);
}

// --- dyadic decomposition check ----------------------------------------------

namespace {

double chi_bump(double s) {
  if (s <= 0.5) return 1;
  if (s >= 1) return 0;
  return 1.0 - smooth_step(2 * (s - 0.5));
}

}  // namespace

DyadicReport dyadic_decompose(const std::function<double(double, double)>& kernel_tx,
                              double s_norm, double beta, int nmax, int grid) {
  DyadicReport report;
  auto ds = [](double t, double x) { return std::max(std::sqrt(std::abs(t)), std::abs(x)); };
  auto band_fn = [&](int n, double t, double x) {
    double d = ds(t, x);
    double window = chi_bump(std::ldexp(d, n)) - chi_bump(std::ldexp(d, n + 1));
    if (window == 0) return 0.0;
    return kernel_tx(t, x) * window;
  };
  for (int n = 0; n <= nmax; ++n) {
    DyadicBand band;
    band.n = n;
    double scale = std::ldexp(1.0, -n);  // 2^-n
    double hx = 1e-3 * scale;
    double ht = 1e-3 * scale * scale;
    // sample the supporting annulus d_s in [2^-n-2, 2^-n]
    for (int it = 0; it <= grid; ++it)
      for (int ix = 0; ix <= grid; ++ix) {
        double t = (0.05 + 0.95 * it / grid) * scale * scale;
        double x = (0.05 + 0.95 * ix / grid) * scale;
        double v = band_fn(n, t, x);
        double dx = (band_fn(n, t, x + hx) - band_fn(n, t, x - hx)) / (2 * hx);
        double dt = (band_fn(n, t + ht, x) - band_fn(n, t - ht, x)) / (2 * ht);
        band.ratio = std::max(band.ratio, std::abs(v) * std::pow(scale, s_norm - beta));
        band.ratio_dx = std::max(band.ratio_dx, std::abs(dx) * std::pow(scale, s_norm - beta + 1));
        band.ratio_dt = std::max(band.ratio_dt, std::abs(dt) * std::pow(scale, s_norm - beta + 2));
      }
    report.bands.push_back(band);
  }
  // growth slope of log2(ratio) over the upper half of the bands
  std::vector<double> xs, ys;
  for (const DyadicBand& b : report.bands) {
    if (b.n < nmax / 2 || b.ratio <= 0) continue;
    xs.push_back(b.n);
    ys.push_back(std::log2(b.ratio));
  }
  if (xs.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    double det = xs.size() * sxx - sx * sx;
    report.slope = det != 0 ? (xs.size() * sxy - sx * sy) / det : 0;
  }
  report.flagged = report.slope > 0.5;
  return report;
}

std::vector<double> sweep_epsilons(const std::vector<double>& eps,
                                   const std::function<double(double)>& fn) {
  int threads = 1;
  if (const char* env = std::getenv("RENORMALIST_THREADS")) threads = std::max(1, std::atoi(env));
  threads = std::min<int>(threads, static_cast<int>(eps.size()));
  std::vector<double> out(eps.size());
  if (threads <= 1) {
    for (size_t i = 0; i < eps.size(); ++i) out[i] = fn(eps[i]);
    return out;
  }
  std::vector<std::thread> pool;
  std::mutex mu;
  size_t next = 0;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      while (true) {
        size_t i;
        {
          std::lock_guard<std::mutex> lock(mu);
          if (next >= eps.size()) return;
          i = next++;
        }
        out[i] = fn(eps[i]);
      }
    });
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace renormalist
