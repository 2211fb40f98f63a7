#include "mz/mean_square.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace mz {

double main_term(double T) {
  if (T <= 0.0) return 0.0;  // T log T -> 0
  return T * (std::log(T / kTwoPi) + 2.0 * kEulerGamma - 1.0);
}

double main_term_derivative(double T) {
  return std::log(T / kTwoPi) + 2.0 * kEulerGamma;
}

double GExplicitParams::n_prime() const {
  // N' = T/2pi + N/2 - sqrt(N^2/4 + NT/2pi); the conjugate form avoids the
  // cancellation for N >> T:  N' * (T/2pi + N/2 + sqrt(...)) = T^2/(4 pi^2).
  double half_n = 0.5 * static_cast<double>(N);
  double a = T / kTwoPi + half_n;
  double root = std::sqrt(half_n * half_n + static_cast<double>(N) * T / kTwoPi);
  return (T * T / (4.0 * kPi * kPi)) / (a + root);
}

void GExplicitParams::validate() const {
  if (!(T > 0.0)) throw DomainError("G_explicit: T > 0 required");
  double n = static_cast<double>(N);
  if (!(0.5 * T < n && n < 2.0 * T))
    throw DomainError("G_explicit: need A*T < N < A'*T (A=0.5, A'=2)");
}

double f_phase(double T, long n) {
  if (!(T > 0.0) || n < 1) throw DomainError("f_phase: T > 0, n >= 1");
  double x = std::sqrt(kPi * static_cast<double>(n) / (2.0 * T));
  double ars = std::asinh(x);  // log1p-style stable for small x
  return 2.0 * T * ars +
         std::sqrt(kTwoPi * static_cast<double>(n) * T +
                   kPi * kPi * static_cast<double>(n) * static_cast<double>(n)) -
         kPi / 4.0;
}

double g_phase(double T, long n) {
  if (!(T > 0.0) || n < 1) throw DomainError("g_phase: T > 0, n >= 1");
  double ratio = T / (kTwoPi * static_cast<double>(n));
  if (ratio <= 1.0) throw DomainError("g_phase: requires 2 pi n < T");
  return T * std::log(ratio) - T + kPi / 4.0;
}

Eval G_explicit(const GExplicitParams& params, const DivisorTable& dtable,
                double c_rem) {
  params.validate();
  const double T = params.T;
  double np = params.n_prime();
  long n2 = static_cast<long>(np);
  if (dtable.limit < static_cast<std::uint64_t>(params.N))
    throw CapacityError("G_explicit: divisor table smaller than N");
  Kahan s1;
  for (long n = 1; n <= params.N; ++n) {
    double nn = static_cast<double>(n);
    double ars = std::asinh(std::sqrt(kPi * nn / (2.0 * T)));
    double amp = dtable(n) / std::sqrt(nn) / (ars * ars) *
                 std::pow(T / (kTwoPi * nn) + 0.25, -0.25);
    double term = amp * std::sin(f_phase(T, n));
    s1.add((n % 2 == 0) ? term : -term);
  }
  Kahan s2;
  for (long n = 1; n <= n2; ++n) {
    double nn = static_cast<double>(n);
    double lg = std::log(T / (kTwoPi * nn));
    s2.add(dtable(n) / std::sqrt(nn) / (lg * lg) * std::sin(g_phase(T, n)));
  }
  Eval out;
  out.value = std::pow(2.0, -1.5) * s1.result() - s2.result();
  out.abs_err = c_rem * std::pow(T, 0.25);
  out.n_terms = params.N + n2;
  return out;
}

Eval G_series(double T, long M, const DivisorTable& dtable) {
  if (!(T > 0.0) || M < 1) throw DomainError("G_series: T > 0, M >= 1");
  if (dtable.limit < static_cast<std::uint64_t>(M))
    throw CapacityError("G_series: divisor table smaller than M");
  const double pref = std::pow(2.0, -0.25) * std::pow(kPi, -0.75) * std::pow(T, 0.75);
  Kahan sum;
  for (long n = 1; n <= M; ++n) {
    double nn = static_cast<double>(n);
    double term = dtable(n) * std::pow(nn, -1.25) *
                  std::sin(std::sqrt(8.0 * kPi * nn * T) - kPi / 4.0);
    sum.add((n % 2 == 0) ? term : -term);
  }
  Eval out;
  out.value = pref * sum.result();
  // documented heuristic bound for the absolute series tail
  double tail = 8.0 * std::pow(static_cast<double>(M), -0.25) *
                (std::log(static_cast<double>(M)) + 2.0);
  out.abs_err = pref * tail + 1e-15 * std::abs(out.value) * std::sqrt(static_cast<double>(M));
  out.n_terms = M;
  return out;
}

// ------------------------------------------------------------ moment grid

namespace {

// Closed forms of the smooth parts:
//   I1(a,b;T) = int_a^b (T-u)   (log(u/2pi) + 2 gamma) du
//   I2(a,b;T) = int_a^b (T-u)^2/2 (log(u/2pi) + 2 gamma) du
// using  int log u = u log u - u,  int u log u = u^2/2 log u - u^2/4,
//        int u^2 log u = u^3/3 log u - u^3/9; all limits vanish at 0.
double antider_log0(double u) { return u <= 0.0 ? 0.0 : u * std::log(u) - u; }
double antider_log1(double u) {
  return u <= 0.0 ? 0.0 : 0.5 * u * u * std::log(u) - 0.25 * u * u;
}
double antider_log2(double u) {
  return u <= 0.0 ? 0.0 : u * u * u * (std::log(u) / 3.0 - 1.0 / 9.0);
}

double smooth_m1(double a, double b, double T) {
  const double c = 2.0 * kEulerGamma - kLog2Pi;
  double A = antider_log0(b) - antider_log0(a);
  double B = antider_log1(b) - antider_log1(a);
  double w = 0.5 * (b - a) * (2.0 * T - a - b);  // int (T-u) du
  return T * A - B + c * w;
}

double smooth_m2(double a, double b, double T) {
  const double c = 2.0 * kEulerGamma - kLog2Pi;
  double A = antider_log0(b) - antider_log0(a);
  double B = antider_log1(b) - antider_log1(a);
  double C = antider_log2(b) - antider_log2(a);
  // (T-u)^2/2 = T^2/2 - T u + u^2/2
  double iw = ((T - a) * (T - a) * (T - a) - (T - b) * (T - b) * (T - b)) / 6.0;
  return 0.5 * T * T * A - T * B + 0.5 * C + c * iw;
}

// Gauss7/Kronrod15 nodes on [-1,1]; local copy for the fused cell sweep.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct CellMoments {
  double m0, m1, m2;        // int Z^2, int (b-u) Z^2, int (b-u)^2/2 Z^2
  double e0, e1, e2;        // |K15-G7| estimates + zeta-error contributions
};

CellMoments zsq_cell(double a, double b, const ZetaOptions& zopts) {
  const double hw = 0.5 * (b - a), mid = 0.5 * (a + b);
  double k0 = 0, k1 = 0, k2 = 0, g0 = 0, g1 = 0, g2 = 0, ze0 = 0, ze1 = 0, ze2 = 0;
  for (int j = 0; j < 15; ++j) {
    double xi = (j < 7)    ? mid - hw * kXgk[j]
                : (j == 7) ? mid
                           : mid + hw * kXgk[14 - j];
    int wi = (j < 7) ? j : (j == 7 ? 7 : 14 - j);
    Eval z = hardy_Z(xi, zopts);
    double v = z.value * z.value;
    double dv = 2.0 * std::abs(z.value) * z.abs_err;
    double w0 = b - xi;
    double w1 = 0.5 * w0 * w0;
    k0 += kWgk[wi] * v;
    k1 += kWgk[wi] * v * w0;
    k2 += kWgk[wi] * v * w1;
    ze0 += kWgk[wi] * dv;
    ze1 += kWgk[wi] * dv * w0;
    ze2 += kWgk[wi] * dv * w1;
    if (wi % 2 == 1) {
      g0 += kWg[wi / 2] * v;
      g1 += kWg[wi / 2] * v * w0;
      g2 += kWg[wi / 2] * v * w1;
    }
  }
  CellMoments cm;
  cm.m0 = k0 * hw;
  cm.m1 = k1 * hw;
  cm.m2 = k2 * hw;
  cm.e0 = std::abs(k0 - g0) * hw + ze0 * hw;
  cm.e1 = std::abs(k1 - g1) * hw + ze1 * hw;
  cm.e2 = std::abs(k2 - g2) * hw + ze2 * hw;
  return cm;
}

}  // namespace

ZetaOptions MeanSquareGrid::grid_zeta_options() {
  ZetaOptions z;
  z.method = ZetaMethod::kAuto;
  z.t_switch = 400.0;  // Euler-Maclaurin is cheap here and keeps cell error ~1e-12
  z.rs_correction_order = 4;
  return z;
}

MeanSquareGrid::MeanSquareGrid(double step, ZetaOptions zopts, int threads)
    : step_(step), zopts_(zopts), threads_(threads) {
  zsq_ = {0.0};
  m1_ = {0.0};
  m2_ = {0.0};
  zsq_err_ = {0.0};
  m1_err_ = {0.0};
  m2_err_ = {0.0};
  rebuild_derived();
}

void MeanSquareGrid::ensure(double T) {
  if (!(T >= 0.0)) throw DomainError("MeanSquareGrid::ensure: T >= 0");
  if (T <= x_end()) return;
  // round the target up in chunks so repeated small extensions stay cheap
  double target = std::max(T * 1.05, x_end() + 64.0 * step_);
  std::size_t first = cells();
  auto n_new = static_cast<std::size_t>(std::ceil((target - x_end()) / step_));
  std::vector<CellMoments> cm(n_new);
  parallel_for(n_new, threads_, [&](std::size_t k) {
    double a = step_ * static_cast<double>(first + k);
    double b = a + step_;
    cm[k] = zsq_cell(a, b, zopts_);
  });
  for (const auto& c : cm) {
    zsq_.push_back(zsq_.back() + c.m0);
    m1_.push_back(m1_.back() + c.m1);
    m2_.push_back(m2_.back() + c.m2);
    zsq_err_.push_back(c.e0);
    m1_err_.push_back(c.e1);
    m2_err_.push_back(c.e2);
  }
  rebuild_derived();
}

void MeanSquareGrid::rebuild_derived() {
  // prefix_E[i] = int_0^{x_i} E;  cell integral = E(x_i) h + m1-cell - smooth
  // prefix_G[i] = int_0^{x_i} G;  cell integral = G(x_i) h + (E(x_i)-pi) h^2/2
  //                                + m2-cell - smooth
  std::size_t n = cells();
  prefix_E_.assign(n + 1, 0.0);
  prefix_G_.assign(n + 1, 0.0);
  Kahan accE, accG;
  for (std::size_t i = 0; i < n; ++i) {
    double a = node_x(i), b = node_x(i + 1);
    double h = b - a;
    double Ei = zsq_[i] - main_term(a);
    double Gi = prefix_E_[i] - kPi * a;
    double m1cell = m1_[i + 1] - m1_[i];
    double m2cell = m2_[i + 1] - m2_[i];
    accE.add(Ei * h + m1cell - smooth_m1(a, b, b));
    prefix_E_[i + 1] = accE.result();
    accG.add(Gi * h + (Ei - kPi) * 0.5 * h * h + m2cell - smooth_m2(a, b, b));
    prefix_G_[i + 1] = accG.result();
  }
}

double MeanSquareGrid::node_E(std::size_t i) const {
  return zsq_[i] - main_term(node_x(i));
}

double MeanSquareGrid::node_G(std::size_t i) const {
  return prefix_E_[i] - kPi * node_x(i);
}

void MeanSquareGrid::partial_moments(double a, double b, double* m0, double* m1,
                                     double* m2, double* err) const {
  if (b <= a + 1e-13 * (1.0 + a)) {
    *m0 = *m1 = *m2 = *err = 0.0;
    return;
  }
  CellMoments cm = zsq_cell(a, b, zopts_);
  // one bisection for an error estimate on the partial cell
  double mid = 0.5 * (a + b);
  CellMoments cl = zsq_cell(a, mid, zopts_);
  CellMoments cr = zsq_cell(mid, b, zopts_);
  // halves carry weights relative to their own right ends; recenter to b
  double h2 = b - mid;
  double m1_ref = cl.m1 + h2 * cl.m0 + cr.m1;
  double m2_ref = cl.m2 + h2 * cl.m1 + 0.5 * h2 * h2 * cl.m0 + cr.m2;
  *m0 = cl.m0 + cr.m0;
  *m1 = m1_ref;
  *m2 = m2_ref;
  *err = std::abs(cl.m0 + cr.m0 - cm.m0) + std::abs(m1_ref - cm.m1) +
         std::abs(m2_ref - cm.m2) + cl.e0 + cr.e0 + cl.e1 + cr.e1 + cl.e2 + cr.e2;
}

Eval MeanSquareGrid::zsq_prefix(double T) const {
  if (T < 0.0 || T > x_end() + 1e-9)
    throw GridCoverageError("MeanSquareGrid: T outside grid (call ensure)");
  T = std::min(T, x_end());
  auto i = std::min(static_cast<std::size_t>(T / step_), cells());
  double a = node_x(i);
  Eval out;
  out.value = zsq_[i];
  Kahan e;
  for (std::size_t k = 1; k <= i; ++k) e.add(zsq_err_[k]);
  out.abs_err = e.result();
  if (T > a) {
    double m0, m1, m2, err;
    partial_moments(a, T, &m0, &m1, &m2, &err);
    out.value += m0;
    out.abs_err += err;
    out.n_evals = 45;
  }
  return out;
}

Eval MeanSquareGrid::E(double T) const {
  if (T == 0.0) return {0.0, 0.0, 0, 0};
  Eval p = zsq_prefix(T);
  p.value -= main_term(T);
  p.abs_err += 2.2e-16 * std::abs(main_term(T));
  return p;
}

Eval MeanSquareGrid::G(double T) const {
  if (T == 0.0) return {0.0, 0.0, 0, 0};
  if (T > x_end() + 1e-9)
    throw GridCoverageError("MeanSquareGrid: T outside grid (call ensure)");
  auto i = std::min(static_cast<std::size_t>(T / step_), cells());
  double a = node_x(i);
  Eval out;
  out.value = prefix_E_[i];
  Kahan e;
  for (std::size_t k = 1; k <= i; ++k) e.add(zsq_err_[k] + m1_err_[k]);
  out.abs_err = e.result();
  if (T > a) {
    double m0, m1, m2, err;
    partial_moments(a, T, &m0, &m1, &m2, &err);
    // int_a^T E = E(a)(T-a) + int (T-u) E'(u) du
    out.value += node_E(i) * (T - a) + m1 - smooth_m1(a, T, T);
    out.abs_err += err;
  }
  out.value -= kPi * T;
  return out;
}

Eval MeanSquareGrid::G1(double T) const {
  if (T == 0.0) return {0.0, 0.0, 0, 0};
  if (T > x_end() + 1e-9)
    throw GridCoverageError("MeanSquareGrid: T outside grid (call ensure)");
  auto i = std::min(static_cast<std::size_t>(T / step_), cells());
  double a = node_x(i);
  Eval out;
  out.value = prefix_G_[i];
  Kahan e;
  for (std::size_t k = 1; k <= i; ++k)
    e.add(zsq_err_[k] + m1_err_[k] + m2_err_[k]);
  out.abs_err = e.result();
  if (T > a) {
    double d = T - a;
    double m0, m1, m2, err;
    partial_moments(a, T, &m0, &m1, &m2, &err);
    out.value += node_G(i) * d + (node_E(i) - kPi) * 0.5 * d * d + m2 -
                 smooth_m2(a, T, T);
    out.abs_err += err;
  }
  return out;
}

EZeroRecord MeanSquareGrid::find_E_zero(double T, double C) {
  if (!(C >= 1.0)) throw DomainError("find_E_zero: C >= 1 required");
  double hi_end = T + C * std::sqrt(T);
  ensure(hi_end);
  Eval ea = E(T);
  EZeroRecord rec;
  rec.T_anchor = T;
  rec.C = C;
  if (ea.value == 0.0) {
    rec.x_lo = rec.x_hi = rec.x_star = T;
    rec.residual = 0.0;
    return rec;
  }
  // scan grid nodes first (cheap), falling back to the anchor cell
  double lo = T, hi = 0.0;
  double e_lo = ea.value;
  bool found = false;
  std::size_t i0 = static_cast<std::size_t>(std::ceil(T / step_));
  for (std::size_t i = i0; node_x(i) <= hi_end && i <= cells(); ++i) {
    double ev = node_E(i);
    if ((e_lo < 0.0) != (ev < 0.0)) {
      hi = node_x(i);
      found = true;
      break;
    }
    lo = node_x(i);
    e_lo = ev;
  }
  if (!found) throw NoSignChangeError("find_E_zero: no sign change in [T, T+C*sqrt(T)]");
  // bisect to width 1e-8
  double e_hi = E(hi).value;
  double a = lo, b = hi, fa = e_lo, fb = e_hi;
  while (b - a > 1e-8) {
    double m = 0.5 * (a + b);
    double fm = E(m).value;
    if (fm == 0.0) {
      a = b = m;
      fa = fb = 0.0;
      break;
    }
    if ((fa < 0.0) != (fm < 0.0)) {
      b = m;
      fb = fm;
    } else {
      a = m;
      fa = fm;
    }
  }
  // one secant polish inside the bracket
  double x_star = (fb != fa) ? a - fa * (b - a) / (fb - fa) : 0.5 * (a + b);
  x_star = std::clamp(x_star, a, b);
  rec.x_lo = a;
  rec.x_hi = b;
  rec.x_star = x_star;
  rec.residual = std::abs(E(x_star).value);
  return rec;
}

void MeanSquareGrid::save_cache(const std::string& dir) const {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  auto dump = [&](const std::string& name, const std::vector<double>& prefix,
                  const std::vector<double>& err) {
    std::FILE* fp = std::fopen((dir + "/" + name).c_str(), "wb");
    if (!fp) throw Error("cannot write grid cache in " + dir);
    std::fputs("x,prefix,err\n", fp);
    for (std::size_t i = 0; i < prefix.size(); ++i)
      std::fprintf(fp, "%.17g,%.17g,%.17g\n", node_x(i), prefix[i], err[i]);
    std::fclose(fp);
  };
  dump("zsq.csv", zsq_, zsq_err_);
  dump("m1.csv", m1_, m1_err_);
  dump("m2.csv", m2_, m2_err_);
}

bool MeanSquareGrid::load_cache(const std::string& dir) {
  auto slurp = [&](const std::string& name, std::vector<double>* prefix,
                   std::vector<double>* err, double* step) {
    std::ifstream in(dir + "/" + name);
    if (!in) return false;
    std::string line;
    if (!std::getline(in, line) || line != "x,prefix,err") return false;
    std::vector<double> xs, ps, es;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      double x, p, e;
      if (std::sscanf(line.c_str(), "%lg,%lg,%lg", &x, &p, &e) != 3) return false;
      xs.push_back(x);
      ps.push_back(p);
      es.push_back(e);
    }
    if (xs.size() < 2 || xs[0] != 0.0) return false;
    *step = xs[1] - xs[0];
    *prefix = std::move(ps);
    *err = std::move(es);
    return true;
  };
  double s0 = 0, s1 = 0, s2 = 0;
  std::vector<double> z, m1, m2, ze, m1e, m2e;
  if (!slurp("zsq.csv", &z, &ze, &s0) || !slurp("m1.csv", &m1, &m1e, &s1) ||
      !slurp("m2.csv", &m2, &m2e, &s2))
    return false;
  if (std::abs(s0 - step_) > 1e-12 || std::abs(s1 - step_) > 1e-12 ||
      std::abs(s2 - step_) > 1e-12)
    return false;
  if (z.size() != m1.size() || z.size() != m2.size()) return false;
  zsq_ = std::move(z);
  m1_ = std::move(m1);
  m2_ = std::move(m2);
  zsq_err_ = std::move(ze);
  m1_err_ = std::move(m1e);
  m2_err_ = std::move(m2e);
  rebuild_derived();
  return true;
}

// ------------------------------------------------------------ E-zero cache

EZeroCache::EZeroCache(std::string path) : path_(std::move(path)) {
  if (path_.empty()) return;
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  if (!std::getline(in, line) || line != "T_anchor,C,x_star,residual") return;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    EZeroRecord r;
    if (std::sscanf(line.c_str(), "%lg,%lg,%lg,%lg", &r.T_anchor, &r.C, &r.x_star,
                    &r.residual) == 4)
      records_.push_back(r);
  }
}

std::optional<EZeroRecord> EZeroCache::find_near(double x, double window) const {
  const EZeroRecord* best = nullptr;
  for (const auto& r : records_)
    if (std::abs(r.x_star - x) <= window &&
        (!best || std::abs(r.x_star - x) < std::abs(best->x_star - x)))
      best = &r;
  if (!best) return std::nullopt;
  return *best;
}

void EZeroCache::append(const EZeroRecord& rec) {
  records_.push_back(rec);
  if (path_.empty()) return;
  bool fresh = !std::filesystem::exists(path_);
  std::FILE* fp = std::fopen(path_.c_str(), "ab");
  if (!fp) return;  // cache is best-effort
  if (fresh) std::fputs("T_anchor,C,x_star,residual\n", fp);
  std::fprintf(fp, "%.17g,%.17g,%.17g,%.17g\n", rec.T_anchor, rec.C, rec.x_star,
               rec.residual);
  std::fclose(fp);
}

}  // namespace mz
