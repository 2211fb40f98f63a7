#include "mz/zeta.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "zeta_rs_coeffs.inc"

namespace mz {

namespace {

// B_{2k} for k = 1..15.
constexpr double kBernoulli2k[15] = {
    1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0, 43867.0 / 798.0,
    -174611.0 / 330.0, 854513.0 / 138.0, -236364091.0 / 2730.0,
    8553103.0 / 6.0, -23749461029.0 / 870.0, 8615841276005.0 / 14322.0};

// Stirling coefficients B_{2k} / (2k (2k-1)) for k = 1..12.
constexpr double kStirling[12] = {
    1.0 / 12.0, -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0, 1.0 / 1188.0,
    -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0, 43867.0 / 244188.0,
    -174611.0 / 125400.0, 77683.0 / 5796.0, -236364091.0 / 1506960.0};

constexpr double kHalfLog2Pi = 0.91893853320467274178;  // log(2 pi)/2
constexpr double kLogPi = 1.1447298858494001741;

// Declared-error guards for the Riemann-Siegel correction orders, slightly
// above the worst observed deviation from the arbitrary-precision oracle
// (see tools/gen_rs_tables.py validation output).
constexpr double kRsKappa[5] = {0.13, 0.056, 0.013, 0.032, 0.017};

// log n and 1/sqrt(n) for the Riemann-Siegel main sum.
struct MainSumTables {
  std::vector<double> log_n;
  std::vector<double> rsqrt_n;
  MainSumTables() {
    constexpr std::size_t n = 4200;  // covers t up to ~1.1e8
    log_n.resize(n + 1);
    rsqrt_n.resize(n + 1);
    for (std::size_t i = 1; i <= n; ++i) {
      log_n[i] = std::log(static_cast<double>(i));
      rsqrt_n[i] = 1.0 / std::sqrt(static_cast<double>(i));
    }
  }
};
const MainSumTables& main_sum_tables() {
  static const MainSumTables tables;
  return tables;
}

Complex stirling_log_gamma(Complex s) {
  // requires Re s >= 10 (after shifting)
  Complex ls = std::log(s);
  Complex acc = (s - 0.5) * ls - s + kHalfLog2Pi;
  Complex inv = 1.0 / s;
  Complex inv2 = inv * inv;
  Complex p = inv;
  for (double c : kStirling) {
    acc += c * p;
    p *= inv2;
  }
  return acc;
}

}  // namespace

double rs_error_model(double t, int order) {
  order = std::clamp(order, 0, 4);
  return kRsKappa[order] * std::pow(t, -(2.0 * order + 3.0) / 4.0);
}

EvalC log_gamma(Complex s) {
  const double re = s.real(), im = s.imag();
  if (im == 0.0 && re <= 0.0 && std::abs(re - std::round(re)) <= 1e-12)
    throw PoleError("log_gamma: pole at non-positive integer");
  // Shift until Re >= 10 so the Stirling tail is far below 1e-13.
  Complex shifted = s;
  Complex log_shift = 0.0;
  int shifts = 0;
  while (shifted.real() < 10.0) {
    if (std::abs(shifted) < 1e-290)
      throw PoleError("log_gamma: argument too close to a pole");
    log_shift += std::log(shifted);
    shifted += 1.0;
    ++shifts;
  }
  EvalC out;
  out.value = stirling_log_gamma(shifted) - log_shift;
  out.n_terms = shifts + 12;
  // Stirling truncation at k=12 plus accumulated rounding of the shifts.
  double mag = std::abs(out.value) + std::abs(log_shift);
  out.abs_err = 3e-15 * std::pow(std::abs(shifted), -23.0) +
                (shifts + 4) * 2.2e-16 * std::max(1.0, mag);
  return out;
}

Eval rs_theta_exact(double t) {
  double at = std::abs(t);
  EvalC lg = log_gamma(Complex{0.25, 0.5 * at});
  Eval out;
  out.value = lg.value.imag() - 0.5 * at * kLogPi;
  out.abs_err = lg.abs_err + 2.2e-16 * std::abs(0.5 * at * kLogPi);
  out.n_terms = lg.n_terms;
  if (t < 0.0) out.value = -out.value;
  return out;
}

Eval rs_theta(double t) {
  double at = std::abs(t);
  if (at < 20.0) return rs_theta_exact(t);
  // theta(t) ~ (t/2)(log(t/2pi) - 1) - pi/8 + 1/(48t) + 7/(5760 t^3)
  //            + 31/(80640 t^5); next term ~ 127/(430080 t^7).
  // The main term is evaluated in extended precision: its rounding shifts
  // every cosine argument of the Riemann-Siegel main sum.
  const long double pi_l = 3.14159265358979323846264338328L;
  long double tl = at;
  long double main = 0.5L * tl * (logl(tl / (2.0L * pi_l)) - 1.0L);
  double inv = 1.0 / at;
  double inv2 = inv * inv;
  double corr = inv * (1.0 / 48.0 + inv2 * (7.0 / 5760.0 + inv2 * (31.0 / 80640.0)));
  long double val = main - pi_l / 8.0L + static_cast<long double>(corr);
  Eval out;
  out.value = static_cast<double>(val);
  double trunc = 127.0 / 430080.0 * inv2 * inv2 * inv2 * inv;
  out.abs_err = trunc + 1.2e-16 * std::abs(out.value) + 1e-18 * at;
  out.n_terms = 3;
  if (t < 0.0) out.value = -out.value;
  return out;
}

EvalC zeta_em(Complex s, int min_terms) {
  const double sigma = s.real(), t = s.imag();
  if (!(sigma > 0.0)) throw DomainError("zeta_em: requires Re s > 0");
  if (std::abs(s - Complex{1.0, 0.0}) < 1e-12)
    throw PoleError("zeta_em: pole at s = 1");
  long n_sum = std::max<long>({min_terms, 16,
                               static_cast<long>(std::ceil(1.25 * std::abs(t))) + 12});
  KahanC sum;
  for (long n = 1; n < n_sum; ++n) {
    double ln = std::log(static_cast<double>(n));
    double amp = std::exp(-sigma * ln);
    double ph = -t * ln;
    sum.add(Complex{amp * std::cos(ph), amp * std::sin(ph)});
  }
  double lN = std::log(static_cast<double>(n_sum));
  Complex Npow_1ms = std::exp((1.0 - s) * lN);  // N^{1-s}
  Complex Npow_ms = Npow_1ms / static_cast<double>(n_sum);
  Complex acc = sum.result() + Npow_1ms / (s - 1.0) + 0.5 * Npow_ms;
  // Bernoulli tail: T_k = B_{2k}/(2k)! * N^{1-s-2k} * prod_{j=0}^{2k-2}(s+j)
  Complex terms[15];
  {
    Complex poch = s;  // running product (s)(s+1)...(s+2k-2)
    double fact = 2.0;
    Complex npow = Npow_ms / static_cast<double>(n_sum);  // N^{-s-1}
    for (int k = 1; k <= 15; ++k) {
      terms[k - 1] = kBernoulli2k[k - 1] / fact * npow * poch;
      poch *= (s + Complex(2.0 * k - 1.0, 0.0)) * (s + Complex(2.0 * k, 0.0));
      fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
      npow /= static_cast<double>(n_sum) * static_cast<double>(n_sum);
    }
  }
  int k_used = 0;
  for (int k = 1; k <= 14; ++k) {
    acc += terms[k - 1];
    k_used = k;
    if (std::abs(terms[k - 1]) < 1e-18 * std::abs(acc)) break;
  }
  EvalC out;
  out.value = acc;
  // Standard remainder bound: first omitted term times |s+2K+1|/(sigma+2K+1).
  double guard = std::abs(s + Complex(2.0 * k_used + 1.0, 0.0)) /
                 (sigma + 2.0 * k_used + 1.0);
  out.abs_err = std::abs(terms[k_used]) * guard +
                2.2e-16 * static_cast<double>(n_sum) +
                4.4e-16 * std::abs(acc);
  out.n_terms = n_sum;
  out.n_evals = n_sum + k_used;
  return out;
}

namespace {

double rs_hardy_z(double t, int order, double* declared_err, long* n_terms) {
  const auto& tab = main_sum_tables();
  double a = std::sqrt(t / kTwoPi);
  long N = static_cast<long>(a);
  if (N < 1) throw DomainError("riemann_siegel: t below 2*pi");
  if (N >= static_cast<long>(tab.log_n.size()))
    throw CapacityError("riemann_siegel: t beyond main-sum table");
  double p = a - static_cast<double>(N);
  Eval th = rs_theta(t);
  Kahan sum;
  for (long n = 1; n <= N; ++n)
    sum.add(tab.rsqrt_n[n] * std::cos(th.value - t * tab.log_n[n]));
  double main = 2.0 * sum.result();

  int ci = static_cast<int>(std::lround(p * 4.0));
  ci = std::clamp(ci, 0, rs_tables::kNumCenters - 1);
  double h = p - rs_tables::kCenters[ci];
  auto horner = [&](const double (&c)[rs_tables::kNumCenters][rs_tables::kOrder]) {
    double acc = 0.0;
    for (int m = rs_tables::kOrder - 1; m >= 0; --m) acc = acc * h + c[ci][m];
    return acc;
  };
  double inv_a = 1.0 / a;
  double corr = horner(rs_tables::kC0);
  if (order >= 1) corr += horner(rs_tables::kC1) * inv_a;
  if (order >= 2) corr += horner(rs_tables::kC2) * inv_a * inv_a;
  if (order >= 3) corr += horner(rs_tables::kC3) * inv_a * inv_a * inv_a;
  if (order >= 4) corr += horner(rs_tables::kC4) * inv_a * inv_a * inv_a * inv_a;
  double sign = (N % 2 == 0) ? -1.0 : 1.0;  // (-1)^{N-1}
  double z = main + sign * corr / std::sqrt(a);
  // theta error and the rounding of the arguments theta - t log n shift
  // every cosine: |dZ| <= 2 sum n^{-1/2} |darg|.
  double sqrtN = std::sqrt(static_cast<double>(N));
  double arg_round = 1.1e-16 * (std::abs(th.value) + t * tab.log_n[N]);
  *declared_err = rs_error_model(t, order) +
                  4.0 * sqrtN * (th.abs_err + arg_round) +
                  2.2e-16 * (std::abs(main) + 2.0 * sqrtN);
  *n_terms = N;
  return z;
}

}  // namespace

Eval hardy_Z(double t, const ZetaOptions& opts) {
  double at = std::abs(t);
  ZetaMethod m = opts.method;
  if (m == ZetaMethod::kAuto)
    m = (at < opts.t_switch) ? ZetaMethod::kEulerMaclaurin
                             : ZetaMethod::kRiemannSiegel;
  Eval out;
  if (m == ZetaMethod::kEulerMaclaurin) {
    EvalC zv = zeta_em(Complex{0.5, at}, opts.em_terms);
    Eval th = rs_theta(at);
    Complex z = std::exp(Complex{0.0, th.value}) * zv.value;
    out.value = z.real();
    out.abs_err = zv.abs_err + std::abs(zv.value) * th.abs_err + std::abs(z.imag());
    out.n_terms = zv.n_terms;
    out.n_evals = zv.n_evals;
  } else {
    double err = 0.0;
    long terms = 0;
    out.value = rs_hardy_z(at, std::clamp(opts.rs_correction_order, 0, 4), &err, &terms);
    out.abs_err = err;
    out.n_terms = terms;
    out.n_evals = terms;
  }
  if (opts.target_abs_err > 0.0 && out.abs_err > opts.target_abs_err)
    throw AccuracyError("hardy_Z: declared error above requested target");
  return out;
}

EvalC zeta_half(double t, const ZetaOptions& opts) {
  double at = std::abs(t);
  Eval z = hardy_Z(at, opts);
  Eval th = rs_theta(at);
  EvalC out;
  out.value = z.value * std::exp(Complex{0.0, -th.value});
  out.abs_err = z.abs_err + std::abs(z.value) * th.abs_err;
  out.n_terms = z.n_terms;
  out.n_evals = z.n_evals;
  if (t < 0.0) out.value = std::conj(out.value);
  return out;
}

}  // namespace mz
