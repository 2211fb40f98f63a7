#include "mz/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mz/config.hpp"

namespace mz {

double zsq_osc_rate(double x) {
  // |d/dx 2 theta(x)| = |log(x/2pi)|, floored for the smooth region near 0
  return std::max(0.5, std::log(std::max(x, 1.0) / kTwoPi));
}

namespace {

// Closed-form tail bound for int_a^inf Z^2 e^{-sigma x} dx:
//   smooth part      <= e^{-sa} [ (log(a/2pi)+2gamma)/s + 1/(s^2 a) ]
//   E-wiggle part    <= e^{-sa} c_E a^{0.3} (2 + 0.6/(s a) * 2)
double l1_tail_bound(double a, double sigma) {
  if (a <= kTwoPi) return 1e300;  // never used below the smooth region
  double e = std::exp(-sigma * a);
  double smooth = e * ((std::log(a / kTwoPi) + 2.0 * kEulerGamma) / sigma +
                       1.0 / (sigma * sigma * a));
  double wiggle = e * calib::kCE * std::pow(a, calib::kCEExponent) *
                  (2.0 + 1.2 / (sigma * a));
  return smooth + wiggle;
}

}  // namespace

Eval L1(double sigma, const QuadSpec& spec, double tail_c) {
  if (!(sigma > 0.0)) throw DomainError("L1: sigma > 0 required");
  const double X_c = (tail_c + 2.0 * std::log(1.0 / sigma)) / sigma;
  ZetaOptions zopts;  // auto: Euler-Maclaurin low, Riemann-Siegel high
  auto f = [&](double x) {
    Eval z = hardy_Z(x, zopts);
    return z.value * z.value * std::exp(-sigma * x);
  };
  Eval out;
  KahanC acc;  // real part used; imag stays 0
  Kahan err;
  long evals = 0, panels = 0;
  double lo = 0.0;
  double abs_budget = std::max(spec.abs_tol, 1e-14);
  while (lo < X_c) {
    double hi = std::min(X_c, std::max(2.0 * lo, lo + 8.0));
    // stop early once the remaining tail is provably below the budget
    if (lo > 64.0 && l1_tail_bound(lo, sigma) < 0.05 * abs_budget) {
      err.add(l1_tail_bound(lo, sigma));
      lo = X_c;
      break;
    }
    QuadSpec bs = spec;
    bs.osc_freq_hint = zsq_osc_rate(hi);
    bs.abs_tol = abs_budget * std::max(0.05, (hi - lo) / X_c);
    Eval blk = integrate(f, lo, hi, bs);
    acc.add(Complex{blk.value, 0.0});
    err.add(blk.abs_err);
    evals += blk.n_evals;
    panels += blk.n_terms;
    lo = hi;
  }
  // closed-form bound for the tail beyond the cutoff
  err.add(l1_tail_bound(std::max(lo, X_c), sigma));
  out.value = acc.result().real();
  out.abs_err = err.result();
  out.n_terms = panels;
  out.n_evals = evals;
  return out;
}

Eval L1_bar(double x, const QuadSpec& spec, double tail_c) {
  if (!(x > 0.0)) throw DomainError("L1_bar: x > 0 required");
  Eval whole = L1(x, spec, tail_c);
  ZetaOptions zopts;
  auto f = [&](double y) {
    Eval z = hardy_Z(y, zopts);
    return z.value * z.value * std::exp(-x * y);
  };
  Eval head = integrate(f, 0.0, 1.0, spec);
  Eval out;
  out.value = whole.value - head.value;
  out.abs_err = whole.abs_err + head.abs_err;
  out.n_terms = whole.n_terms + head.n_terms;
  out.n_evals = whole.n_evals + head.n_evals;
  return out;
}

CoeffTable a_coeffs(int N) {
  if (N < 0 || N > 20) throw DomainError("a_coeffs: 0 <= N <= 20");
  // 2 sin(1/(2T)) = T^{-1} sum_k d_k v^k with v = T^{-2},
  // d_k = (-1)^k 4^{-k} / (2k+1)!; the a_n are the inverse series.
  std::vector<Rational> d(N + 1);
  Rational fact = 1;  // (2k+1)!
  Rational pow4 = 1;  // 4^k
  for (int k = 0; k <= N; ++k) {
    if (k > 0) {
      fact *= (2 * k) * (2 * k + 1);
      pow4 *= 4;
    }
    d[k] = Rational(1) / (pow4 * fact);
    if (k % 2 == 1) d[k] = -d[k];
  }
  CoeffTable t;
  t.a.resize(N + 1);
  t.a[0] = 1;
  for (int m = 1; m <= N; ++m) {
    Rational s = 0;
    for (int j = 0; j < m; ++j) s += d[m - j] * t.a[j];
    t.a[m] = -s;
  }
  t.b = {kPi};
  return t;
}

Eval kober_residual(double T, const QuadSpec& spec) {
  if (!(T >= 10.0)) throw DomainError("kober_residual: T >= 10 required");
  Eval l = L1(1.0 / T, spec);
  l.value -= T * (std::log(T / kTwoPi) + kEulerGamma);
  l.abs_err += 2.2e-16 * T * (std::abs(std::log(T / kTwoPi)) + 1.0);
  return l;
}

namespace {

// Symmetric eigenvalues by cyclic Jacobi (tiny matrices only).
std::vector<double> sym_eigenvalues(std::vector<std::vector<double>> m) {
  const std::size_t n = m.size();
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += m[p][q] * m[p][q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(m[p][q]) < 1e-300) continue;
        double theta = 0.5 * (m[q][q] - m[p][p]) / m[p][q];
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          double mkp = m[k][p], mkq = m[k][q];
          m[k][p] = c * mkp - s * mkq;
          m[k][q] = s * mkp + c * mkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double mpk = m[p][k], mqk = m[q][k];
          m[p][k] = c * mpk - s * mqk;
          m[q][k] = s * mpk + c * mqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = m[i][i];
  return ev;
}

}  // namespace

CoeffTable fit_b(int N, std::vector<double> T_samples, const QuadSpec& spec) {
  if (N < 0) throw DomainError("fit_b: N >= 0");
  if (static_cast<int>(T_samples.size()) < 2 * N + 3)
    throw DomainError("fit_b: need at least 2N+3 samples");
  for (double T : T_samples)
    if (!(T >= 50.0)) throw DomainError("fit_b: samples must be >= 50");
  std::sort(T_samples.begin(), T_samples.end());  // determinism

  CoeffTable t = a_coeffs(std::max(N, 3));
  // residuals of the expansion with exact a_n and b_0 = pi
  std::vector<double> r(T_samples.size());
  for (std::size_t i = 0; i < T_samples.size(); ++i) {
    double T = T_samples[i];
    Eval l = L1(1.0 / T, spec);
    Kahan model;
    double lead = std::log(T / kTwoPi) + kEulerGamma;
    for (std::size_t n = 0; n < t.a.size(); ++n)
      model.add(lead * t.a[n].convert_to<double>() *
                std::pow(T, 1.0 - 2.0 * static_cast<double>(n)));
    model.add(kPi);
    r[i] = l.value - model.result();
  }
  t.n_fitted = N;
  if (N == 0) {
    double m = 0.0;
    for (double v : r) m = std::max(m, std::abs(v));
    t.fit_residual = m;
    return t;
  }
  // normal equations for basis T^{-2n}, n = 1..N
  std::vector<std::vector<double>> ata(N, std::vector<double>(N, 0.0));
  std::vector<double> atb(N, 0.0);
  for (std::size_t i = 0; i < T_samples.size(); ++i) {
    double T = T_samples[i];
    std::vector<double> row(N);
    for (int n = 1; n <= N; ++n) row[n - 1] = std::pow(T, -2.0 * n);
    for (int p = 0; p < N; ++p) {
      atb[p] += row[p] * r[i];
      for (int q = 0; q < N; ++q) ata[p][q] += row[p] * row[q];
    }
  }
  auto ev = sym_eigenvalues(ata);
  double lmax = 0.0, lmin = 1e300;
  for (double v : ev) {
    lmax = std::max(lmax, std::abs(v));
    lmin = std::min(lmin, std::abs(v));
  }
  if (lmin <= 0.0 || std::sqrt(lmax / lmin) > 1e10)
    throw IllConditionedError("fit_b: design matrix condition number exceeds 1e10");
  // Gaussian elimination with partial pivoting
  std::vector<std::vector<double>> a = ata;
  std::vector<double> x = atb;
  for (int col = 0; col < N; ++col) {
    int piv = col;
    for (int rr = col + 1; rr < N; ++rr)
      if (std::abs(a[rr][col]) > std::abs(a[piv][col])) piv = rr;
    std::swap(a[col], a[piv]);
    std::swap(x[col], x[piv]);
    for (int rr = col + 1; rr < N; ++rr) {
      double f = a[rr][col] / a[col][col];
      for (int cc = col; cc < N; ++cc) a[rr][cc] -= f * a[col][cc];
      x[rr] -= f * x[col];
    }
  }
  std::vector<double> b(N);
  for (int rr = N - 1; rr >= 0; --rr) {
    double s = x[rr];
    for (int cc = rr + 1; cc < N; ++cc) s -= a[rr][cc] * b[cc];
    b[rr] = s / a[rr][rr];
  }
  t.b.resize(N + 1);
  t.b[0] = kPi;
  for (int n = 1; n <= N; ++n) t.b[n] = b[n - 1];
  double worst = 0.0;
  for (std::size_t i = 0; i < T_samples.size(); ++i) {
    double T = T_samples[i];
    double fit = 0.0;
    for (int n = 1; n <= N; ++n) fit += t.b[n] * std::pow(T, -2.0 * n);
    worst = std::max(worst, std::abs(r[i] - fit));
  }
  t.fit_residual = worst;
  return t;
}

std::string CoeffTable::to_json() const {
  std::ostringstream os;
  os << "{\"a\":[";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) os << ",";
    os << "{\"num\":\"" << boost::multiprecision::numerator(a[i])
       << "\",\"den\":\"" << boost::multiprecision::denominator(a[i]) << "\"}";
  }
  os << "],\"b\":[";
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i) os << ",";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", b[i]);
    os << buf;
  }
  os << "],\"fit_residual\":";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", fit_residual);
  os << buf << ",\"provenance\":{\"a\":\"exact\",\"b0\":\"exact\",\"b>0\":\"fitted\"}}";
  return os.str();
}

}  // namespace mz
