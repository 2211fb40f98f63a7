#include "mz/mellin.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "mz/config.hpp"
#include "mz/laplace.hpp"

namespace mz {

namespace {

constexpr double kSeriesPrefactor = 0.35619416418397583;  // 2^{-1/4} pi^{-3/4}

ZetaOptions mellin_zeta_options() {
  ZetaOptions z;
  z.t_switch = 35.0;  // Riemann-Siegel is accurate enough inside integrals
  return z;
}

// Overestimate of int_a^b 2|Z| err_Z(x) x^{-sigma} dx: pointwise zeta errors
// accumulated through the Mellin integrand (no cancellation credit).
double zsq_point_err_integral(double sigma, double a, double b) {
  if (b <= a) return 0.0;
  const ZetaOptions z = mellin_zeta_options();
  double total = 0.0;
  double lo = a;
  const int segs = 24;
  double ratio = std::pow(b / std::max(a, 1.0), 1.0 / segs);
  ratio = std::max(ratio, 1.0 + 1e-9);
  while (lo < b) {
    double hi = std::min(b, std::max(lo * ratio, lo + 0.5));
    double errz = (lo < z.t_switch) ? 1e-12 : rs_error_model(lo, 4);
    double envelope = 2.0 * std::sqrt(std::max(std::log(hi), 1.0));
    total += envelope * errz * std::pow(lo, -sigma) * (hi - lo);
    lo = hi;
  }
  return 1.5 * total;
}

Complex cpow(double x, Complex e) { return std::exp(e * std::log(x)); }

// int_U^V u^beta sin(a u + phi) du by three integrations by parts; remainder
// bound returned through *err.  Requires |beta| << a U.
Complex osc_power_ibp(Complex beta, double a, double phi, double U, double V,
                      double* err) {
  auto F = [&](double u) {
    double cu = std::cos(a * u + phi), su = std::sin(a * u + phi);
    Complex ub = cpow(u, beta);
    return -ub * cu / a + beta * ub / u * su / (a * a) +
           beta * (beta - 1.0) * ub / (u * u) * cu / (a * a * a);
  };
  double rb = beta.real();
  double mag3 = std::abs(beta * (beta - 1.0) * (beta - 2.0));
  *err = mag3 / (a * a * a) * std::pow(U, rb - 2.0) / (2.0 - rb);
  return F(V) - F(U);
}

}  // namespace

Z1Evaluator::Z1Evaluator(Z1Config cfg, const std::string& cache_dir)
    : cfg_(std::move(cfg)),
      cache_dir_(cache_dir),
      grid_(0.25, MeanSquareGrid::grid_zeta_options(), cfg_.threads),
      zeros_(cache_dir.empty() ? "" : cache_dir + "/ezeros.csv") {
  if (!cache_dir_.empty()) {
    std::filesystem::create_directories(cache_dir_);
    grid_.load_cache(cache_dir_);
  }
}

Z1Evaluator::~Z1Evaluator() = default;

void Z1Evaluator::save_caches() {
  if (!cache_dir_.empty()) grid_.save_cache(cache_dir_);
}

const DivisorTable& Z1Evaluator::dtable(std::uint64_t need) {
  std::lock_guard<std::mutex> lk(resolve_mtx_);
  if (dtab_.limit < need) {
    std::string path = cache_dir_.empty() ? "" : cache_dir_ + "/divisors.bin";
    dtab_ = divisor_table_cached(std::max<std::uint64_t>(need, cfg_.series_M), path);
  }
  return dtab_;
}

double Z1Evaluator::resolve_zero(double target) {
  std::lock_guard<std::mutex> lk(resolve_mtx_);
  double window = 10.0 * std::sqrt(target);
  if (auto hit = zeros_.find_near(target + 0.5 * window, 0.5 * window))
    if (hit->x_star >= target) return hit->x_star;
  EZeroRecord rec = grid_.find_E_zero(target, 10.0);
  zeros_.append(rec);
  return rec.x_star;
}

double Z1Evaluator::pick_X(double t_abs) {
  double target;
  switch (cfg_.x_policy) {
    case Z1Config::XPolicy::kExp167:
      target = std::max(cfg_.X_min, std::pow(std::max(t_abs, 2.0), 16.0 / 7.0));
      break;
    case Z1Config::XPolicy::kFixed:
      target = std::max(cfg_.X_fixed, 2.0 * t_abs);
      break;
    default:
      target = std::max(cfg_.X_min, 2.0 * t_abs);
  }
  return resolve_zero(target);
}

EvalC Z1Evaluator::z1_direct(ComplexPoint sp, double X, const QuadSpec& spec) {
  if (sp.sigma < 1.2 - 1e-12)
    throw StripError("z1_direct: requires sigma >= 1.2");
  if (!(X >= 100.0)) throw DomainError("z1_direct: X >= 100 required");
  const double t = std::abs(sp.t);
  const Complex s{sp.sigma, t};
  const ZetaOptions zopts = mellin_zeta_options();
  auto amp = [&zopts](double x) {
    Eval z = hardy_Z(x, zopts);
    return z.value * z.value;
  };
  EvalC quad = integrate_complex(amp, sp.sigma, t, 1.0, X, spec, zsq_osc_rate);
  // smooth tail int_X^inf (log(x/2pi) + 2 gamma) x^{-s} dx
  Complex x1ms = cpow(X, 1.0 - s);
  Complex smooth = x1ms / (s - 1.0) *
                   (1.0 / (s - 1.0) + std::log(X) + 2.0 * kEulerGamma - kLog2Pi);
  EvalC out;
  out.value = quad.value + smooth;
  // E-part of the tail: |E(x)| <= c_E x^alpha gives
  //   |int_X^inf E'(x) x^{-s} dx| <= c_E X^{alpha-sigma} (1 + |s|/(sigma-alpha))
  double e_tail = calib::kCE * std::pow(X, calib::kCEExponent - sp.sigma) *
                  (1.0 + std::abs(s) / (sp.sigma - calib::kCEExponent));
  out.abs_err = quad.abs_err + e_tail + zsq_point_err_integral(sp.sigma, 1.0, X) +
                1e-15 * std::abs(smooth);
  out.n_terms = quad.n_terms;
  out.n_evals = quad.n_evals;
  if (sp.t < 0.0) out.value = std::conj(out.value);
  return out;
}

EvalC Z1Evaluator::tail_via_series(Complex s, double X) {
  const double sigma = s.real();
  EvalC out;
  if (cfg_.experimental_g1_tail) {
    // Second integration by parts with grid-backed G and G1; coarse bound.
    if (sigma <= 0.05)
      throw StripError("z1_continued: experimental tail requires sigma > 0.05");
    grid_.ensure(X + 1.0);
    Eval g = grid_.G(X);
    Eval g1 = grid_.G1(X);
    Complex xm1 = cpow(X, -s - 1.0), xm2 = cpow(X, -s - 2.0);
    out.value = -g.value * xm1 - (s + 1.0) * g1.value * xm2;
    out.abs_err = g.abs_err * std::abs(xm1) +
                  std::abs(s + 1.0) * g1.abs_err * std::abs(xm2) +
                  std::abs(s + 1.0) * std::abs(s + 2.0) * calib::kCG1 *
                      std::pow(X, -sigma - 0.75) / (sigma + 0.75);
    return out;
  }
  const long M = cfg_.series_M;
  const DivisorTable& dt = dtable(static_cast<std::uint64_t>(M));
  const double Y = cfg_.Y_factor * X;
  const double U = std::sqrt(X), V = std::sqrt(Y);
  Eval gb = G_series(X, M, dt);
  double gb_err = std::min(gb.abs_err,
                           calib::kSeriesDev * std::pow(X, 2.0 / 3.0) * std::log(X));
  Complex xm1 = cpow(X, -s - 1.0);
  KahanC j_sum;
  Kahan j_err;
  const Complex beta = -2.0 * s - 1.5;
  const double beta_mag = std::abs(beta);
  long evals = 0;
  // panels while a_n sqrt(X) < 8 |beta|, asymptotic beyond
  for (long n = 1; n <= M; ++n) {
    double a = std::sqrt(8.0 * kPi * static_cast<double>(n));
    double w = dt(n) * std::pow(static_cast<double>(n), -1.25);
    Complex iu;
    double ierr;
    if (a * U < 8.0 * beta_mag) {
      QuadSpec us = cfg_.quad;
      us.osc_freq_hint = a / 4.0;  // one full period per panel cap
      us.abs_tol = std::max(cfg_.quad.abs_tol, 1e-13) / (w + 1.0);
      EvalC r = integrate_c(
          [&](double u) { return cpow(u, beta) * std::sin(a * u - kPi / 4.0); },
          U, V, us);
      iu = r.value;
      ierr = r.abs_err;
      evals += r.n_evals;
    } else {
      iu = osc_power_ibp(beta, a, -kPi / 4.0, U, V, &ierr);
      evals += 2;
    }
    Complex term = 2.0 * kSeriesPrefactor * w * iu;  // I_n = 2 * u-integral
    if (n % 2 == 1) term = -term;
    j_sum.add(term);
    j_err.add(2.0 * kSeriesPrefactor * w * ierr);
  }
  // omitted n > M: |I_n| <= 5.2 X^{-sigma-3/4}/a_n, sum d(n) n^{-7/4} bounded
  double tail_sum = 1.15 * (4.0 / 3.0) * std::pow(static_cast<double>(M), -0.75) *
                    (std::log(static_cast<double>(M)) + 8.0 / 3.0);
  double omitted = kSeriesPrefactor * 5.2 * std::pow(X, -sigma - 0.75) /
                   std::sqrt(8.0 * kPi) * tail_sum;
  // truncated-series deviation from the true G across [X, Y]
  double dev_int = calib::kSeriesDev * std::log(Y) * std::pow(X, -sigma - 1.0 / 3.0) /
                   (sigma + 1.0 / 3.0);
  // horizon remainder via |G| <= c_G x^{3/4}
  double y_rem = calib::kCG * std::pow(Y, -sigma - 0.25) / (sigma + 0.25);
  out.value = -gb.value * xm1 + (s + 1.0) * j_sum.result();
  out.abs_err = gb_err * std::abs(xm1) +
                std::abs(s + 1.0) * (j_err.result() + omitted + dev_int + y_rem);
  out.n_terms = M;
  out.n_evals = evals;
  return out;
}

EvalC Z1Evaluator::tail_via_grid_cells(Complex s, double X) {
  // int_X^inf (E - pi) x^{-s-1} dx: per-cell closed forms of the linear model
  //   E(x) ~ Ebar_i + slope_i (x - x_c)
  // over the stored grid (the cell average Ebar_i is exact from the prefix
  // layer), then -G(Xg) Xg^{-s-1} + a |G| <= c_G x^{3/4} bound beyond.
  const double sigma = s.real();
  {
    std::lock_guard<std::mutex> lk(resolve_mtx_);
    double want = std::min(cfg_.grid_tail_cap, std::max(4.0 * X, 2000.0));
    if (grid_.x_end() < want) grid_.ensure(want);
  }
  const double h = grid_.step();
  const std::size_t k0 = static_cast<std::size_t>(std::ceil(X / h - 1e-9));
  const std::size_t kg = grid_.cells();
  EvalC out;
  KahanC acc;
  // partial first cell [X, node k0] with pointwise E evaluations
  if (grid_.node_x(k0) > X + 1e-12) {
    QuadSpec ps = cfg_.quad;
    ps.abs_tol = 1e-12;
    EvalC part = integrate_c(
        [&](double x) {
          return (grid_.E(x).value - kPi) * cpow(x, -s - 1.0);
        },
        X, grid_.node_x(k0), ps);
    acc.add(part.value);
    out.abs_err += part.abs_err + 2e-6 * std::pow(X, -sigma - 1.0);
    out.n_evals += part.n_evals;
  }
  // full cells
  Complex ms = -s;
  for (std::size_t i = k0; i < kg; ++i) {
    double a = grid_.node_x(i), b = a + h;
    double xc = 0.5 * (a + b);
    Complex bms = cpow(b, ms), ams = cpow(a, ms);
    Complex i0 = (ams - bms) / s;                       // int x^{-s-1}
    Complex i1 = (b * bms - a * ams) / (1.0 - s) - xc * i0;  // int (x-xc) x^{-s-1}
    double ebar = grid_.cell_avg_E(i);
    double slope = (grid_.node_E(i + 1) - grid_.node_E(i)) / h;
    acc.add((ebar - kPi) * i0 + slope * i1);
  }
  // curvature residual of the linear model, summed over the cells
  out.abs_err += 1.0 * std::pow(grid_.node_x(k0), -sigma - 1.0) / (sigma + 1.0);
  // beyond the grid: boundary G plus the envelope bound
  double Xg = grid_.node_x(kg);
  Complex xgm = cpow(Xg, -s - 1.0);
  acc.add(-grid_.node_G(kg) * xgm);
  out.abs_err += std::abs(s + 1.0) * calib::kCG * std::pow(Xg, -sigma - 0.25) /
                     (sigma + 0.25) +
                 1e-5 * std::abs(xgm);
  out.value = acc.result();
  out.n_terms = static_cast<long>(kg - k0);
  return out;
}

EvalC Z1Evaluator::z1_continued_at(ComplexPoint sp, double X, double zero_residual) {
  const double t = std::abs(sp.t);
  const Complex s{sp.sigma, t};
  const ZetaOptions zopts = mellin_zeta_options();
  auto amp = [&zopts](double x) {
    Eval z = hardy_Z(x, zopts);
    return z.value * z.value;
  };
  EvalC quad = integrate_complex(amp, sp.sigma, t, 1.0, X, cfg_.quad, zsq_osc_rate);
  Complex x1ms = cpow(X, 1.0 - s);
  Complex smooth = x1ms / (s - 1.0) *
                   (1.0 / (s - 1.0) + std::log(X) + 2.0 * kEulerGamma - kLog2Pi);
  Complex pi_term = kPi * cpow(X, -s);
  EvalC tail = (cfg_.tail_mode == Z1Config::TailMode::kGridCells)
                   ? tail_via_grid_cells(s, X)
                   : tail_via_series(s, X);
  EvalC out;
  out.value = quad.value + smooth + pi_term + s * tail.value;
  out.abs_err = quad.abs_err + zsq_point_err_integral(sp.sigma, 1.0, X) +
                std::abs(s) * tail.abs_err +
                zero_residual * std::pow(X, -sp.sigma) +
                1e-15 * (std::abs(smooth) + std::abs(pi_term));
  out.n_terms = tail.n_terms;
  out.n_evals = quad.n_evals + tail.n_evals;
  if (sp.t < 0.0) out.value = std::conj(out.value);
  return out;
}

EvalC Z1Evaluator::z1_continued(ComplexPoint sp) {
  if (!(sp.sigma > 0.3))
    throw StripError("z1_continued: requires sigma > 0.3");
  double dist = std::hypot(sp.sigma - 1.0, sp.t);
  if (dist <= cfg_.exclusion_radius)
    throw PoleProximityError("z1_continued: s inside the exclusion radius of 1");
  double X = pick_X(std::abs(sp.t));
  double residual = 0.0;
  if (auto hit = zeros_.find_near(X, 1e-6)) residual = hit->residual;
  return z1_continued_at(sp, X, residual);
}

Z1Result Z1Evaluator::z1_auto(ComplexPoint sp) {
  Z1Result r;
  if (sp.sigma >= 1.2) {
    r.method = Z1Method::kDirect;
    r.X_used = cfg_.direct_X;
    r.ev = z1_direct(sp, cfg_.direct_X, cfg_.quad);
  } else {
    r.method = Z1Method::kContinued;
    r.X_used = pick_X(std::abs(sp.t));
    double residual = 0.0;
    if (auto hit = zeros_.find_near(r.X_used, 1e-6)) residual = hit->residual;
    r.ev = z1_continued_at(sp, r.X_used, residual);
  }
  return r;
}

std::pair<Eval, Eval> Z1Evaluator::laurent_coeffs(const std::vector<double>& h_list) {
  if (h_list.size() < 2)
    throw DomainError("laurent_coeffs: need at least two h values");
  for (std::size_t i = 0; i < h_list.size(); ++i) {
    if (!(h_list[i] >= 0.02))
      throw DomainError("laurent_coeffs: h must be >= 0.02");
    if (i && !(h_list[i] < h_list[i - 1]))
      throw DomainError("laurent_coeffs: h list must be decreasing");
  }
  const std::size_t n = h_list.size();
  std::vector<double> phi(n), phi_err(n);
  for (std::size_t i = 0; i < n; ++i) {
    double h = h_list[i];
    EvalC z;
    if (h >= 0.2) {
      z = z1_direct({1.0 + h, 0.0}, std::max(cfg_.direct_X, 20000.0), cfg_.quad);
    } else {
      z = z1_continued({1.0 + h, 0.0});
    }
    phi[i] = h * h * z.value.real();
    phi_err[i] = h * h * z.abs_err;
  }
  // exact interpolation phi(h) = sum c_k h^k; c0, c1 by Vandermonde solve
  auto fit = [](const std::vector<double>& hs, const std::vector<double>& ys) {
    std::size_t m = hs.size();
    std::vector<std::vector<double>> a(m, std::vector<double>(m));
    std::vector<double> x = ys;
    for (std::size_t r = 0; r < m; ++r) {
      double p = 1.0;
      for (std::size_t c = 0; c < m; ++c) {
        a[r][c] = p;
        p *= hs[r];
      }
    }
    for (std::size_t col = 0; col < m; ++col) {
      std::size_t piv = col;
      for (std::size_t rr = col + 1; rr < m; ++rr)
        if (std::abs(a[rr][col]) > std::abs(a[piv][col])) piv = rr;
      std::swap(a[col], a[piv]);
      std::swap(x[col], x[piv]);
      for (std::size_t rr = col + 1; rr < m; ++rr) {
        double f = a[rr][col] / a[col][col];
        for (std::size_t cc = col; cc < m; ++cc) a[rr][cc] -= f * a[col][cc];
        x[rr] -= f * x[col];
      }
    }
    std::vector<double> c(m);
    for (std::size_t rr = m; rr-- > 0;) {
      double s = x[rr];
      for (std::size_t cc = rr + 1; cc < m; ++cc) s -= a[rr][cc] * c[cc];
      c[rr] = s / a[rr][rr];
    }
    return c;
  };
  std::vector<double> c_full = fit(h_list, phi);
  // drop the largest h for the error estimate
  std::vector<double> hs_sub(h_list.begin() + 1, h_list.end());
  std::vector<double> phi_sub(phi.begin() + 1, phi.end());
  std::vector<double> c_sub = fit(hs_sub, phi_sub);
  double perr = 0.0;
  for (std::size_t i = 0; i < n; ++i) perr = std::max(perr, phi_err[i]);
  // crude Lebesgue-style propagation factor for this node layout
  double lprop = 8.0;
  Eval c0{c_full[0], std::abs(c_full[0] - c_sub[0]) + lprop * perr,
          static_cast<long>(n), 0};
  Eval c1{c_full[1], std::abs(c_full[1] - c_sub[1]) + lprop * perr / h_list.back(),
          static_cast<long>(n), 0};
  return {c0, c1};
}

Eval Z1Evaluator::h_m(int m, const QuadSpec& spec) {
  if (m < 0 || m > 40) throw DomainError("h_m: 0 <= m <= 40");
  ZetaOptions zopts;
  zopts.method = ZetaMethod::kEulerMaclaurin;  // far below the RS regime
  auto f = [&](double y) {
    Eval z = hardy_Z(y, zopts);
    return z.value * z.value * std::pow(y, static_cast<double>(m));
  };
  return integrate(f, 0.0, 1.0, spec);
}

Eval Z1Evaluator::gamma_bridge_check(ComplexPoint sp, const QuadSpec& spec) {
  if (!(sp.sigma >= 1.2 && sp.sigma <= 3.0 && std::abs(sp.t) <= 5.0))
    throw DomainError("gamma_bridge_check: 1.2 <= sigma <= 3, |t| <= 5");
  const Complex s = sp.value();
  EvalC z1 = z1_direct(sp, cfg_.direct_X, spec);
  EvalC lg = log_gamma(s);
  Complex gamma_s = std::exp(lg.value);
  Complex lhs = z1.value * gamma_s;
  double lhs_err = (z1.abs_err + std::abs(z1.value) * lg.abs_err) * std::abs(gamma_s);

  grid_.ensure(2.0);
  Eval E1 = grid_.E(1.0);
  Eval G1v = grid_.G(1.0);

  const double x_lo = 1e-3, x_hi = 50.0;
  // --- small-x piece: LBar1(x) = S(x) + (pi - E(1)) e^{-x} - x G(1) e^{-x}
  //     + x^2 int_1^inf G(y) e^{-xy} dy, the last term bounded by c_G x^{1/4}.
  auto J_lower = [](double x) {
    // int_0^x log(u) e^{-u} du as a short alternating series (x <= 1e-2)
    double acc = 0.0, kfact = 1.0;
    double lx = std::log(x);
    double xp = x;
    for (int k = 0; k <= 8; ++k) {
      if (k > 0) kfact *= k;
      double kk = static_cast<double>(k + 1);
      double c = (k % 2 == 0 ? 1.0 : -1.0) / kfact;
      acc += c * xp * (lx - 1.0 / kk) / kk;
      xp *= x;
    }
    return acc;
  };
  auto small_x_integrand = [&](double u) -> Complex {
    double x = std::exp(u);
    double Ilog = -kEulerGamma - J_lower(x);
    double ex = std::exp(-x);
    double S = (Ilog - std::log(x) * ex) / x + (2.0 * kEulerGamma - kLog2Pi) * ex / x;
    double val = S + (kPi - E1.value) * ex - x * G1v.value * ex;
    // measure: x^{s-1} dx = e^{us} du
    return val * std::exp(s * u);
  };
  double u_lo = -42.0 / (sp.sigma - 1.0 + 0.02);
  EvalC A = integrate_c(small_x_integrand, u_lo, std::log(x_lo), spec);
  double errA = A.abs_err +
                0.92 * calib::kCG * std::pow(x_lo, sp.sigma + 0.25) / (sp.sigma + 0.25) +
                (E1.abs_err + G1v.abs_err) * std::pow(x_lo, sp.sigma) / sp.sigma;

  // --- main piece: honest LBar1 quadrature in log space
  QuadSpec inner = spec;
  inner.rel_tol = 1e-8;
  inner.abs_tol = 1e-10;
  long inner_evals = 0;
  auto main_integrand = [&](double u) -> Complex {
    double x = std::exp(u);
    Eval lb = L1_bar(x, inner, 20.0);
    inner_evals += lb.n_evals;
    return lb.value * std::exp(s * u);
  };
  QuadSpec bspec = spec;
  bspec.rel_tol = 1e-7;
  bspec.abs_tol = 1e-7 * std::abs(lhs);
  EvalC B = integrate_c(main_integrand, std::log(x_lo), std::log(x_hi), bspec);
  double errB = B.abs_err + 3e-7 * std::abs(B.value);

  // --- tail beyond x_hi: LBar1(x) <= 3 e^{-x} (1 + 1/x) for x >= 50
  double tail = 3.0 * std::exp(-x_hi) * std::pow(x_hi, sp.sigma - 1.0) *
                (1.0 + sp.sigma / x_hi) * 2.0;

  Complex rhs = A.value + B.value;
  double rhs_err = errA + errB + tail;
  Eval out;
  out.value = std::abs(lhs - rhs) / std::abs(lhs);
  out.abs_err = (lhs_err + rhs_err) / std::abs(lhs);
  out.n_evals = z1.n_evals + B.n_evals + inner_evals;
  return out;
}

Eval Z1Evaluator::window_max(double t, double eps) {
  if (!(t >= 10.0) || !(eps > 0.0 && eps <= 0.5))
    throw DomainError("window_max: t >= 10, 0 < eps <= 0.5");
  double X = pick_X(t + std::pow(t, eps));
  double residual = 0.0;
  if (auto hit = zeros_.find_near(X, 1e-6)) residual = hit->residual;
  return window_max_with_X(t, eps, X, residual);
}

Eval Z1Evaluator::window_max_with_X(double t, double eps, double X,
                                    double residual) {
  const double r = std::pow(t, eps);
  const int npts = 41;  // center included at i = 20
  double best_v = t, best = -1.0, best_err = 0.0;
  long evals = 0;
  auto probe = [&](double v) {
    EvalC z = z1_continued_at({0.5, v}, X, residual);
    evals += 1;
    double m = std::abs(z.value);
    if (m > best) {
      best = m;
      best_v = v;
      best_err = z.abs_err;
    }
    return m;
  };
  std::vector<double> vals(npts);
  for (int i = 0; i < npts; ++i) {
    double v = t - r + 2.0 * r * static_cast<double>(i) / (npts - 1);
    vals[i] = probe(v);
  }
  // one golden-section refinement around the grid argmax
  int k = static_cast<int>(std::max_element(vals.begin(), vals.end()) - vals.begin());
  double a = t - r + 2.0 * r * std::max(0, k - 1) / (npts - 1);
  double b = t - r + 2.0 * r * std::min(npts - 1, k + 1) / (npts - 1);
  const double gr = 0.6180339887498949;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = probe(x1), f2 = probe(x2);
  for (int it = 0; it < 12; ++it) {
    if (f1 < f2) {  // maximize
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = probe(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = probe(x1);
    }
  }
  Eval out;
  out.value = best;
  out.abs_err = best_err;
  out.n_evals = evals;
  out.n_terms = npts;
  (void)best_v;
  return out;
}

std::vector<ScanRow> Z1Evaluator::scan_line(double sigma, double t0, double t1,
                                            double dt) {
  if (!(sigma > 0.3 && sigma <= 1.5))
    throw DomainError("scan_line: 0.3 < sigma <= 1.5");
  double lo = std::min(t0, t1), hi = std::max(t0, t1);
  double step = std::abs(dt);
  if (!(lo >= 2.0) || !(hi > lo) || !(step > 0.0))
    throw DomainError("scan_line: need 2 <= t0 < t1 and dt != 0");
  auto n_rows = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  dtable(static_cast<std::uint64_t>(cfg_.series_M));
  // resolve E-zeros serially so the parallel pass is read-only
  std::vector<double> xs(n_rows), xw(n_rows), res(n_rows), resw(n_rows);
  for (std::size_t i = 0; i < n_rows; ++i) {
    double t = lo + step * static_cast<double>(i);
    xw[i] = pick_X(t + std::pow(t, 0.1));
    resw[i] = 0.0;
    if (auto h = zeros_.find_near(xw[i], 1e-6)) resw[i] = h->residual;
    if (sigma < 1.2) {
      xs[i] = pick_X(t);
      res[i] = 0.0;
      if (auto h = zeros_.find_near(xs[i], 1e-6)) res[i] = h->residual;
    } else {
      xs[i] = cfg_.direct_X;
      res[i] = 0.0;
    }
  }
  std::vector<ScanRow> rows(n_rows);
  parallel_for(n_rows, cfg_.threads, [&](std::size_t i) {
    double t = lo + step * static_cast<double>(i);
    ScanRow row;
    row.t = t;
    row.sigma = sigma;
    EvalC z = (sigma >= 1.2) ? z1_direct({sigma, t}, xs[i], cfg_.quad)
                             : z1_continued_at({sigma, t}, xs[i], res[i]);
    row.re = z.value.real();
    row.im = z.value.imag();
    row.abs = std::abs(z.value);
    row.abs_err = z.abs_err;
    row.X_used = xs[i];
    Eval wm = window_max_with_X(t, 0.1, xw[i], resw[i]);
    row.bound_13 = std::pow(t, 0.5 - sigma + 0.1) * wm.value +
                   (std::pow(t, (9.0 - 16.0 * sigma) / 7.0) + 1.0 / t) * std::log(t);
    row.bound_14 = std::pow(t, 5.0 / 6.0 - sigma);
    rows[i] = row;
  });
  return rows;
}

std::string scan_to_csv(const std::vector<ScanRow>& rows) {
  std::string out = "t,sigma,re,im,abs,abs_err,X_used,bound_13,bound_14\n";
  char buf[512];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf,
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t,
                  r.sigma, r.re, r.im, r.abs, r.abs_err, r.X_used, r.bound_13,
                  r.bound_14);
    out += buf;
  }
  return out;
}

std::string z1_to_json(ComplexPoint s, const Z1Result& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "{\"s\":{\"sigma\":%.17g,\"t\":%.17g},\"value\":{\"re\":%.17g,"
                "\"im\":%.17g},\"abs_err\":%.17g,\"method\":\"%s\",\"X_used\":%.17g}",
                s.sigma, s.t, r.ev.value.real(), r.ev.value.imag(), r.ev.abs_err,
                r.method == Z1Method::kDirect ? "direct" : "continued", r.X_used);
  return buf;
}

}  // namespace mz
