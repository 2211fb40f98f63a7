#include "mz/quadrature.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <queue>
#include <utility>

namespace mz {

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1] (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  double value_re, value_im;
  double err;
};

}  // namespace

PanelResult kronrod_panel(const RealFn& f, double a, double b) {
  const double hw = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double fv[15];
  for (int j = 0; j < 7; ++j) {
    fv[j] = f(mid - hw * kXgk[j]);
    fv[14 - j] = f(mid + hw * kXgk[j]);
  }
  fv[7] = f(mid);
  Kahan k15, g7, rabs;
  for (int j = 0; j < 8; ++j) {
    double w = kWgk[j];
    if (j == 7) {
      k15.add(w * fv[7]);
      rabs.add(w * std::abs(fv[7]));
      g7.add(kWg[3] * fv[7]);
    } else {
      k15.add(w * (fv[j] + fv[14 - j]));
      rabs.add(w * (std::abs(fv[j]) + std::abs(fv[14 - j])));
      if (j % 2 == 1) g7.add(kWg[j / 2] * (fv[j] + fv[14 - j]));
    }
  }
  double v = k15.result() * hw;
  double g = g7.result() * hw;
  return {v, std::abs(v - g), rabs.result() * hw};
}

PanelResultC kronrod_panel_c(const ComplexFn& f, double a, double b) {
  const double hw = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  Complex fv[15];
  for (int j = 0; j < 7; ++j) {
    fv[j] = f(mid - hw * kXgk[j]);
    fv[14 - j] = f(mid + hw * kXgk[j]);
  }
  fv[7] = f(mid);
  KahanC k15, g7;
  Kahan rabs;
  for (int j = 0; j < 8; ++j) {
    double w = kWgk[j];
    if (j == 7) {
      k15.add(w * fv[7]);
      rabs.add(w * std::abs(fv[7]));
      g7.add(kWg[3] * fv[7]);
    } else {
      k15.add(w * (fv[j] + fv[14 - j]));
      rabs.add(w * (std::abs(fv[j]) + std::abs(fv[14 - j])));
      if (j % 2 == 1) g7.add(kWg[j / 2] * (fv[j] + fv[14 - j]));
    }
  }
  Complex v = k15.result() * hw;
  Complex g = g7.result() * hw;
  return {v, std::abs(v - g), rabs.result() * hw};
}

namespace {

inline double real_part(double v) { return v; }
inline double imag_part(double) { return 0.0; }
inline double real_part(Complex v) { return v.real(); }
inline double imag_part(Complex v) { return v.imag(); }
inline void assign_value(double& dst, Complex v) { dst = v.real(); }
inline void assign_value(Complex& dst, Complex v) { dst = v; }

// Shared adaptive driver.  Integrand evaluated through `panel`; bisection of
// the worst panel (max-heap) until the summed error estimate meets the
// tolerance.  Totals are tracked incrementally and recomputed with
// compensated summation before success is declared.
template <class PanelFn, class Value>
BasicEval<Value> adapt(const PanelFn& panel, double a, double b,
                       const QuadSpec& spec, long* evals) {
  std::vector<Panel> live;
  double cap = b - a;
  if (spec.osc_freq_hint > 0.0)
    cap = std::min(cap, kTwoPi / (4.0 * spec.osc_freq_hint));
  long nseed = static_cast<long>(std::ceil((b - a) / cap));
  nseed = std::max(1L, nseed);
  if (nseed > spec.max_panels)
    throw ConvergenceError(
        "quadrature: oscillation cap needs more panels than max_panels",
        Complex{0.0, 0.0}, std::abs(b - a));
  live.reserve(static_cast<std::size_t>(nseed) + 16);
  double vre = 0.0, vim = 0.0, esum = 0.0;
  for (long i = 0; i < nseed; ++i) {
    double pa = a + (b - a) * static_cast<double>(i) / static_cast<double>(nseed);
    double pb = (i + 1 == nseed)
                    ? b
                    : a + (b - a) * static_cast<double>(i + 1) / static_cast<double>(nseed);
    auto r = panel(pa, pb);
    if (evals) *evals += 15;
    live.push_back({pa, pb, real_part(r.value), imag_part(r.value), r.err});
    vre += real_part(r.value);
    vim += imag_part(r.value);
    esum += r.err;
  }

  auto exact_totals = [&live](Complex* v, double* e) {
    KahanC kv;
    Kahan ke;
    for (const auto& p : live) {
      kv.add({p.value_re, p.value_im});
      ke.add(p.err);
    }
    *v = kv.result();
    *e = ke.result();
  };

  std::priority_queue<std::pair<double, std::size_t>> heap;
  for (std::size_t i = 0; i < live.size(); ++i) heap.emplace(live[i].err, i);

  for (;;) {
    double tol = std::max(spec.abs_tol,
                          spec.rel_tol * std::hypot(vre, vim));
    if (esum <= tol) {
      Complex val;
      double err;
      exact_totals(&val, &err);
      if (err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(val))) {
        BasicEval<Value> out;
        assign_value(out.value, val);
        out.abs_err = err;
        out.n_terms = static_cast<long>(live.size());
        return out;
      }
      esum = err;  // drift corrected; continue refining
      vre = val.real();
      vim = val.imag();
    }
    // pop the worst non-stale panel
    std::size_t worst;
    for (;;) {
      if (heap.empty()) {
        Complex val;
        double err;
        exact_totals(&val, &err);
        throw ConvergenceError("quadrature: tolerance not reached", val, err);
      }
      auto [e, idx] = heap.top();
      heap.pop();
      if (e == live[idx].err) {
        worst = idx;
        break;
      }
    }
    Panel p = live[worst];
    if (static_cast<long>(live.size()) >= spec.max_panels ||
        (p.b - p.a) <= spec.min_panel_width) {
      Complex val;
      double err;
      exact_totals(&val, &err);
      throw ConvergenceError("quadrature: tolerance not reached", val, err);
    }
    double mid = 0.5 * (p.a + p.b);
    auto r1 = panel(p.a, mid);
    auto r2 = panel(mid, p.b);
    if (evals) *evals += 30;
    live[worst] = {p.a, mid, real_part(r1.value), imag_part(r1.value), r1.err};
    live.push_back({mid, p.b, real_part(r2.value), imag_part(r2.value), r2.err});
    heap.emplace(r1.err, worst);
    heap.emplace(r2.err, live.size() - 1);
    vre += real_part(r1.value) + real_part(r2.value) - p.value_re;
    vim += imag_part(r1.value) + imag_part(r2.value) - p.value_im;
    esum += r1.err + r2.err - p.err;
  }
}

}  // namespace

Eval integrate(const RealFn& f, double a, double b, const QuadSpec& spec) {
  if (!(a < b)) throw DomainError("integrate: need a < b");
  long evals = 0;
  auto pf = [&f](double pa, double pb) { return kronrod_panel(f, pa, pb); };
  Eval out = adapt<decltype(pf), double>(pf, a, b, spec, &evals);
  out.n_evals = evals;
  return out;
}

EvalC integrate_c(const ComplexFn& f, double a, double b, const QuadSpec& spec) {
  if (!(a < b)) throw DomainError("integrate_c: need a < b");
  long evals = 0;
  auto pf = [&f](double pa, double pb) { return kronrod_panel_c(f, pa, pb); };
  EvalC out = adapt<decltype(pf), Complex>(pf, a, b, spec, &evals);
  out.n_evals = evals;
  return out;
}

EvalC integrate_complex(const RealFn& amplitude, double sigma, double t,
                        double a, double b, const QuadSpec& spec,
                        const RealFn& amp_freq) {
  if (!(1.0 <= a && a < b))
    throw DomainError("integrate_complex: need 1 <= a < b");
  KahanC value;
  Kahan err;
  long evals = 0, panels = 0;
  auto integrand = [&](double x) -> Complex {
    double lx = std::log(x);
    double amp = amplitude(x) * std::pow(x, -sigma);
    double ph = -t * lx;
    return {amp * std::cos(ph), amp * std::sin(ph)};
  };
  // Dyadic blocks: the local phase rate of x^{-it} is t/x, so later blocks
  // admit wider panels.
  double lo = a;
  while (lo < b) {
    double hi = std::min(b, std::max(lo * 2.0, lo + 1.0));
    QuadSpec bs = spec;
    double freq = std::abs(t) / lo + (amp_freq ? amp_freq(hi) : 0.0);
    bs.osc_freq_hint = (spec.osc_freq_hint > 0.0)
                           ? std::max(spec.osc_freq_hint, freq)
                           : freq;
    // Block tolerance: absolute budget is spread proportionally to width.
    bs.abs_tol = spec.abs_tol * (hi - lo) / (b - a);
    EvalC blk = integrate_c(integrand, lo, hi, bs);
    value.add(blk.value);
    err.add(blk.abs_err);
    evals += blk.n_evals;
    panels += blk.n_terms;
    lo = hi;
  }
  EvalC out;
  out.value = value.result();
  out.abs_err = err.result();
  out.n_terms = panels;
  out.n_evals = evals;
  return out;
}

double CumulativeGrid::total_err() const {
  Kahan k;
  for (double e : per_cell_err_) k.add(e);
  return k.result();
}

void CumulativeGrid::append_cell(double integral, double err) {
  prefix_.push_back(prefix_.back() + integral);
  per_cell_err_.push_back(err);
}

void CumulativeGrid::extend(const RealFn& f, double x1, const QuadSpec& spec) {
  while (x_end() + 0.5 * step_ < x1) {
    double a = x_end();
    double b = a + step_;
    QuadSpec cs = spec;
    cs.abs_tol = std::max(spec.abs_tol * step_, 1e-15);
    Eval cell = integrate(f, a, b, cs);
    append_cell(cell.value, cell.abs_err);
  }
}

Eval CumulativeGrid::value_at(const RealFn& f, double x, const QuadSpec& spec) const {
  if (x < x0_ - 1e-12 || x > x_end() + 1e-12)
    throw GridCoverageError("CumulativeGrid::value_at: x outside grid");
  x = std::clamp(x, x0_, x_end());
  auto idx = static_cast<std::size_t>((x - x0_) / step_);
  idx = std::min(idx, cells());
  double xa = x0_ + step_ * static_cast<double>(idx);
  Eval out;
  out.value = prefix_[idx];
  out.abs_err = 0.0;
  Kahan e;
  for (std::size_t i = 1; i <= idx; ++i) e.add(per_cell_err_[i]);
  out.abs_err = e.result();
  if (x > xa + 1e-14 * (1.0 + std::abs(xa))) {
    Eval part = integrate(f, xa, x, spec);
    out.value += part.value;
    out.abs_err += part.abs_err;
    out.n_evals = part.n_evals;
  }
  return out;
}

void CumulativeGrid::save_csv(const std::string& path) const {
  std::FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) throw Error("cannot write " + path);
  std::fputs("x,prefix,err\n", fp);
  for (std::size_t i = 0; i < prefix_.size(); ++i) {
    double x = x0_ + step_ * static_cast<double>(i);
    std::fprintf(fp, "%.17g,%.17g,%.17g\n", x, prefix_[i], per_cell_err_[i]);
  }
  std::fclose(fp);
}

CumulativeGrid CumulativeGrid::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::string line;
  if (!std::getline(in, line) || line != "x,prefix,err")
    throw Error("bad cumulative-grid cache header in " + path);
  std::vector<double> xs, ps, es;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double x, p, e;
    if (std::sscanf(line.c_str(), "%lg,%lg,%lg", &x, &p, &e) != 3)
      throw Error("bad cumulative-grid cache row in " + path);
    xs.push_back(x);
    ps.push_back(p);
    es.push_back(e);
  }
  if (xs.size() < 2) throw Error("cumulative-grid cache too short: " + path);
  CumulativeGrid g(xs.front(), xs[1] - xs[0]);
  g.prefix_ = ps;
  g.per_cell_err_ = es;
  return g;
}

CumulativeGrid cumulative(const RealFn& f, double x0, double x1, double step,
                          const QuadSpec& spec) {
  if (!(step > 0.0) || !(x1 > x0)) throw DomainError("cumulative: bad range");
  CumulativeGrid g(x0, step);
  g.extend(f, x1, spec);
  return g;
}

}  // namespace mz
