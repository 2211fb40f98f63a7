#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mz/common.hpp"

// Adaptive Gauss-Kronrod quadrature (7/15 pair) with oscillation-aware panel
// control, plus a cumulative prefix-integral grid used by the mean-square
// machinery.

namespace mz {

struct QuadSpec {
  double rel_tol = 1e-9;
  double abs_tol = 1e-11;
  long max_panels = 1000000;
  double min_panel_width = 1e-13;
  // Local oscillation rate of the integrand in radians per unit x; when
  // positive, no accepted panel is wider than a quarter period 2*pi/(4*hint).
  double osc_freq_hint = 0.0;
};

using RealFn = std::function<double(double)>;
using ComplexFn = std::function<Complex(double)>;

/// Single G7/K15 panel on [a, b]: Kronrod value, |K15-G7| difference and the
/// integral of |f| (used for roundoff estimates).  15 evaluations.
struct PanelResult {
  double value;
  double err;
  double resabs;
};
PanelResult kronrod_panel(const RealFn& f, double a, double b);

struct PanelResultC {
  Complex value;
  double err;
  double resabs;
};
PanelResultC kronrod_panel_c(const ComplexFn& f, double a, double b);

/// Adaptive integral of f over [a, b].
/// Throws ConvergenceError (with best estimate) if max_panels is exhausted
/// with the error estimate above tolerance.
Eval integrate(const RealFn& f, double a, double b, const QuadSpec& spec);

/// Complex-valued adaptive integral (same panel control as integrate).
EvalC integrate_c(const ComplexFn& f, double a, double b, const QuadSpec& spec);

/// \int_a^b amplitude(x) x^{-sigma} e^{-i t log x} dx for 1 <= a < b.
/// The range is split into dyadic blocks; each block uses the local
/// oscillation rate |t|/x_left + amp_freq(x_left) as its panel-width cap,
/// where amp_freq models the amplitude's own oscillation (may be null).
EvalC integrate_complex(const RealFn& amplitude, double sigma, double t,
                        double a, double b, const QuadSpec& spec,
                        const RealFn& amp_freq = nullptr);

/// Prefix integrals prefix[i] ~ \int_{x0}^{x0+i*step} f on a uniform grid.
class CumulativeGrid {
 public:
  CumulativeGrid() = default;
  CumulativeGrid(double x0, double step) : x0_(x0), step_(step) {}

  double x0() const { return x0_; }
  double step() const { return step_; }
  std::size_t cells() const { return prefix_.size() - 1; }
  double x_end() const { return x0_ + step_ * static_cast<double>(cells()); }
  double prefix(std::size_t i) const { return prefix_[i]; }
  double cell_err(std::size_t i) const { return per_cell_err_[i]; }
  double total_err() const;

  /// Appends one cell integral (used by builders that evaluate several
  /// coupled integrals in one sweep).
  void append_cell(double integral, double err);

  /// Extends the grid with per-cell adaptive quadrature of f until x1 is
  /// covered.  Already-computed cells are reused.
  void extend(const RealFn& f, double x1, const QuadSpec& spec);

  /// Prefix value at arbitrary x in [x0, x_end]: stored prefix at the cell
  /// boundary below x plus direct quadrature of the final partial cell.
  Eval value_at(const RealFn& f, double x, const QuadSpec& spec) const;

  // CSV cache, header `x,prefix,err`, one row per cell boundary.
  void save_csv(const std::string& path) const;
  static CumulativeGrid load_csv(const std::string& path);

 private:
  double x0_ = 0.0;
  double step_ = 0.25;
  std::vector<double> prefix_{0.0};
  std::vector<double> per_cell_err_{0.0};
};

/// Builds (or conceptually extends) a grid of prefix integrals of f.
CumulativeGrid cumulative(const RealFn& f, double x0, double x1, double step,
                          const QuadSpec& spec);

}  // namespace mz
