#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "mz/common.hpp"
#include "mz/mean_square.hpp"
#include "mz/quadrature.hpp"
#include "mz/zeta.hpp"

// Evaluation of Z1(s) = int_1^inf Z(x)^2 x^{-s} dx: direct truncated
// integral for sigma > 1, continuation through the E-zero identity for
// sigma > 0.3, Laurent-coefficient extraction at s = 1, the h_m moments,
// the Gamma-bridge identity check and order-bound scans.

namespace mz {

struct Z1Config {
  enum class XPolicy {
    kMinCost,   // X = max(X_min, 2|t|), snapped to a zero of E
    kExp167,    // X = max(X_min, |t|^{16/7}), snapped (costly for large t)
    kFixed,     // X = max(X_fixed, 2|t|), snapped
  };
  XPolicy x_policy = XPolicy::kMinCost;
  double X_min = 300.0;
  double X_fixed = 1000.0;
  double Y_factor = 1000.0;      // tail quadrature horizon Y = Y_factor * X
  long series_M = 10000;         // series cutoff for the G-based tail
  double exclusion_radius = 1e-3;  // around the double pole at s = 1
  double direct_X = 10000.0;     // default truncation for direct evaluations
  // Tail handling beyond X.  kSeries integrates the truncated series for G
  // (fast; inherits the series' O(x^{2/3} log x) deviation in abs_err).
  // kGridCells sums closed forms of a per-cell linear model of E against
  // x^{-s-1} over the whole stored grid (slower, tight absolute error).
  enum class TailMode { kSeries, kGridCells };
  TailMode tail_mode = TailMode::kSeries;
  double grid_tail_cap = 120000.0;  // stop extending the cell tail past this
  // Second integration by parts (G1-based tail); experimental, widens the
  // strip at the price of a coarse error bound.
  bool experimental_g1_tail = false;
  QuadSpec quad;
  int threads = 0;
};

/// One (sigma, t) sample of a scan; the unit of CSV output.
struct ScanRow {
  double t = 0, sigma = 0, re = 0, im = 0, abs = 0, abs_err = 0, X_used = 0;
  double bound_13 = 0;  // t^{1/2-sigma+eps} * window max + (t^{(9-16 sigma)/7} + 1/t) log t
  double bound_14 = 0;  // t^{5/6-sigma}
};

enum class Z1Method { kDirect, kContinued };

struct Z1Result {
  EvalC ev;
  Z1Method method = Z1Method::kDirect;
  double X_used = 0.0;
};

/// Shared infrastructure (grid, divisor table, E-zero cache) plus the Z1
/// operations.  Evaluations are safe to run concurrently once the needed
/// grid range and E-zeros are resolved; resolution serializes internally.
class Z1Evaluator {
 public:
  explicit Z1Evaluator(Z1Config cfg = {}, const std::string& cache_dir = "");
  ~Z1Evaluator();

  /// Direct truncated integral (sigma >= 1.2): quadrature over [1, X] plus
  /// the closed-form smooth tail; the E-part of the tail goes to abs_err.
  EvalC z1_direct(ComplexPoint s, double X, const QuadSpec& spec);

  /// Continuation identity (sigma > 0.3, |s-1| > exclusion radius): X is an
  /// E-zero near the policy target; the tail beyond X is handled through G.
  EvalC z1_continued(ComplexPoint s);

  /// Direct for sigma >= 1.2, continued otherwise (the CLI entry point).
  Z1Result z1_auto(ComplexPoint s);

  /// Richardson fit of h^2 Z1(1+h) = c0 + c1 h + O(h^2) over the h-list
  /// (decreasing, all >= 0.02).  Contract: c0 -> 1, c1 -> 2 gamma - log 2 pi.
  std::pair<Eval, Eval> laurent_coeffs(const std::vector<double>& h_list);

  /// h_m = int_0^1 |zeta(1/2+iy)|^2 y^m dy (Euler-Maclaurin path only).
  Eval h_m(int m, const QuadSpec& spec);

  /// Relative discrepancy |Z1(s) Gamma(s) - int_0^inf LBar1(x) x^{s-1} dx| /
  /// |Z1(s) Gamma(s)| for 1.2 <= sigma <= 3, |t| <= 5.
  Eval gamma_bridge_check(ComplexPoint s, const QuadSpec& spec);

  /// Scan rows at t = min(t0,t1) + k |dt|, ascending, deterministic.
  std::vector<ScanRow> scan_line(double sigma, double t0, double t1, double dt);

  /// Max of |Z1(1/2+iv)| over a 41-point grid on [t - t^eps, t + t^eps]
  /// plus one golden-section refinement around the grid argmax.
  Eval window_max(double t, double eps);

  /// Policy target for X snapped to a certified zero of E.
  double pick_X(double t_abs);

  MeanSquareGrid& grid() { return grid_; }
  const DivisorTable& dtable(std::uint64_t need);
  const Z1Config& config() const { return cfg_; }
  void save_caches();

 private:
  EvalC z1_continued_at(ComplexPoint s, double X, double zero_residual);
  EvalC tail_via_series(Complex s, double X);      // int_X^inf (E-pi) x^{-s-1} dx
  EvalC tail_via_grid_cells(Complex s, double X);  // same integral, grid-backed
  double resolve_zero(double target);              // serialized cache+grid access
  Eval window_max_with_X(double t, double eps, double X, double residual);

  Z1Config cfg_;
  std::string cache_dir_;
  MeanSquareGrid grid_;
  DivisorTable dtab_;
  EZeroCache zeros_;
  std::mutex resolve_mtx_;
};

// Deterministic emission helpers.
std::string scan_to_csv(const std::vector<ScanRow>& rows);
std::string z1_to_json(ComplexPoint s, const Z1Result& r);

}  // namespace mz
