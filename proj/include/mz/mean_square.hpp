#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mz/arith.hpp"
#include "mz/common.hpp"
#include "mz/quadrature.hpp"
#include "mz/zeta.hpp"

// The mean-square error term E(T), its sign changes, the integrated
// functions G(T) and G1(T), and the explicit-formula / series evaluations
// of G.

namespace mz {

/// Smooth main term T(log(T/2pi) + 2*gamma - 1) of the mean-square formula.
double main_term(double T);

/// d/dT main_term = log(T/2pi) + 2*gamma.
double main_term_derivative(double T);

/// Certified sign-change bracket for a zero of E.
struct EZeroRecord {
  double T_anchor = 0.0;
  double C = 0.0;
  double x_lo = 0.0;
  double x_hi = 0.0;
  double x_star = 0.0;
  double residual = 0.0;
};

struct GExplicitParams {
  double T = 0.0;
  long N = 0;       // S1 cutoff; A*T < N < A'*T with A=0.5, A'=2
  double n_prime() const;  // cancellation-stable N'
  void validate() const;
};

/// Phase f(T,n) = 2T arsinh sqrt(pi n / 2T) + sqrt(2 pi n T + pi^2 n^2) - pi/4.
double f_phase(double T, long n);

/// Phase g(T,n) = T log(T/(2 pi n)) - T + pi/4; requires 2 pi n < T.
double g_phase(double T, long n);

/// Explicit formula G = S1(T;N) - S2(T;N) with remainder c_rem * T^{1/4}
/// reported in abs_err.
Eval G_explicit(const GExplicitParams& params, const DivisorTable& dtable,
                double c_rem = 10.0);

/// Truncated series 2^{-1/4} pi^{-3/4} T^{3/4} sum (-1)^n d(n) n^{-5/4}
/// sin(sqrt(8 pi n T) - pi/4); the documented heuristic tail bound
/// 8 M^{-1/4} (log M + 2) enters abs_err.
Eval G_series(double T, long M, const DivisorTable& dtable);

/// Nested prefix-integral layers over a uniform cell grid:
///   layer 0: int Z^2          (gives E)
///   layer 1: cell moments of (b-u)   E'(u)  (gives int E, hence G)
///   layer 2: cell moments of (b-u)^2 E'(u)/2 (gives int G, hence G1)
/// One 15-point sweep per cell feeds all three layers.
class MeanSquareGrid {
 public:
  explicit MeanSquareGrid(double step = 0.25, ZetaOptions zopts = grid_zeta_options(),
                          int threads = 0);

  static ZetaOptions grid_zeta_options();

  double step() const { return step_; }
  double x_end() const { return step_ * static_cast<double>(cells()); }
  std::size_t cells() const { return zsq_.size() ? zsq_.size() - 1 : 0; }

  /// Extends all layers so that [0, T] is covered (rounded up in chunks).
  void ensure(double T);

  Eval zsq_prefix(double T) const;  // int_0^T Z(u)^2 du
  Eval E(double T) const;
  Eval G(double T) const;
  Eval G1(double T) const;

  /// Node accessors (cell-boundary values, no partial-cell work).
  double node_x(std::size_t i) const { return step_ * static_cast<double>(i); }
  double node_E(std::size_t i) const;
  double node_G(std::size_t i) const;
  /// Exact cell average of E over [x_i, x_{i+1}] from the prefix layer.
  double cell_avg_E(std::size_t i) const {
    return (prefix_E_[i + 1] - prefix_E_[i]) / step_;
  }

  /// Scans [T, T + C sqrt(T)] for a sign change of E, then bisects to width
  /// 1e-8 with one secant polish.  Throws NoSignChangeError if none found.
  EZeroRecord find_E_zero(double T, double C);

  // CSV layer caches (schema `x,prefix,err` per layer).
  void save_cache(const std::string& dir) const;
  bool load_cache(const std::string& dir);

 private:
  void rebuild_derived();
  void partial_moments(double a, double b, double* m0, double* m1, double* m2,
                       double* err) const;

  double step_;
  ZetaOptions zopts_;
  int threads_;
  // stored layers: prefix sums at cell boundaries, index 0 = x=0
  std::vector<double> zsq_, m1_, m2_;
  std::vector<double> zsq_err_, m1_err_, m2_err_;  // per-cell
  // derived prefix layers
  std::vector<double> prefix_E_, prefix_G_;
};

/// Append-only CSV cache of certified E-zeros (`T_anchor,C,x_star,residual`).
class EZeroCache {
 public:
  explicit EZeroCache(std::string path);
  std::optional<EZeroRecord> find_near(double x, double window) const;
  void append(const EZeroRecord& rec);
  const std::vector<EZeroRecord>& records() const { return records_; }

 private:
  std::string path_;
  std::vector<EZeroRecord> records_;
};

}  // namespace mz
