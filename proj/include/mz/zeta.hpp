#pragma once

#include "mz/common.hpp"

// Evaluation of zeta(1/2+it), the Hardy function Z(t), the Riemann-Siegel
// theta function and the principal branch of log Gamma, in IEEE double with
// stated absolute-error estimates.
//
// Two independent zeta paths are provided: Euler-Maclaurin (exact-series
// route, O(t) cost, near machine accuracy) and the Riemann-Siegel formula
// (O(sqrt t) cost) with up to four Haselgrove correction terms whose error
// follows kappa_J * t^{-(2J+3)/4}.

namespace mz {

enum class ZetaMethod { kAuto, kRiemannSiegel, kEulerMaclaurin };

struct ZetaOptions {
  ZetaMethod method = ZetaMethod::kAuto;
  int rs_correction_order = 4;  // in [0, 4]
  int em_terms = 24;            // minimum Euler-Maclaurin sum length
  // Method crossover: auto picks Euler-Maclaurin below this ordinate.  The
  // default keeps the Riemann-Siegel path inside its 1e-8 error budget.
  double t_switch = 200.0;
  // When positive, operations throw AccuracyError if the declared error of
  // the selected path exceeds this target.
  double target_abs_err = 0.0;
};

/// Principal branch of log Gamma(s).  abs_err <= 1e-12 for |s| <= 100 away
/// from the poles.  Throws PoleError at the non-positive integers.
EvalC log_gamma(Complex s);

/// theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log pi, extended to t < 0 by
/// oddness.  Asymptotic fast path for |t| >= 20, exact definition below.
Eval rs_theta(double t);

/// Forces the exact log-Gamma definition (test hook for the fast path).
Eval rs_theta_exact(double t);

/// Euler-Maclaurin evaluation of zeta(s), Re s > 0, s != 1.
EvalC zeta_em(Complex s, int min_terms = 24);

/// Hardy's function Z(t) = e^{i theta(t)} zeta(1/2+it), real-valued.
Eval hardy_Z(double t, const ZetaOptions& opts = {});

/// zeta(1/2+it) = Z(t) e^{-i theta(t)}.
EvalC zeta_half(double t, const ZetaOptions& opts = {});

/// Declared-error model of the Riemann-Siegel path at order J (exposed for
/// tests and for the auto-method selection logic).
double rs_error_model(double t, int order);

}  // namespace mz
