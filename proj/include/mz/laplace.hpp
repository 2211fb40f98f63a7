#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "mz/common.hpp"
#include "mz/quadrature.hpp"
#include "mz/zeta.hpp"

// The Laplace transform L1(sigma) of Z(x)^2, the exact a_n coefficients of
// its small-sigma expansion (rational series inversion of 2 sin(1/(2T))),
// and diagnostic least-squares fits of the b_n coefficients.

namespace mz {

using Rational = boost::multiprecision::cpp_rational;

/// Exact a_n plus (diagnostic) fitted b_n.  a[0] = 1 and b[0] = pi are exact;
/// every fitted entry is provenance-flagged and never used as ground truth.
struct CoeffTable {
  std::vector<Rational> a;   // exact rationals, a[0] = 1
  std::vector<double> b;     // b[0] = pi (exact), b[1..] fitted
  int n_fitted = 0;          // number of fitted b coefficients
  double fit_residual = 0.0;
  std::string to_json() const;
};

/// Local oscillation rate of Z(x)^2 in radians per unit x (phase 2 theta).
double zsq_osc_rate(double x);

/// L1(sigma) = int_0^inf Z(x)^2 e^{-sigma x} dx for sigma > 0.
/// Numerical integration up to X_c = (tail_c + 2 log(1/sigma))/sigma; the
/// closed-form bound for the omitted tail is added to abs_err.
Eval L1(double sigma, const QuadSpec& spec, double tail_c = 40.0);

/// LBar1(x) = L1(x) - int_0^1 Z(y)^2 e^{-xy} dy  (integration from 1).
Eval L1_bar(double x, const QuadSpec& spec, double tail_c = 40.0);

/// Exact rational a_0..a_N by power-series inversion of 2 sin(1/(2T)).
CoeffTable a_coeffs(int N);

/// L1(1/T) - T (log(T/2pi) + gamma); approaches pi as T grows.
Eval kober_residual(double T, const QuadSpec& spec);

/// Least-squares fit of b_1..b_N (a_n exact, b_0 = pi held fixed) to the
/// residuals of L1(1/T) over the samples.  Fitted values are diagnostic.
CoeffTable fit_b(int N, std::vector<double> T_samples, const QuadSpec& spec);

}  // namespace mz
