#pragma once

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

// Shared value types, error types and small numeric utilities used by every
// module of the library.

namespace mz {

using Complex = std::complex<double>;

inline constexpr double kEulerGamma = 0.57721566490153286061;
inline constexpr double kLog2Pi     = 1.83787706640934548356;
inline constexpr double kPi         = 3.14159265358979323846;
inline constexpr double kTwoPi      = 6.28318530717958647693;

/// Value plus an absolute-error estimate and work counters.  The universal
/// return type of the numeric operations.
template <class T>
struct BasicEval {
  T value{};
  double abs_err = 0.0;    // estimated absolute error, >= 0
  long n_terms = 0;        // series/sum terms used
  long n_evals = 0;        // integrand/function evaluations consumed
};

using Eval = BasicEval<double>;
using EvalC = BasicEval<Complex>;

/// s = sigma + i t, the Mellin argument.
struct ComplexPoint {
  double sigma = 0.0;
  double t = 0.0;
  Complex value() const { return {sigma, t}; }
};

// ----------------------------------------------------------------- errors

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct PoleError : Error          { using Error::Error; };
struct AccuracyError : Error      { using Error::Error; };
struct CapacityError : Error      { using Error::Error; };
struct GridCoverageError : Error  { using Error::Error; };
struct NoSignChangeError : Error  { using Error::Error; };
struct StripError : Error         { using Error::Error; };
struct PoleProximityError : Error { using Error::Error; };
struct IllConditionedError : Error{ using Error::Error; };
struct DomainError : Error        { using Error::Error; };

/// Quadrature ran out of panels; carries the best estimate obtained so far.
struct ConvergenceError : Error {
  ConvergenceError(const std::string& what, Complex best, double err)
      : Error(what), best_value(best), best_abs_err(err) {}
  Complex best_value;
  double best_abs_err;
};

// ------------------------------------------------------------- summation

/// Neumaier compensated accumulator for long sums.
struct Kahan {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double result() const { return sum + comp; }
};

struct KahanC {
  Kahan re, im;
  void add(Complex z) { re.add(z.real()); im.add(z.imag()); }
  Complex result() const { return {re.result(), im.result()}; }
};

// ------------------------------------------------------------ parallelism

/// Runs fn(i) for i in [0, n) on up to `threads` workers (0 = hardware).
/// Deterministic as long as fn(i) writes only to slot i of shared output.
inline void parallel_for(std::size_t n, int threads,
                         const std::function<void(std::size_t)>& fn) {
  unsigned nw = threads > 0 ? static_cast<unsigned>(threads)
                            : std::max(1u, std::thread::hardware_concurrency());
  if (nw <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  nw = std::min<unsigned>(nw, static_cast<unsigned>(n));
  std::vector<std::thread> pool;
  pool.reserve(nw);
  std::atomic<std::size_t> counter{0};
  std::exception_ptr first_error = nullptr;
  std::mutex err_mtx;
  for (unsigned w = 0; w < nw; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = counter.fetch_add(1);
        if (i >= n) break;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(err_mtx);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace mz
