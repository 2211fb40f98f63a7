#include <filesystem>
#include <cmath>

#include "doctest.h"
#include "mz/config.hpp"
#include "mz/mean_square.hpp"
#include "reference_values.hpp"

using namespace mz;

namespace {
MeanSquareGrid& shared_grid() {
  static MeanSquareGrid grid(0.25, MeanSquareGrid::grid_zeta_options(), 2);
  return grid;
}
DivisorTable& shared_dtable() {
  static DivisorTable dt = divisor_sieve(20000);
  return dt;
}
}  // namespace

TEST_CASE("main term") {
  CHECK(main_term(kTwoPi) ==
        doctest::Approx(kTwoPi * (2.0 * kEulerGamma - 1.0)).epsilon(1e-15));
  CHECK(main_term(1e-12) == doctest::Approx(0.0).epsilon(1e-10));
  // direct arithmetic spot value
  CHECK(main_term(100.0) ==
        doctest::Approx(100.0 * (std::log(100.0 / kTwoPi) + 2.0 * kEulerGamma - 1.0))
            .epsilon(1e-15));
  CHECK(main_term(100.0) == doctest::Approx(292.19).epsilon(1e-4));
}

TEST_CASE("E at reference points") {
  auto& g = shared_grid();
  g.ensure(60.0);
  CHECK(g.E(0.0).value == 0.0);
  Eval e10 = g.E(10.0);
  CHECK(std::abs(e10.value - ref::kE10) <= 1e-8);
  CHECK(std::abs(e10.value - ref::kE10) <= 10.0 * std::max(e10.abs_err, 1e-12));
  // two-path consistency: prefix through grid vs direct adaptive quadrature
  QuadSpec spec;
  spec.rel_tol = 1e-10;
  ZetaOptions zo = MeanSquareGrid::grid_zeta_options();
  auto zsq = [&](double x) {
    Eval z = hardy_Z(x, zo);
    return z.value * z.value;
  };
  QuadSpec os = spec;
  os.osc_freq_hint = 2.0;
  Eval direct = integrate(zsq, 0.0, 50.0, os);
  Eval viagrid = g.zsq_prefix(50.0);
  CHECK(std::abs(direct.value - viagrid.value) <=
        10.0 * (direct.abs_err + viagrid.abs_err + 1e-12));
}

TEST_CASE("phases") {
  CHECK(std::asinh(0.0) == 0.0);
  // g at n = T/(2 pi) -> -T + pi/4
  double T = 400.0;
  double n_at = T / kTwoPi;  // not integral, evaluate the formula directly
  CHECK(T * std::log(T / (kTwoPi * n_at)) - T + kPi / 4.0 ==
        doctest::Approx(-T + kPi / 4.0));
  CHECK_THROWS_AS(g_phase(10.0, 10), DomainError);
  // f ~ sqrt(8 pi n T) - pi/4 for T/n large
  double diff = f_phase(1e6, 1) - (std::sqrt(8.0 * kPi * 1e6) - kPi / 4.0);
  CHECK(std::abs(diff) < 1e-2);
  // monotone in n for fixed T
  double prev = f_phase(1000.0, 1);
  for (long n = 2; n <= 100; ++n) {
    double cur = f_phase(1000.0, n);
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("explicit formula parameters") {
  GExplicitParams p{1000.0, 1000};
  double np = p.n_prime();
  CHECK(np < 1000.0 / kTwoPi);
  // stable form agrees with the textbook form at moderate N
  double naive = 1000.0 / kTwoPi + 500.0 - std::sqrt(250000.0 + 1000.0 * 1000.0 / kTwoPi);
  CHECK(np == doctest::Approx(naive).epsilon(1e-10));
  CHECK_THROWS_AS((GExplicitParams{1000.0, 100}.validate()), DomainError);
  CHECK_THROWS_AS((GExplicitParams{1000.0, 3000}.validate()), DomainError);
}

TEST_CASE("G_explicit consistency with quadrature") {
  auto& g = shared_grid();
  auto& dt = shared_dtable();
  g.ensure(5100.0);
  for (double T : {1000.0, 5000.0}) {
    Eval gq = g.G(T);
    Eval ge = G_explicit({T, static_cast<long>(T)}, dt);
    INFO("T = ", T);
    CHECK(std::abs(gq.value - ge.value) <= 20.0 * std::pow(T, 0.25) * std::log(T));
    // N-stability: N = T vs N = 1.5 T moves the result on the remainder scale
    Eval ge2 = G_explicit({T, static_cast<long>(1.5 * T)}, dt);
    CHECK(std::abs(ge.value - ge2.value) <= 20.0 * std::pow(T, 0.25) * std::log(T));
  }
  // S2 empty when N' < 1
  GExplicitParams tiny{20.0, 25};
  CHECK(tiny.n_prime() < 1.0);
  CHECK_NOTHROW(G_explicit(tiny, dt));
}

TEST_CASE("G_series basics") {
  auto& dt = shared_dtable();
  double T = 700.0;
  // single term: -2^{-1/4} pi^{-3/4} T^{3/4} sin(sqrt(8 pi T) - pi/4)
  Eval g1 = G_series(T, 1, dt);
  double expect = -std::pow(2.0, -0.25) * std::pow(kPi, -0.75) * std::pow(T, 0.75) *
                  std::sin(std::sqrt(8.0 * kPi * T) - kPi / 4.0);
  CHECK(g1.value == doctest::Approx(expect).epsilon(1e-13));
  // M-convergence: doubling M stays within the declared tail bound at M
  Eval a = G_series(T, 400, dt);
  Eval b = G_series(T, 800, dt);
  CHECK(std::abs(a.value - b.value) <= a.abs_err);
  // agreement with quadrature within the paper-scale remainder at T = 1000
  auto& g = shared_grid();
  g.ensure(1100.0);
  Eval gq = g.G(1000.0);
  Eval gs = G_series(1000.0, 10000, dt);
  CHECK(std::abs(gq.value - gs.value) <=
        20.0 * std::pow(1000.0, 2.0 / 3.0) * std::log(1000.0));
}

TEST_CASE("three-way consistency of G") {
  auto& g = shared_grid();
  auto& dt = shared_dtable();
  g.ensure(5100.0);
  for (double T : {200.0, 1000.0, 5000.0}) {
    Eval gq = g.G(T);
    Eval ge = G_explicit({T, static_cast<long>(T)}, dt);
    Eval gs = G_series(T, 10000, dt);
    INFO("T = ", T);
    CHECK(std::abs(gq.value - ge.value) <= gq.abs_err + ge.abs_err);
    CHECK(std::abs(gq.value - gs.value) <= gq.abs_err + gs.abs_err);
    CHECK(std::abs(ge.value - gs.value) <= ge.abs_err + gs.abs_err);
  }
}

TEST_CASE("calibration envelopes hold on the grid") {
  auto& g = shared_grid();
  g.ensure(12000.0);
  double ce = 0.0, cg = 0.0, cg1 = 0.0;
  for (std::size_t i = 4; i <= g.cells(); ++i) {
    double x = g.node_x(i);
    ce = std::max(ce, std::abs(g.node_E(i)) / std::pow(x, calib::kCEExponent));
    cg = std::max(cg, std::abs(g.node_G(i)) / std::pow(x, 0.75));
  }
  for (double T = 10.0; T <= 12000.0; T *= 1.1)
    cg1 = std::max(cg1, std::abs(g.G1(T).value) / std::pow(T, 1.25));
  CHECK(ce <= calib::kCE);
  CHECK(cg <= calib::kCG);
  CHECK(cg1 <= calib::kCG1);
  // series deviation model
  auto& dt = shared_dtable();
  double cdev = 0.0;
  for (double T = 50.0; T <= 10000.0; T *= 1.21) {
    Eval gs = G_series(T, 10000, dt);
    Eval gq = g.G(T);
    cdev = std::max(cdev, std::abs(gs.value - gq.value) /
                              (std::pow(T, 2.0 / 3.0) * std::log(T)));
  }
  CHECK(cdev <= calib::kSeriesDev);
}

TEST_CASE("G growth and oscillation") {
  auto& g = shared_grid();
  g.ensure(10000.0);
  double supg = 0.0, supg1 = 0.0;
  int flips = 0;
  double prev = 0.0;
  for (double T = 10.0; T <= 10000.0; T *= 1.02) {
    double gv = g.G(T).value;
    supg = std::max(supg, std::abs(gv) / std::pow(T, 0.75));
    supg1 = std::max(supg1, std::abs(g.G1(T).value) / std::pow(T, 1.25));
    if (prev != 0.0 && (gv < 0.0) != (prev < 0.0)) ++flips;
    prev = gv;
  }
  CHECK(supg <= 5.0);
  CHECK(supg1 <= 5.0);
  CHECK(flips >= 3);
  CHECK(g.G(0.0).value == 0.0);
  CHECK(g.G1(0.0).value == 0.0);
}

TEST_CASE("E mean square growth ~ sqrt(T)") {
  auto& g = shared_grid();
  g.ensure(10000.0);
  QuadSpec qs;
  qs.rel_tol = 1e-6;
  qs.abs_tol = 1e-3;
  auto esq = [&](double t) {
    double e = g.E(t).value;
    return e * e;
  };
  double r3 = integrate(esq, 0.0, 1000.0, qs).value / 1000.0 / std::sqrt(1000.0);
  double r4 = integrate(esq, 0.0, 10000.0, qs).value / 10000.0 / std::sqrt(10000.0);
  CHECK(r3 > 0.0);
  CHECK(r4 > 0.0);
  CHECK(r4 / r3 < 2.0);   // approaches a constant: same order at both scales
  CHECK(r4 / r3 > 0.5);
}

TEST_CASE("find_E_zero certifies brackets") {
  auto& g = shared_grid();
  for (double T : {100.0, 500.0}) {
    EZeroRecord r = g.find_E_zero(T, 10.0);
    INFO("T = ", T);
    CHECK(r.T_anchor <= r.x_lo);
    CHECK(r.x_lo <= r.x_hi);
    CHECK(r.x_hi <= T + 10.0 * std::sqrt(T) + 0.5);
    if (r.x_lo < r.x_hi) CHECK(g.E(r.x_lo).value * g.E(r.x_hi).value < 0.0);
    double scale = 1.0 + std::abs(g.E(r.T_anchor).value);
    CHECK(r.residual <= 1e-6 * scale);
    // independent re-evaluation at half step keeps the residual small
    MeanSquareGrid fine(0.125, MeanSquareGrid::grid_zeta_options(), 2);
    fine.ensure(r.x_star + 1.0);
    CHECK(std::abs(fine.E(r.x_star).value) <= 10.0 * std::max(r.residual, 1e-7));
  }
}

TEST_CASE("E zero cache roundtrip") {
  const std::string path = "test_ezeros.csv";
  std::remove(path.c_str());
  {
    EZeroCache c(path);
    c.append({100.0, 10.0, 0.0, 0.0, 103.477, 1e-9});
    c.append({500.0, 10.0, 0.0, 0.0, 502.19, 2e-9});
  }
  EZeroCache c2(path);
  REQUIRE(c2.records().size() == 2);
  auto hit = c2.find_near(103.5, 1.0);
  REQUIRE(hit.has_value());
  CHECK(hit->x_star == 103.477);
  CHECK(!c2.find_near(200.0, 1.0).has_value());
  std::remove(path.c_str());
}

TEST_CASE("grid csv cache roundtrip") {
  MeanSquareGrid g(0.25, MeanSquareGrid::grid_zeta_options(), 2);
  g.ensure(30.0);
  const std::string dir = "test_msgrid_cache";
  g.save_cache(dir);
  MeanSquareGrid h(0.25, MeanSquareGrid::grid_zeta_options(), 2);
  REQUIRE(h.load_cache(dir));
  CHECK(h.cells() == g.cells());
  CHECK(h.E(25.0).value == g.E(25.0).value);
  CHECK(h.G(25.0).value == g.G(25.0).value);
  std::filesystem::remove_all(dir);
}
