// Reference values for the test suites.
// Generated by tools/gen_reference.py (mpmath); do not edit by hand.
#pragma once

namespace ref {

inline constexpr double kEulerGamma = 0.577215664901532860607;  // Euler-Mascheroni constant
inline constexpr double kLog2Pi = 1.83787706640934548356;
inline constexpr double kC1Target = -0.683445736606279762348;  // 2*gamma - log(2*pi)
inline constexpr double kLogGammaHalf = 0.572364942924700087072;  // log sqrt(pi)
inline constexpr double kLogGamma_1p5_3i_re = -2.68113867467405626058;
inline constexpr double kLogGamma_1p5_3i_im = 1.71546692046670894701;
inline constexpr double kLogGamma_q_50i_re = -78.598880432701842504;
inline constexpr double kLogGamma_q_50i_im = 145.208659524257228333;
inline constexpr double kLogGamma_m2p5_4i_re = -9.76154677268924262428;
inline constexpr double kLogGamma_m2p5_4i_im = -4.19848108128607563211;
inline constexpr double kTheta_20 = 1.18689480844448404481;  // Riemann-Siegel theta
inline constexpr double kTheta_100 = 87.9721652317872196255;  // Riemann-Siegel theta
inline constexpr double kTheta_1000 = 2034.5464280380316087;  // Riemann-Siegel theta
inline constexpr double kTheta_100000 = 433752.027229170781436;  // Riemann-Siegel theta
inline constexpr double kZetaHalf = -1.46035450880958681289;  // zeta(1/2)
inline constexpr double kZetaHalf50i_re = -0.0817121083209799750482;
inline constexpr double kZetaHalf50i_im = 0.330792194038661295588;
inline constexpr double kZ_2_5 = -0.526283003737937610216;  // Z(2.5)
inline constexpr double kZ_14_0 = -0.105626267779882610139;  // Z(14.0)
inline constexpr double kZ_14_2 = 0.0520452717155649396125;  // Z(14.2)
inline constexpr double kZ_20_0 = 1.14784241218519727764;  // Z(20.0)
inline constexpr double kZ_50_0 = -0.340735005955024982753;  // Z(50.0)
inline constexpr double kZ_100_0 = 2.692697056664463475;  // Z(100.0)
inline constexpr double kZ_500_5 = -0.702640016899309815702;  // Z(500.5)
inline constexpr double kZ_1000_25 = 2.04103300069596860752;  // Z(1000.25)
inline constexpr double kZ_5000_125 = -0.384402353594389342484;  // Z(5000.125)
inline constexpr double kZ_12345_6789 = -0.874467608359698288035;  // Z(12345.6789)
inline constexpr double kZ_100000_0 = 5.87959246868176504155;  // Z(100000.0)
inline constexpr double kH0 = 1.24292286160114579538;  // int_0^1 |zeta(1/2+iy)|^2 dy
inline constexpr double kE10 = 3.7913410740413333147;  // E(10)
inline constexpr double kL1At50 = 0.0425272032034581199907;  // int_0^inf Z(x)^2 exp(-50 x) dx
inline constexpr double kZsqX2Int_1_1e4 = 0.677688357192;  // int_1^1e4 Z(x)^2 x^-2 dx, composite GL10, fp.siegelz

}  // namespace ref
