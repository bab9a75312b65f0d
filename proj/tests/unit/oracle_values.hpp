#pragma once

// Reference values computed at 40+ digits by tests/oracles/derive_values.py
// (mpmath, independent of the library). Rounded to double.

namespace oracle {

inline constexpr double g0 = 0.6180339887498948482;
inline constexpr double g1 = 0.8922566203460570388;
inline constexpr double g_prime0 = 0.3416407864998738178;
inline constexpr double p0_0 = 0.2902288194345508716;
inline constexpr double tilde_p_half_h0_J1 = 0.0402288194345508716;

// (h, J) = (0.2, 0.5)
inline constexpr double m_star = 0.7685922287442880797;
inline constexpr double sigma2 = 0.4062121118253385840;
inline constexpr double pressure_limit = 0.3207160478992679844;

inline constexpr double h_c = -0.3441132032297988579;
inline constexpr double J_c = 1.4571067811865475244;
inline constexpr double m_c = 0.5857864376269049512;
inline constexpr double lambda_c = -24.020815280171307915;

inline constexpr double Z4_h0_J1 = 1.7393191617571634824;

// Coexistence point at J = 2.
inline constexpr double gamma2_h = -0.41281739308863945518;
inline constexpr double gamma2_m1 = 0.15094086096055860579;
inline constexpr double gamma2_m2 = 0.94043349541640636913;
inline constexpr double gamma2_lambda1 = -1.7820898899816486625;
inline constexpr double gamma2_lambda2 = -2.3081885394313740955;
inline constexpr double gamma2_rho1 = 0.46280125957869263173;

// Coexistence point at J = 50: h = -1/2 + 1.17e-22.
inline constexpr double gamma50_h = -0.5;
inline constexpr double gamma50_rho1 = 0.41421356237309504880;

}  // namespace oracle
