#pragma once

#include <string>
#include <vector>

#include "mvop/numeric.hpp"

namespace mvop {

struct CheckResult {
    std::string name;
    double deviation = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

/// Identity suites for the q-deformed model (N, q) and the k-ball family of
/// size N:
///   theta_polynomial      build(q_deformed) == Theta_q(M_0)
///   scalar_matrix_link    P_j(Theta(v_x)) v_0(x) == v_j(x) at every support point
///   mvop_orthogonality    <P_j, P_k> == delta_jk H_j, H_j from the Gram diagonal
///   k_ball_recurrence     (k - N) J_{k+1} == k J_{k-1} - N J_1 J_k, k < N
///   k_ball_krawtchouk     J_k == K_k(-N(J_1 - 1)/2), 0 <= k <= N
///   karlin_mcgregor       scalar and block spectral sums == direct powers, n <= max_power
///   stationarity          pi M == pi and detailed balance
/// The MVOP suites need deg Theta to divide N + 1 and are skipped otherwise.
/// Exact backend: every deviation must be 0. Real backend: <= 1e-10, with
/// the MVOP and block suites evaluated in Extended.
template <class T>
std::vector<CheckResult> run_identity_checks(int N, const Rational& q, int max_power = 10);

}  // namespace mvop
