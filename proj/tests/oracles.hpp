#pragma once

// Independent reference computations for the test suites. Nothing here
// calls the recurrence, band, or MVOP code under test.

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "mvop/matrix.hpp"
#include "mvop/numeric.hpp"

namespace oracle {

using mvop::Matrix;
using mvop::Rational;

/// K_n(x) = 2F1(-n, -x; -N; 2) = sum_k (-n)_k (-x)_k / ((-N)_k k!) 2^k.
inline Rational krawtchouk_hypergeometric(int n, int x, int N) {
    Rational sum = 0;
    Rational term = 1;
    for (int k = 0; k <= n; ++k) {
        sum += term;
        // term_{k+1} / term_k = (-n+k)(-x+k) 2 / ((-N+k)(k+1))
        if (k == n) break;
        if (-N + k == 0) break;
        term *= Rational((-n + k) * (-x + k) * 2);
        term /= Rational((-N + k) * (k + 1));
    }
    return sum;
}

/// k-ball transition matrix by enumerating every k-subset of N labelled
/// balls; balls 0..i-1 sit in urn A.
inline Matrix<Rational> k_ball_by_enumeration(int N, int k) {
    Matrix<Rational> out(N + 1, N + 1);
    std::vector<std::uint32_t> subsets;
    for (std::uint32_t mask = 0; mask < (1u << N); ++mask)
        if (__builtin_popcount(mask) == k) subsets.push_back(mask);
    const Rational each = Rational(1) / Rational(static_cast<long>(subsets.size()));
    for (int i = 0; i <= N; ++i) {
        const std::uint32_t in_a = i == 0 ? 0u : ((1u << i) - 1u);
        for (auto mask : subsets) {
            const int leave_a = __builtin_popcount(mask & in_a);
            const int enter_a = k - leave_a;
            out(i, i - leave_a + enter_a) += each;
        }
    }
    return out;
}

inline Matrix<Rational> q_deformed_by_enumeration(int N, const Rational& q) {
    Matrix<Rational> out = k_ball_by_enumeration(N, 1) * Rational(1 - q);
    out += k_ball_by_enumeration(N, 2) * q;
    return out;
}

/// Plain triple-loop matrix power.
template <class T>
Matrix<T> dense_power(const Matrix<T>& m, int n) {
    const std::size_t s = m.rows();
    Matrix<T> acc = Matrix<T>::identity(s);
    for (int p = 0; p < n; ++p) {
        Matrix<T> next(s, s);
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = 0; j < s; ++j) {
                T v(0);
                for (std::size_t k = 0; k < s; ++k) v += acc(i, k) * m(k, j);
                next(i, j) = v;
            }
        acc = next;
    }
    return acc;
}

/// Dimension of {T = X + iY : T W = W T^* for all W} via the rank of the
/// linear map T -> (T W_x - W_x T^*)_x, assembled column by column from
/// elementary matrices and ranked with a full-pivot LU.
inline int commutant_dimension(const std::vector<Eigen::MatrixXd>& weights) {
    const int m = static_cast<int>(weights.front().rows());
    const int unknowns = 2 * m * m;
    const int eqs_per_weight = 2 * m * m;  // real and imaginary parts
    Eigen::MatrixXd map(eqs_per_weight * static_cast<int>(weights.size()), unknowns);
    for (int u = 0; u < unknowns; ++u) {
        const bool imag = u >= m * m;
        const int idx = u % (m * m);
        Eigen::MatrixXd e = Eigen::MatrixXd::Zero(m, m);
        e(idx / m, idx % m) = 1.0;
        int row = 0;
        for (const auto& w : weights) {
            // T = e (real) or i e (imag); T^* = e^T or -i e^T.
            Eigen::MatrixXd re = imag ? Eigen::MatrixXd::Zero(m, m) : Eigen::MatrixXd(e * w - w * e.transpose());
            Eigen::MatrixXd im = imag ? Eigen::MatrixXd(e * w + w * e.transpose()) : Eigen::MatrixXd::Zero(m, m);
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) {
                    map(row++, u) = re(a, b);
                    map(row++, u) = im(a, b);
                }
        }
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(map);
    lu.setThreshold(1e-10);
    return unknowns - static_cast<int>(lu.rank());
}

}  // namespace oracle
