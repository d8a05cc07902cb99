#pragma once

// Scalar orthogonal polynomials defined by a three-term recurrence
//
//     x p_n(x) = a_n p_{n+1}(x) + b_n p_n(x) + c_n p_{n-1}(x),  p_0 = 1, p_{-1} = 0,
//
// finitely supported orthogonality measures, and Gram-matrix checks.
//
// Norm convention: measures are probability measures, and the norm h_n is the
// diagonal Gram entry sum_x p_n(v_x)^2 w_x. Hence h_0 = 1, and for the
// Ehrenfest family h_n = 1 / C(N, n).

#include <vector>

#include "mvop/matrix.hpp"
#include "mvop/numeric.hpp"

namespace mvop {

template <class T>
struct JacobiCoefficients {
    std::vector<T> a;  // superdiagonal; a[size-1] is unused (0 by convention)
    std::vector<T> b;  // diagonal
    std::vector<T> c;  // subdiagonal; c[0] is unused (0 by convention)
    bool stochastic = false;

    int size() const { return static_cast<int>(b.size()); }

    /// Throws DomainError when lengths disagree, a_n <= 0 (n < size-1),
    /// c_n <= 0 (n >= 1), or, for stochastic data, a row does not sum to 1.
    void validate(double tol = 1e-12) const;
};

template <class T>
struct DiscreteMeasure {
    std::vector<T> points;
    std::vector<T> weights;

    int size() const { return static_cast<int>(points.size()); }

    /// Throws DomainError unless weights are nonnegative, sum to 1 within
    /// tol, and points are pairwise distinct.
    void validate(double tol = 1e-12) const;
};

template <class T>
struct ScalarFamily {
    JacobiCoefficients<T> coeffs;
    std::vector<T> norms;
};

template <class T>
struct GramReport {
    Matrix<T> gram;
    T max_offdiag_deviation = T(0);
    std::vector<T> norms;
    bool orthogonal = false;
};

/// Symmetric (p = 1/2) Krawtchouk polynomial K_j(x) for parameter N, by the
/// forward recurrence (N - j) K_{j+1} = (N - 2x) K_j - j K_{j-1}.
/// Throws DomainError unless 0 <= j <= N.
template <class T>
T krawtchouk_eval(int j, const T& x, int N);

/// p_n(x) from the recurrence. Throws DomainError for n outside
/// [0, size-1] and SingularRecurrence when a needed a_k vanishes.
template <class T>
T poly_eval_by_recurrence(const JacobiCoefficients<T>& coeffs, int n, const T& x);

/// p_0(x), ..., p_{size-1}(x) in one sweep.
template <class T>
std::vector<T> poly_values(const JacobiCoefficients<T>& coeffs, const T& x);

/// Recurrence data of the classical Ehrenfest chain (the matrix M_0):
/// a_n = (N - n)/N, b_n = 0, c_n = n/N.
template <class T>
JacobiCoefficients<T> ehrenfest_coefficients(int N);

/// Points 1 - 2x/N and binomial weights C(N, x) 2^-N, x = 0..N.
template <class T>
DiscreteMeasure<T> ehrenfest_measure(int N);

/// Full Gram matrix G_nm = sum_x p_n(v_x) p_m(v_x) w_x of the first
/// coeffs.size() polynomials. Requires coeffs.size() <= mu.size().
template <class T>
GramReport<T> gram_check(const JacobiCoefficients<T>& coeffs, const DiscreteMeasure<T>& mu, double tol);

template <class T>
GramReport<T> gram_check(const ScalarFamily<T>& fam, const DiscreteMeasure<T>& mu, double tol) {
    return gram_check(fam.coeffs, mu, tol);
}

/// Family with norms taken from the Gram diagonal.
template <class T>
ScalarFamily<T> make_family(const JacobiCoefficients<T>& coeffs, const DiscreteMeasure<T>& mu);

}  // namespace mvop
