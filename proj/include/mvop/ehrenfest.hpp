#pragma once

// Ehrenfest urn models on states 0..N (balls in urn A):
//
//   classical   M_0, one uniformly chosen ball switches urn;
//   q_deformed  M_q = q J_2 + (1 - q) J_1 (two balls with probability q);
//   k_ball      J_k, k distinct balls switch urn;
//   multi_ball  sum_i q_i J_{k_i}.
//
// Every model is Theta(M_0) for a polynomial Theta, so all share the
// eigenvectors of M_0 and have eigenvalues Theta(1 - 2j/N). For the k-ball
// model Theta(x) = K_k(-N(x - 1)/2) with K_k the symmetric Krawtchouk
// polynomial.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mvop/banded.hpp"
#include "mvop/numeric.hpp"

namespace mvop {

enum class ModelKind { classical, q_deformed, k_ball, multi_ball };

struct ModelSpec {
    int N = 1;
    ModelKind kind = ModelKind::classical;
    Rational q = 0;               // q_deformed
    int k = 1;                    // k_ball
    std::vector<Rational> qvec;   // multi_ball
    std::vector<int> kvec;        // multi_ball

    static ModelSpec classical(int N);
    static ModelSpec q_deformed(int N, Rational q);
    static ModelSpec k_ball(int N, int k);
    static ModelSpec multi_ball(int N, std::vector<Rational> qvec, std::vector<int> kvec);

    /// Throws DomainError on N < 1, q outside [0, 1], N < 2 for q_deformed,
    /// k outside [1, N], or a qvec that is not a probability vector.
    void validate() const;

    /// The model as a mixture of k-ball moves: (k, weight) pairs with
    /// positive weights, sorted by k, duplicate k merged.
    std::vector<std::pair<int, Rational>> mixture() const;

    /// Degree of Theta, which is also the MVOP block size.
    int degree() const;

    std::string describe() const;
};

/// J_k from the binomial transition law: from state i, l of the k moved
/// balls come from urn B with probability C(i, k-l) C(N-i, l) / C(N, k).
/// k = 0 gives the identity.
template <class T>
BandedMatrix<T> k_ball_matrix(int N, int k);

/// The q-deformed matrix written entry by entry:
///   (i, i-2): q i(i-1)/(N(N-1))      (i, i-1): (1-q) i/N
///   (i, i):   2q i(N-i)/(N(N-1))
///   (i, i+1): (1-q)(N-i)/N           (i, i+2): q (N-i)(N-i-1)/(N(N-1))
template <class T>
BandedMatrix<T> q_deformed_matrix(int N, const Rational& q);

/// Transition matrix of the model, built from the transition law (not from
/// Theta). Throws DomainError if the result is not stochastic.
template <class T>
BandedMatrix<T> build(const ModelSpec& spec);

/// Theta with Theta(M_0) = build(spec), in the monomial basis. Coefficients
/// are derived exactly and rounded once on the real backend.
template <class T>
ThetaPolynomial<T> theta_for(const ModelSpec& spec);

/// Exact Theta for the mixture, from (N - j) p_{j+1} = N x p_j - j p_{j-1}.
ThetaPolynomial<Rational> exact_theta(const ModelSpec& spec);

/// max |(k - N) J_{k+1} - k J_{k-1} + N J_1 J_k| over k = 1..kmax-1.
/// Requires 1 <= kmax <= N.
template <class T>
T jk_recurrence_check(int N, int kmax);

/// max |J_k - Theta_k(M_0)| with Theta_k(x) = K_k(-N(x - 1)/2).
template <class T>
T jk_krawtchouk_check(int N, int k);

template <class T>
struct SpectrumReport {
    std::vector<T> lambdas;       // lambda_j = 1 - 2j/N, eigenvalues of M_0
    std::vector<T> eigenvalues;   // Theta(lambda_j)
    std::vector<int> class_of;    // smallest index with the same eigenvalue
    std::vector<std::vector<int>> classes;
    T gap = T(0);                 // spectral_gap(...).gap_excluding_one

    int count_repeated() const;   // classes with at least two members
    int max_multiplicity() const;
};

/// Analytic spectrum Theta(lambda_j), j = 0..N, by direct substitution.
/// Evaluation is exact; the real backend rounds the exact values once and
/// clusters them with |a - b| < 1e-9 max(1, |a|). The exact backend
/// compares exactly.
template <class T>
SpectrumReport<T> spectrum(const ModelSpec& spec);

/// The closed form printed alongside the quadratic Theta,
/// 2q(N-j)(N-2j-1)/(N(N-1)) + (2j-N)/N. It equals Theta(lambda_{N-j}):
/// the index runs in the opposite direction to lambda_j = 1 - 2j/N.
Rational q_deformed_closed_form(int N, const Rational& q, int j);

template <class T>
struct GapReport {
    T gap_excluding_one = T(0);         // 1 - max_{j >= 1} |eigenvalue_j|
    T gap_excluding_unimodular = T(0);  // 1 - max{|eigenvalue| : |eigenvalue| != 1}
};

/// The trivial eigenvalue Theta(lambda_0) = 1 is excluded by index, so a
/// repeated eigenvalue 1 (a reducible chain) gives gap_excluding_one = 0.
template <class T>
GapReport<T> spectral_gap(const SpectrumReport<T>& report);

/// Omega(N) = {(3 - 2i/(N-1))^-1 : i = 0..N-1}, in order of i.
std::vector<Rational> omega_set(int N);

struct MultiplicityReport {
    bool in_omega = false;
    std::optional<int> i;
    int predicted_doubles = 0;
    int observed_doubles = 0;
    int max_multiplicity = 1;
};

/// Membership of q in Omega(N), the predicted number of double eigenvalues
/// of M_q (i even: i/2 + 1, i odd: (i+1)/2, q outside Omega: 0) and the
/// count observed in the exact spectrum.
MultiplicityReport multiplicity_report(int N, const Rational& q);

/// pi_m = C(N, m) 2^-N.
template <class T>
std::vector<T> stationary(int N);

/// max_j |(pi M)_j - pi_j|.
template <class T>
T stationarity_defect(const BandedMatrix<T>& m, const std::vector<T>& pi);

/// max_{i,j} |pi_i M_ij - pi_j M_ji|.
template <class T>
T reversibility_defect(const BandedMatrix<T>& m, const std::vector<T>& pi);

/// Eigenvalues (ascending) of a pi-reversible stochastic matrix via the
/// symmetric matrix D^1/2 M D^-1/2, D = diag(pi), and a dense symmetric
/// eigensolver. Independent of the analytic route; used as a cross-check.
std::vector<double> numeric_eigenvalues(const BandedMatrix<double>& m, const std::vector<double>& pi);

}  // namespace mvop
