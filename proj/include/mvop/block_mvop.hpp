#pragma once

// Matrix-valued orthogonal polynomials attached to Theta(J).
//
// Theta(J), with J tridiagonal and deg Theta = m, is (2m+1)-diagonal and so
// block tridiagonal with m x m blocks:
//
//     row i:  ... C_i  B_i  A_i ...
//
// The block recurrence x P_j = A_j P_{j+1} + B_j P_j + C_j P_{j-1},
// P_{-1} = 0, P_0 = I, defines P_0..P_{L-1}. They are orthogonal for
//
//     <P, Q> = sum_x P(Theta(v_x)) W(x) Q(Theta(v_x))^T,
//     W(x)   = w_x v(x) v(x)^T,  v(x) = (p_0(v_x), ..., p_{m-1}(v_x)),
//
// with <P_j, P_k> = delta_jk diag(h_{mj}, ..., h_{mj+m-1}). The measure weight
// w_x enters once, through W.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mvop/banded.hpp"
#include "mvop/matrix.hpp"
#include "mvop/scalar_orthopoly.hpp"

namespace mvop {

template <class T>
struct BlockTridiagonal {
    int m = 0;
    int L = 0;
    std::vector<Matrix<T>> A;  // A[i], i = 0..L-2
    std::vector<Matrix<T>> B;  // B[i], i = 0..L-1
    std::vector<Matrix<T>> C;  // C[i], i = 0..L-1; C[0] is the zero block
};

template <class T>
struct MatrixPolynomial {
    int m = 0;
    std::vector<Matrix<T>> coeffs;  // coeffs[k] multiplies x^k

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    const Matrix<T>& leading() const { return coeffs.back(); }
    Matrix<T> operator()(const T& x) const;
};

/// Values of everything the finite inner product needs at each support point.
template <class T>
struct SupportTable {
    std::vector<T> theta_values;         // Theta(v_x)
    std::vector<std::vector<T>> poly;    // poly[x][n] = p_n(v_x)
    std::vector<T> weights;              // w_x
    std::vector<T> norms;                // h_n

    int points() const { return static_cast<int>(weights.size()); }
};

/// Evaluates theta and the scalar family on the measure support.
template <class T>
SupportTable<T> tabulate(const ThetaPolynomial<T>& theta, const ScalarFamily<T>& fam, const DiscreteMeasure<T>& mu);

/// Same, but with Theta(v_x) supplied (e.g. evaluated exactly elsewhere).
template <class T>
SupportTable<T> tabulate(std::vector<T> theta_values, const ScalarFamily<T>& fam, const DiscreteMeasure<T>& mu);

template <class T>
SupportTable<T> cast_table(const SupportTable<Rational>& exact) {
    SupportTable<T> out;
    for (const auto& v : exact.theta_values) out.theta_values.push_back(from_rational<T>(v));
    for (const auto& row : exact.poly) {
        std::vector<T> r;
        r.reserve(row.size());
        for (const auto& v : row) r.push_back(from_rational<T>(v));
        out.poly.push_back(std::move(r));
    }
    for (const auto& v : exact.weights) out.weights.push_back(from_rational<T>(v));
    for (const auto& v : exact.norms) out.norms.push_back(from_rational<T>(v));
    return out;
}

/// Splits M into m x m blocks. Throws PartitionError if m does not divide
/// the size or the bandwidth of M exceeds m.
template <class T>
BlockTridiagonal<T> block_partition(const BandedMatrix<T>& m, int block);

template <class T>
BandedMatrix<T> assemble(const BlockTridiagonal<T>& blocks);

/// alpha_m * a_{mi+j} * ... * a_{m(i+1)+j-1}: the (j,j) entry of A_i when the
/// blocks come from Theta(J).
template <class T>
T expected_a_diagonal(const ThetaPolynomial<T>& theta, const JacobiCoefficients<T>& coeffs, int m, int i, int j);

/// P_0..P_{L-1}. Throws IllConditionedBlock when some A_j is singular or,
/// on the real backend, its 1-norm condition number exceeds `cond_limit`.
template <class T>
std::vector<MatrixPolynomial<T>> mvop_sequence(const BlockTridiagonal<T>& blocks, double cond_limit = 1e12);

/// W(x) = w_x v(x) v(x)^T.
template <class T>
Matrix<T> weight_at(int x_index, const SupportTable<T>& table, int m);

template <class T>
Matrix<T> weight_at(int x_index, const ScalarFamily<T>& fam, const DiscreteMeasure<T>& mu, int m);

/// P(Theta(v_x)) v(x) as an m x 1 column. Since W(x) is rank one,
/// P(t) W(x) Q(t)^T = w_x (P(t) v(x)) (Q(t) v(x))^T; the inner product and
/// the block kernel use this form, which avoids squaring the (large) entries
/// of P(t).
template <class T>
Matrix<T> weight_vector_image(const MatrixPolynomial<T>& p, int x_index, const SupportTable<T>& table);

template <class T>
Matrix<T> inner_product(const MatrixPolynomial<T>& p, const MatrixPolynomial<T>& q, const SupportTable<T>& table);

template <class T>
Matrix<T> inner_product(const MatrixPolynomial<T>& p, const MatrixPolynomial<T>& q, const ThetaPolynomial<T>& theta,
                        const ScalarFamily<T>& fam, const DiscreteMeasure<T>& mu);

/// H_j = diag(h_{mj}, ..., h_{mj+m-1}).
template <class T>
Matrix<T> norm_block(const std::vector<T>& norms, int m, int j);

/// max_x |P_j(Theta(v_x)) v_0(x) - v_j(x)| with v_j(x) = (p_{mj}, ..., p_{mj+m-1})(v_x).
template <class T>
T scalar_link_check(int j, const std::vector<MatrixPolynomial<T>>& sequence, const SupportTable<T>& table);

/// A commutant element T = X + iY, stored as its real and imaginary parts.
template <class T>
struct CommutantElement {
    Matrix<T> real;
    Matrix<T> imag;
};

/// Basis of {T : T W = W T^*} over the given real symmetric weights. On the
/// real backend, entries below tol times the largest weight entry are zero.
template <class T>
std::vector<CommutantElement<T>> commutant(const std::vector<Matrix<T>>& weights, double tol = 1e-10);

/// Commutant of the weights W(v_x) over the whole support.
template <class T>
std::vector<CommutantElement<T>> commutant(const ScalarFamily<T>& fam, const DiscreteMeasure<T>& mu, int m,
                                           double tol = 1e-10);

enum class NormVerdict { diagonal, inconclusive };

struct NormPairResult {
    int i = 0;
    int j = 0;
    bool constant = false;
};

struct NormRatioReport {
    std::vector<NormPairResult> pairs;
    NormVerdict verdict = NormVerdict::inconclusive;
};

/// Checks, for each pair i < j in 0..m-1, whether h_{mn+i} / h_{mn+j} is
/// constant over the available n. If no ratio is constant every T with
/// T H_n = H_n T^* is real diagonal. Throws DomainError with fewer than two
/// block rows of norms. Real backend: relative tolerance `rel_tol`.
template <class T>
NormRatioReport norm_ratio_test(const std::vector<T>& norms, int m, double rel_tol = 1e-12);

std::string to_string(NormVerdict v);

}  // namespace mvop
