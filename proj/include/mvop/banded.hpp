#pragma once

// Square matrices with declared lower/upper bandwidths, stored densely.
// Entries outside the declared band are identically zero; every constructor
// and mutator enforces this.

#include <algorithm>
#include <vector>

#include "mvop/matrix.hpp"
#include "mvop/numeric.hpp"
#include "mvop/scalar_orthopoly.hpp"

namespace mvop {

template <class T>
class BandedMatrix {
public:
    BandedMatrix() = default;
    BandedMatrix(int size, int lower, int upper);

    /// Throws DomainError if any entry outside the band is nonzero.
    static BandedMatrix from_dense(const Matrix<T>& dense, int lower, int upper);

    int size() const { return size_; }
    int lower_bandwidth() const { return lower_; }
    int upper_bandwidth() const { return upper_; }
    int bandwidth() const { return std::max(lower_, upper_); }

    /// First and one-past-last column that may hold a nonzero in row i.
    int row_begin(int i) const { return std::max(0, i - lower_); }
    int row_end(int i) const { return std::min(size_, i + upper_ + 1); }
    bool in_band(int i, int j) const { return j - i <= upper_ && i - j <= lower_; }

    const T& operator()(int i, int j) const { return dense_(i, j); }
    /// Throws DomainError when (i, j) lies outside the band.
    void set(int i, int j, const T& value);
    void add(int i, int j, const T& value);

    const Matrix<T>& dense() const { return dense_; }

    friend bool operator==(const BandedMatrix& a, const BandedMatrix& b) { return a.dense_ == b.dense_; }

private:
    int size_ = 0;
    int lower_ = 0;
    int upper_ = 0;
    Matrix<T> dense_;
};

template <class T>
BandedMatrix<double> to_double(const BandedMatrix<T>& m) {
    return BandedMatrix<double>::from_dense(to_double(m.dense()), m.lower_bandwidth(), m.upper_bandwidth());
}

/// Theta(x) = alpha_0 + alpha_1 x + ... + alpha_m x^m, coefficients stored
/// in increasing degree.
template <class T>
struct ThetaPolynomial {
    std::vector<T> coefficients;

    int degree() const { return static_cast<int>(coefficients.size()) - 1; }
    T operator()(const T& x) const;
    T coefficient_sum() const;

    /// Throws DomainError on an empty coefficient list or zero leading
    /// coefficient; with `stochastic`, also when the coefficients do not sum to 1.
    void validate(bool stochastic = false, double tol = 1e-12) const;
};

template <class T>
ThetaPolynomial<T> cast_theta(const ThetaPolynomial<Rational>& theta) {
    ThetaPolynomial<T> out;
    for (const auto& c : theta.coefficients) out.coefficients.push_back(from_rational<T>(c));
    return out;
}

enum class Exec { serial, parallel };

namespace kernels {

// Band-aware product. Only entries inside the sum of the operand bands are
// computed. The parallel variant splits rows across OpenMP threads; each
// entry is accumulated in the same order as the serial one, so both return
// identical results.
template <class T>
BandedMatrix<T> band_multiply_serial(const BandedMatrix<T>& a, const BandedMatrix<T>& b);

template <class T>
BandedMatrix<T> band_multiply_parallel(const BandedMatrix<T>& a, const BandedMatrix<T>& b);

}  // namespace kernels

template <class T>
BandedMatrix<T> band_multiply(const BandedMatrix<T>& a, const BandedMatrix<T>& b, Exec exec = Exec::parallel) {
    return exec == Exec::parallel ? kernels::band_multiply_parallel(a, b) : kernels::band_multiply_serial(a, b);
}

/// Tridiagonal J with b on the diagonal, a above and c below it.
template <class T>
BandedMatrix<T> jacobi_matrix(const JacobiCoefficients<T>& coeffs);

/// Theta(M) by Horner's rule, one band product per degree. The result's
/// bandwidths are degree times those of M (clipped to size - 1).
template <class T>
BandedMatrix<T> theta_of_matrix(const ThetaPolynomial<T>& theta, const BandedMatrix<T>& m, Exec exec = Exec::parallel);

/// M^n by repeated band products.
template <class T>
BandedMatrix<T> matrix_power(const BandedMatrix<T>& m, int n, Exec exec = Exec::parallel);

/// Entries >= -tol and row sums within tol of 1 (exact comparison on the
/// rational backend).
template <class T>
bool is_stochastic(const BandedMatrix<T>& m, double tol = 1e-12);

}  // namespace mvop
