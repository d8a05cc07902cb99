#include "mvop/banded.hpp"

#include <string>

#include "mvop/errors.hpp"

namespace mvop {

template <class T>
BandedMatrix<T>::BandedMatrix(int size, int lower, int upper)
    : size_(size), lower_(lower), upper_(upper), dense_(static_cast<std::size_t>(size), static_cast<std::size_t>(size)) {
    if (size < 1) throw DomainError("banded matrix needs size >= 1");
    if (lower < 0 || upper < 0 || lower >= size || upper >= size)
        throw DomainError("bandwidth must lie in [0, size)");
}

template <class T>
BandedMatrix<T> BandedMatrix<T>::from_dense(const Matrix<T>& dense, int lower, int upper) {
    if (!dense.square()) throw DomainError("banded matrix must be square");
    BandedMatrix out(static_cast<int>(dense.rows()), lower, upper);
    for (int i = 0; i < out.size_; ++i)
        for (int j = 0; j < out.size_; ++j) {
            if (out.in_band(i, j)) {
                out.dense_(i, j) = dense(i, j);
            } else if (!is_zero(dense(i, j))) {
                throw DomainError("nonzero entry (" + std::to_string(i) + "," + std::to_string(j) +
                                  ") outside the declared band");
            }
        }
    return out;
}

template <class T>
void BandedMatrix<T>::set(int i, int j, const T& value) {
    if (!in_band(i, j)) {
        if (is_zero(value)) return;
        throw DomainError("write outside the declared band");
    }
    dense_(i, j) = value;
}

template <class T>
void BandedMatrix<T>::add(int i, int j, const T& value) {
    if (!in_band(i, j)) {
        if (is_zero(value)) return;
        throw DomainError("write outside the declared band");
    }
    dense_(i, j) += value;
}

template <class T>
T ThetaPolynomial<T>::operator()(const T& x) const {
    T acc(0);
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + *it;
    return acc;
}

template <class T>
T ThetaPolynomial<T>::coefficient_sum() const {
    T s(0);
    for (const auto& c : coefficients) s += c;
    return s;
}

template <class T>
void ThetaPolynomial<T>::validate(bool stochastic, double tol) const {
    if (coefficients.empty()) throw DomainError("polynomial has no coefficients");
    if (is_zero(coefficients.back())) throw DomainError("leading coefficient is zero");
    if (!stochastic) return;
    const T dev = magnitude(T(coefficient_sum() - T(1)));
    if ((is_exact_v<T> && !is_zero(dev)) || to_double(dev) > tol)
        throw DomainError("coefficients of a stochastic polynomial must sum to 1");
}

namespace kernels {
namespace {

template <class T>
BandedMatrix<T> product_shape(const BandedMatrix<T>& a, const BandedMatrix<T>& b) {
    if (a.size() != b.size()) throw DomainError("band product size mismatch");
    const int n = a.size();
    return BandedMatrix<T>(n, std::min(n - 1, a.lower_bandwidth() + b.lower_bandwidth()),
                           std::min(n - 1, a.upper_bandwidth() + b.upper_bandwidth()));
}

template <class T>
void product_row(const BandedMatrix<T>& a, const BandedMatrix<T>& b, BandedMatrix<T>& out, int i) {
    for (int j = out.row_begin(i); j < out.row_end(i); ++j) {
        const int k0 = std::max(a.row_begin(i), j - b.upper_bandwidth());
        const int k1 = std::min(a.row_end(i), j + b.lower_bandwidth() + 1);
        T s(0);
        for (int k = k0; k < k1; ++k) s += a(i, k) * b(k, j);
        out.set(i, j, s);
    }
}

}  // namespace

template <class T>
BandedMatrix<T> band_multiply_serial(const BandedMatrix<T>& a, const BandedMatrix<T>& b) {
    BandedMatrix<T> out = product_shape(a, b);
    for (int i = 0; i < out.size(); ++i) product_row(a, b, out, i);
    return out;
}

template <class T>
BandedMatrix<T> band_multiply_parallel(const BandedMatrix<T>& a, const BandedMatrix<T>& b) {
    BandedMatrix<T> out = product_shape(a, b);
    const int n = out.size();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) product_row(a, b, out, i);
    return out;
}

}  // namespace kernels

template <class T>
BandedMatrix<T> jacobi_matrix(const JacobiCoefficients<T>& coeffs) {
    const int n = coeffs.size();
    if (n < 1 || static_cast<int>(coeffs.a.size()) != n || static_cast<int>(coeffs.c.size()) != n)
        throw DomainError("malformed Jacobi coefficients");
    const int bw = n > 1 ? 1 : 0;
    BandedMatrix<T> out(n, bw, bw);
    for (int i = 0; i < n; ++i) {
        out.set(i, i, coeffs.b[i]);
        if (i + 1 < n) out.set(i, i + 1, coeffs.a[i]);
        if (i > 0) out.set(i, i - 1, coeffs.c[i]);
    }
    return out;
}

template <class T>
BandedMatrix<T> theta_of_matrix(const ThetaPolynomial<T>& theta, const BandedMatrix<T>& m, Exec exec) {
    if (theta.coefficients.empty()) throw DomainError("polynomial has no coefficients");
    const int n = m.size();
    BandedMatrix<T> acc(n, 0, 0);
    for (int i = 0; i < n; ++i) acc.set(i, i, theta.coefficients.back());
    for (int k = theta.degree() - 1; k >= 0; --k) {
        acc = band_multiply(acc, m, exec);
        for (int i = 0; i < n; ++i) acc.add(i, i, theta.coefficients[k]);
    }
    return acc;
}

template <class T>
BandedMatrix<T> matrix_power(const BandedMatrix<T>& m, int n, Exec exec) {
    if (n < 0) throw DomainError("negative matrix power");
    BandedMatrix<T> acc(m.size(), 0, 0);
    for (int i = 0; i < m.size(); ++i) acc.set(i, i, T(1));
    for (int k = 0; k < n; ++k) acc = band_multiply(acc, m, exec);
    return acc;
}

template <class T>
bool is_stochastic(const BandedMatrix<T>& m, double tol) {
    for (int i = 0; i < m.size(); ++i) {
        T row(0);
        for (int j = m.row_begin(i); j < m.row_end(i); ++j) {
            const T& v = m(i, j);
            if (is_exact_v<T> ? v < T(0) : to_double(v) < -tol) return false;
            row += v;
        }
        const T dev = magnitude(T(row - T(1)));
        if (is_exact_v<T> ? !is_zero(dev) : to_double(dev) > tol) return false;
    }
    return true;
}

#define MVOP_INSTANTIATE(T)                                                                               \
    template class BandedMatrix<T>;                                                                       \
    template struct ThetaPolynomial<T>;                                                                   \
    template BandedMatrix<T> kernels::band_multiply_serial<T>(const BandedMatrix<T>&, const BandedMatrix<T>&); \
    template BandedMatrix<T> kernels::band_multiply_parallel<T>(const BandedMatrix<T>&,                   \
                                                                const BandedMatrix<T>&);                  \
    template BandedMatrix<T> jacobi_matrix<T>(const JacobiCoefficients<T>&);                              \
    template BandedMatrix<T> theta_of_matrix<T>(const ThetaPolynomial<T>&, const BandedMatrix<T>&, Exec); \
    template BandedMatrix<T> matrix_power<T>(const BandedMatrix<T>&, int, Exec);                          \
    template bool is_stochastic<T>(const BandedMatrix<T>&, double);

MVOP_INSTANTIATE(double)
MVOP_INSTANTIATE(Extended)
MVOP_INSTANTIATE(Rational)
#undef MVOP_INSTANTIATE

}  // namespace mvop
