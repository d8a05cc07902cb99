#include "mvop/scalar_orthopoly.hpp"

#include <string>

#include "mvop/errors.hpp"

namespace mvop {

template <class T>
void JacobiCoefficients<T>::validate(double tol) const {
    const int n = size();
    if (n < 1) throw DomainError("Jacobi coefficients need at least one state");
    if (static_cast<int>(a.size()) != n || static_cast<int>(c.size()) != n)
        throw DomainError("Jacobi coefficient sequences differ in length");
    for (int i = 0; i + 1 < n; ++i)
        if (!(a[i] > T(0))) throw DomainError("a_" + std::to_string(i) + " must be positive");
    for (int i = 1; i < n; ++i)
        if (!(c[i] > T(0))) throw DomainError("c_" + std::to_string(i) + " must be positive");
    if (!stochastic) return;
    for (int i = 0; i < n; ++i) {
        T row = b[i];
        if (i + 1 < n) row += a[i];
        if (i > 0) row += c[i];
        const double dev = to_double(magnitude(T(row - T(1))));
        if ((is_exact_v<T> && !is_zero(T(row - T(1)))) || dev > tol)
            throw DomainError("row " + std::to_string(i) + " of a stochastic Jacobi matrix does not sum to 1");
    }
}

template <class T>
void DiscreteMeasure<T>::validate(double tol) const {
    if (points.size() != weights.size()) throw DomainError("measure points and weights differ in length");
    if (points.empty()) throw DomainError("empty measure");
    T total(0);
    for (const auto& w : weights) {
        if (w < T(0)) throw DomainError("negative measure weight");
        total += w;
    }
    const T dev = magnitude(T(total - T(1)));
    if ((is_exact_v<T> && !is_zero(dev)) || to_double(dev) > tol)
        throw DomainError("measure weights do not sum to 1");
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j]) throw DomainError("measure points are not distinct");
}

template <class T>
T krawtchouk_eval(int j, const T& x, int N) {
    if (N < 1 || j < 0 || j > N) throw DomainError("Krawtchouk degree out of range");
    T prev(0);
    T cur(1);
    const T shift = T(N) - T(2) * x;
    for (int n = 0; n < j; ++n) {
        T next = (shift * cur - T(n) * prev) / T(N - n);
        prev = cur;
        cur = next;
    }
    return cur;
}

template <class T>
std::vector<T> poly_values(const JacobiCoefficients<T>& coeffs, const T& x) {
    const int n = coeffs.size();
    std::vector<T> out(static_cast<std::size_t>(n), T(0));
    if (n == 0) return out;
    out[0] = T(1);
    for (int k = 0; k + 1 < n; ++k) {
        if (is_zero(coeffs.a[k]))
            throw SingularRecurrence("a_" + std::to_string(k) + " vanishes before degree " + std::to_string(n - 1));
        T rhs = (x - coeffs.b[k]) * out[k];
        if (k > 0) rhs -= coeffs.c[k] * out[k - 1];
        out[k + 1] = rhs / coeffs.a[k];
    }
    return out;
}

template <class T>
T poly_eval_by_recurrence(const JacobiCoefficients<T>& coeffs, int n, const T& x) {
    if (n < 0 || n >= coeffs.size()) throw DomainError("polynomial degree out of range");
    T prev(0);
    T cur(1);
    for (int k = 0; k < n; ++k) {
        if (is_zero(coeffs.a[k]))
            throw SingularRecurrence("a_" + std::to_string(k) + " vanishes before degree " + std::to_string(n));
        T next = (x - coeffs.b[k]) * cur;
        if (k > 0) next -= coeffs.c[k] * prev;
        next /= coeffs.a[k];
        prev = cur;
        cur = next;
    }
    return cur;
}

template <class T>
JacobiCoefficients<T> ehrenfest_coefficients(int N) {
    if (N < 1) throw DomainError("Ehrenfest model needs N >= 1");
    JacobiCoefficients<T> out;
    out.stochastic = true;
    out.a.resize(N + 1);
    out.b.assign(N + 1, T(0));
    out.c.resize(N + 1);
    for (int n = 0; n <= N; ++n) {
        out.a[n] = from_rational<T>(ratio(N - n, N));
        out.c[n] = from_rational<T>(ratio(n, N));
    }
    return out;
}

template <class T>
DiscreteMeasure<T> ehrenfest_measure(int N) {
    if (N < 1) throw DomainError("Ehrenfest measure needs N >= 1");
    DiscreteMeasure<T> mu;
    mpz_class two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(N));
    for (int x = 0; x <= N; ++x) {
        mu.points.push_back(from_rational<T>(ratio(N - 2 * x, N)));
        Rational w = binomial(N, x) / Rational(two_pow);
        mu.weights.push_back(from_rational<T>(w));
    }
    return mu;
}

template <class T>
GramReport<T> gram_check(const JacobiCoefficients<T>& coeffs, const DiscreteMeasure<T>& mu, double tol) {
    const int n = coeffs.size();
    if (n > mu.size()) throw DomainError("family larger than the measure support");
    std::vector<std::vector<T>> values;
    values.reserve(mu.points.size());
    for (const auto& x : mu.points) values.push_back(poly_values(coeffs, x));

    GramReport<T> report;
    report.gram = Matrix<T>(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            T s(0);
            for (std::size_t x = 0; x < values.size(); ++x) s += values[x][i] * values[x][j] * mu.weights[x];
            report.gram(i, j) = s;
            report.gram(j, i) = s;
            if (i != j) {
                T d = magnitude(s);
                if (d > report.max_offdiag_deviation) report.max_offdiag_deviation = d;
            }
        }
    for (int i = 0; i < n; ++i) report.norms.push_back(report.gram(i, i));
    bool positive = true;
    for (const auto& h : report.norms) positive = positive && h > T(0);
    report.orthogonal = positive && (is_exact_v<T> ? is_zero(report.max_offdiag_deviation)
                                                   : to_double(report.max_offdiag_deviation) <= tol);
    return report;
}

template <class T>
ScalarFamily<T> make_family(const JacobiCoefficients<T>& coeffs, const DiscreteMeasure<T>& mu) {
    ScalarFamily<T> fam{coeffs, gram_check(coeffs, mu, 0.0).norms};
    return fam;
}

#define MVOP_INSTANTIATE(T)                                                                        \
    template struct JacobiCoefficients<T>;                                                         \
    template struct DiscreteMeasure<T>;                                                            \
    template T krawtchouk_eval<T>(int, const T&, int);                                             \
    template T poly_eval_by_recurrence<T>(const JacobiCoefficients<T>&, int, const T&);            \
    template std::vector<T> poly_values<T>(const JacobiCoefficients<T>&, const T&);                \
    template JacobiCoefficients<T> ehrenfest_coefficients<T>(int);                                 \
    template DiscreteMeasure<T> ehrenfest_measure<T>(int);                                         \
    template GramReport<T> gram_check<T>(const JacobiCoefficients<T>&, const DiscreteMeasure<T>&, \
                                         double);                                                  \
    template ScalarFamily<T> make_family<T>(const JacobiCoefficients<T>&, const DiscreteMeasure<T>&);

MVOP_INSTANTIATE(double)
MVOP_INSTANTIATE(Extended)
MVOP_INSTANTIATE(Rational)
#undef MVOP_INSTANTIATE

}  // namespace mvop
