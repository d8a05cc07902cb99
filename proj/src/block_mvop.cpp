#include "mvop/block_mvop.hpp"

#include <cmath>

#include "mvop/errors.hpp"

namespace mvop {

template <class T>
Matrix<T> MatrixPolynomial<T>::operator()(const T& x) const {
    if (coeffs.empty()) return Matrix<T>(m, m);
    Matrix<T> acc = coeffs.back();
    for (int k = degree() - 1; k >= 0; --k) {
        acc *= x;
        acc += coeffs[k];
    }
    return acc;
}

template <class T>
SupportTable<T> tabulate(std::vector<T> theta_values, const ScalarFamily<T>& fam, const DiscreteMeasure<T>& mu) {
    if (static_cast<int>(theta_values.size()) != mu.size())
        throw DomainError("one Theta value per support point is required");
    SupportTable<T> table;
    table.theta_values = std::move(theta_values);
    table.weights = mu.weights;
    table.norms = fam.norms;
    table.poly.reserve(mu.points.size());
    for (const auto& x : mu.points) table.poly.push_back(poly_values(fam.coeffs, x));
    return table;
}

template <class T>
SupportTable<T> tabulate(const ThetaPolynomial<T>& theta, const ScalarFamily<T>& fam, const DiscreteMeasure<T>& mu) {
    std::vector<T> values;
    values.reserve(mu.points.size());
    for (const auto& x : mu.points) values.push_back(theta(x));
    return tabulate(std::move(values), fam, mu);
}

template <class T>
BlockTridiagonal<T> block_partition(const BandedMatrix<T>& mat, int block) {
    const int n = mat.size();
    if (block < 1) throw PartitionError("block size must be positive");
    if (n % block != 0)
        throw PartitionError("block size " + std::to_string(block) + " does not divide " + std::to_string(n));
    const int L = n / block;
    for (int i = 0; i < n; ++i)
        for (int j = mat.row_begin(i); j < mat.row_end(i); ++j)
            if (std::abs(i / block - j / block) > 1 && !is_zero(mat(i, j)))
                throw PartitionError("matrix is not block tridiagonal for block size " + std::to_string(block));

    const auto m = static_cast<std::size_t>(block);
    const Matrix<T>& d = mat.dense();
    BlockTridiagonal<T> out;
    out.m = block;
    out.L = L;
    for (int i = 0; i < L; ++i) {
        const std::size_t r0 = m * static_cast<std::size_t>(i);
        out.B.push_back(d.block(r0, r0, m, m));
        out.C.push_back(i == 0 ? Matrix<T>(m, m) : d.block(r0, r0 - m, m, m));
        if (i + 1 < L) out.A.push_back(d.block(r0, r0 + m, m, m));
    }
    return out;
}

template <class T>
BandedMatrix<T> assemble(const BlockTridiagonal<T>& blocks) {
    const auto m = static_cast<std::size_t>(blocks.m);
    const int n = blocks.m * blocks.L;
    Matrix<T> d(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int i = 0; i < blocks.L; ++i) {
        const std::size_t r0 = m * static_cast<std::size_t>(i);
        d.set_block(r0, r0, blocks.B[i]);
        if (i > 0) d.set_block(r0, r0 - m, blocks.C[i]);
        if (i + 1 < blocks.L) d.set_block(r0, r0 + m, blocks.A[i]);
    }
    const int bw = std::min(n - 1, 2 * blocks.m - 1);
    return BandedMatrix<T>::from_dense(d, bw, bw);
}

template <class T>
T expected_a_diagonal(const ThetaPolynomial<T>& theta, const JacobiCoefficients<T>& coeffs, int m, int i, int j) {
    T out = theta.coefficients.back();
    for (int r = m * i + j; r < m * (i + 1) + j; ++r) out *= coeffs.a.at(r);
    return out;
}

template <class T>
std::vector<MatrixPolynomial<T>> mvop_sequence(const BlockTridiagonal<T>& blocks, double cond_limit) {
    const auto m = static_cast<std::size_t>(blocks.m);
    std::vector<MatrixPolynomial<T>> seq;
    seq.push_back(MatrixPolynomial<T>{blocks.m, {Matrix<T>::identity(m)}});
    for (int j = 0; j + 1 < blocks.L; ++j) {
        Matrix<T> a_inv;
        if (!invert(blocks.A[j], a_inv))
            throw IllConditionedBlock("A_" + std::to_string(j) + " is singular");
        if constexpr (!is_exact_v<T>) {
            const double cond = norm_1(blocks.A[j]) * norm_1(a_inv);
            if (!(cond <= cond_limit))
                throw IllConditionedBlock("A_" + std::to_string(j) + " has condition number " + std::to_string(cond));
        }
        const MatrixPolynomial<T>& cur = seq[j];
        const int deg = j + 1;
        MatrixPolynomial<T> next{blocks.m, std::vector<Matrix<T>>(static_cast<std::size_t>(deg) + 1, Matrix<T>(m, m))};
        for (int k = 0; k <= deg; ++k) {
            Matrix<T> r(m, m);
            if (k >= 1) r += cur.coeffs[k - 1];
            if (k <= cur.degree()) r -= blocks.B[j] * cur.coeffs[k];
            if (j > 0 && k <= seq[j - 1].degree()) r -= blocks.C[j] * seq[j - 1].coeffs[k];
            next.coeffs[k] = a_inv * r;
        }
        seq.push_back(std::move(next));
    }
    return seq;
}

template <class T>
Matrix<T> weight_at(int x_index, const SupportTable<T>& table, int m) {
    if (x_index < 0 || x_index >= table.points()) throw DomainError("support index out of range");
    const auto& p = table.poly[x_index];
    if (static_cast<int>(p.size()) < m) throw DomainError("weight size exceeds the scalar family");
    const auto mm = static_cast<std::size_t>(m);
    Matrix<T> w(mm, mm);
    for (std::size_t r = 0; r < mm; ++r)
        for (std::size_t c = 0; c < mm; ++c) w(r, c) = table.weights[x_index] * p[r] * p[c];
    return w;
}

template <class T>
Matrix<T> weight_at(int x_index, const ScalarFamily<T>& fam, const DiscreteMeasure<T>& mu, int m) {
    if (x_index < 0 || x_index >= mu.size()) throw DomainError("support index out of range");
    SupportTable<T> one;
    one.weights = {mu.weights[x_index]};
    one.poly = {poly_values(fam.coeffs, mu.points[x_index])};
    return weight_at(0, one, m);
}

template <class T>
Matrix<T> weight_vector_image(const MatrixPolynomial<T>& p, int x_index, const SupportTable<T>& table) {
    if (x_index < 0 || x_index >= table.points()) throw DomainError("support index out of range");
    const auto& v = table.poly[x_index];
    if (static_cast<int>(v.size()) < p.m) throw DomainError("weight size exceeds the scalar family");
    const auto m = static_cast<std::size_t>(p.m);
    const Matrix<T> val = p(table.theta_values[x_index]);
    Matrix<T> out(m, 1);
    for (std::size_t r = 0; r < m; ++r) {
        T s(0);
        for (std::size_t c = 0; c < m; ++c) s += val(r, c) * v[c];
        out(r, 0) = s;
    }
    return out;
}

template <class T>
Matrix<T> inner_product(const MatrixPolynomial<T>& p, const MatrixPolynomial<T>& q, const SupportTable<T>& table) {
    if (p.m != q.m) throw DomainError("inner product of polynomials with different block sizes");
    const auto m = static_cast<std::size_t>(p.m);
    Matrix<T> acc(m, m);
    for (int x = 0; x < table.points(); ++x) {
        const Matrix<T> u = weight_vector_image(p, x, table);
        const Matrix<T> z = weight_vector_image(q, x, table);
        const T& w = table.weights[x];
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c) acc(r, c) += w * u(r, 0) * z(c, 0);
    }
    return acc;
}

template <class T>
Matrix<T> inner_product(const MatrixPolynomial<T>& p, const MatrixPolynomial<T>& q, const ThetaPolynomial<T>& theta,
                        const ScalarFamily<T>& fam, const DiscreteMeasure<T>& mu) {
    return inner_product(p, q, tabulate(theta, fam, mu));
}

template <class T>
Matrix<T> norm_block(const std::vector<T>& norms, int m, int j) {
    const auto mm = static_cast<std::size_t>(m);
    Matrix<T> h(mm, mm);
    for (std::size_t r = 0; r < mm; ++r) h(r, r) = norms.at(static_cast<std::size_t>(m * j) + r);
    return h;
}

template <class T>
T scalar_link_check(int j, const std::vector<MatrixPolynomial<T>>& sequence, const SupportTable<T>& table) {
    if (j < 0 || j >= static_cast<int>(sequence.size())) throw DomainError("block index out of range");
    const MatrixPolynomial<T>& pj = sequence[j];
    const auto m = static_cast<std::size_t>(pj.m);
    T worst(0);
    for (int x = 0; x < table.points(); ++x) {
        const Matrix<T> val = pj(table.theta_values[x]);
        const auto& p = table.poly[x];
        for (std::size_t r = 0; r < m; ++r) {
            T lhs(0);
            for (std::size_t c = 0; c < m; ++c) lhs += val(r, c) * p[c];
            const T d = magnitude(T(lhs - p.at(m * static_cast<std::size_t>(j) + r)));
            if (d > worst) worst = d;
        }
    }
    return worst;
}

template <class T>
std::vector<CommutantElement<T>> commutant(const std::vector<Matrix<T>>& weights, double tol) {
    if (weights.empty()) throw DomainError("commutant of an empty weight set");
    const std::size_t m = weights.front().rows();
    const std::size_t mm = m * m;
    // Unknowns: X(r,c) at r*m+c, Y(r,c) at mm + r*m+c. With W real symmetric,
    // T W = W T^* splits into X W - W X^T = 0 and Y W + W Y^T = 0.
    Matrix<T> system(2 * mm * weights.size(), 2 * mm);
    double scale = 0.0;
    std::size_t row = 0;
    for (const auto& w : weights) {
        scale = std::max(scale, to_double(max_abs(w)));
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c) {
                // (X W)(r,c) = sum_k X(r,k) W(k,c); (W X^T)(r,c) = sum_k W(r,k) X(c,k).
                for (std::size_t k = 0; k < m; ++k) {
                    system(row, r * m + k) += w(k, c);
                    system(row, c * m + k) -= w(r, k);
                    system(row + 1, mm + r * m + k) += w(k, c);
                    system(row + 1, mm + c * m + k) += w(r, k);
                }
                row += 2;
            }
    }
    const double threshold = is_exact_v<T> ? 0.0 : tol * std::max(scale, 1e-300);
    std::vector<CommutantElement<T>> basis;
    for (const auto& v : null_space(system, threshold)) {
        CommutantElement<T> e{Matrix<T>(m, m), Matrix<T>(m, m)};
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c) {
                e.real(r, c) = v[r * m + c];
                e.imag(r, c) = v[mm + r * m + c];
            }
        basis.push_back(std::move(e));
    }
    return basis;
}

template <class T>
std::vector<CommutantElement<T>> commutant(const ScalarFamily<T>& fam, const DiscreteMeasure<T>& mu, int m,
                                           double tol) {
    if (m < 1) throw DomainError("block size must be positive");
    std::vector<Matrix<T>> weights;
    for (int x = 0; x < mu.size(); ++x) weights.push_back(weight_at(x, fam, mu, m));
    return commutant(weights, tol);
}

template <class T>
NormRatioReport norm_ratio_test(const std::vector<T>& norms, int m, double rel_tol) {
    if (m < 1) throw DomainError("block size must be positive");
    const int rows = static_cast<int>(norms.size()) / m;
    if (rows < 2) throw DomainError("norm ratio test needs at least two block rows of norms");
    for (const auto& h : norms)
        if (!(h > T(0))) throw DomainError("norms must be positive");
    NormRatioReport report;
    bool any_constant = false;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const T first = norms[i] / norms[j];
            bool constant = true;
            for (int n = 1; n < rows && constant; ++n) {
                const T ratio = norms[m * n + i] / norms[m * n + j];
                if constexpr (is_exact_v<T>) {
                    constant = ratio == first;
                } else {
                    const double r = to_double(ratio);
                    const double f = to_double(first);
                    constant = std::fabs(r - f) <= rel_tol * std::max(std::fabs(r), std::fabs(f));
                }
            }
            any_constant = any_constant || constant;
            report.pairs.push_back({i, j, constant});
        }
    report.verdict = any_constant ? NormVerdict::inconclusive : NormVerdict::diagonal;
    return report;
}

std::string to_string(NormVerdict v) { return v == NormVerdict::diagonal ? "diagonal" : "inconclusive"; }

#define MVOP_INSTANTIATE(T)                                                                                    \
    template struct MatrixPolynomial<T>;                                                                       \
    template SupportTable<T> tabulate<T>(const ThetaPolynomial<T>&, const ScalarFamily<T>&,                    \
                                         const DiscreteMeasure<T>&);                                           \
    template SupportTable<T> tabulate<T>(std::vector<T>, const ScalarFamily<T>&, const DiscreteMeasure<T>&);   \
    template BlockTridiagonal<T> block_partition<T>(const BandedMatrix<T>&, int);                              \
    template BandedMatrix<T> assemble<T>(const BlockTridiagonal<T>&);                                          \
    template T expected_a_diagonal<T>(const ThetaPolynomial<T>&, const JacobiCoefficients<T>&, int, int, int); \
    template std::vector<MatrixPolynomial<T>> mvop_sequence<T>(const BlockTridiagonal<T>&, double);            \
    template Matrix<T> weight_at<T>(int, const SupportTable<T>&, int);                                         \
    template Matrix<T> weight_at<T>(int, const ScalarFamily<T>&, const DiscreteMeasure<T>&, int);              \
    template Matrix<T> weight_vector_image<T>(const MatrixPolynomial<T>&, int, const SupportTable<T>&);        \
    template Matrix<T> inner_product<T>(const MatrixPolynomial<T>&, const MatrixPolynomial<T>&,                \
                                        const SupportTable<T>&);                                               \
    template Matrix<T> inner_product<T>(const MatrixPolynomial<T>&, const MatrixPolynomial<T>&,                \
                                        const ThetaPolynomial<T>&, const ScalarFamily<T>&,                     \
                                        const DiscreteMeasure<T>&);                                            \
    template Matrix<T> norm_block<T>(const std::vector<T>&, int, int);                                         \
    template T scalar_link_check<T>(int, const std::vector<MatrixPolynomial<T>>&, const SupportTable<T>&);     \
    template std::vector<CommutantElement<T>> commutant<T>(const std::vector<Matrix<T>>&, double);             \
    template std::vector<CommutantElement<T>> commutant<T>(const ScalarFamily<T>&, const DiscreteMeasure<T>&,  \
                                                           int, double);                                       \
    template NormRatioReport norm_ratio_test<T>(const std::vector<T>&, int, double);

MVOP_INSTANTIATE(double)
MVOP_INSTANTIATE(Extended)
MVOP_INSTANTIATE(Rational)
#undef MVOP_INSTANTIATE

}  // namespace mvop
