#include "mvop/km_kernel.hpp"

#include "mvop/errors.hpp"

namespace mvop {

template <class T>
KMContext<T> make_km_context(const ModelSpec& spec, bool with_blocks) {
    spec.validate();
    KMContext<T> ctx;
    ctx.model = spec;
    ctx.mu = ehrenfest_measure<T>(spec.N);
    ctx.fam = make_family(ehrenfest_coefficients<T>(spec.N), ctx.mu);
    ctx.theta = theta_for<T>(spec);
    ctx.m = ctx.theta.degree();
    if constexpr (is_exact_v<T>) {
        ctx.table = tabulate(spectrum<T>(spec).eigenvalues, ctx.fam, ctx.mu);
    } else {
        // Forward evaluation of p_n loses digits quickly with N, so the
        // table is built exactly and rounded once.
        const auto mu = ehrenfest_measure<Rational>(spec.N);
        const auto fam = make_family(ehrenfest_coefficients<Rational>(spec.N), mu);
        ctx.table = cast_table<T>(tabulate(spectrum<Rational>(spec).eigenvalues, fam, mu));
        ctx.fam.norms = ctx.table.norms;
    }
    if (with_blocks && (spec.N + 1) % ctx.m == 0) {
        ctx.blocks = block_partition(build<T>(spec), ctx.m);
        ctx.mvops = mvop_sequence(*ctx.blocks);
        for (int j = 0; j < ctx.blocks->L; ++j) ctx.H.push_back(norm_block(ctx.fam.norms, ctx.m, j));
    }
    return ctx;
}

namespace {

template <class T>
std::vector<T> theta_powers(const KMContext<T>& ctx, int n) {
    if (n < 0) throw DomainError("negative step count");
    std::vector<T> out;
    out.reserve(ctx.table.theta_values.size());
    for (const auto& t : ctx.table.theta_values) {
        T p(1);
        for (int k = 0; k < n; ++k) p *= t;
        out.push_back(p);
    }
    return out;
}

template <class T>
T scalar_entry(const KMContext<T>& ctx, const std::vector<T>& powers, int i, int j) {
    T s(0);
    for (int x = 0; x < ctx.table.points(); ++x) {
        const auto& p = ctx.table.poly[x];
        s += powers[x] * p[i] * p[j] * ctx.table.weights[x];
    }
    return s / ctx.table.norms[j];
}

template <class T>
void check_state(const KMContext<T>& ctx, int i) {
    if (i < 0 || i >= ctx.states()) throw DomainError("state index out of range");
}

}  // namespace

template <class T>
T km_scalar_entry(const KMContext<T>& ctx, int n, int i, int j) {
    check_state(ctx, i);
    check_state(ctx, j);
    return scalar_entry(ctx, theta_powers(ctx, n), i, j);
}

template <class T>
Matrix<T> km_block_entry(const KMContext<T>& ctx, int n, int I, int J) {
    if (!ctx.has_blocks()) throw ContextError("block data is not available for " + ctx.model.describe());
    const int L = ctx.blocks->L;
    if (I < 0 || I >= L || J < 0 || J >= L) throw DomainError("block index out of range");
    const auto powers = theta_powers(ctx, n);
    const auto& seq = *ctx.mvops;
    const auto m = static_cast<std::size_t>(ctx.m);
    Matrix<T> acc(m, m);
    for (int x = 0; x < ctx.table.points(); ++x) {
        const Matrix<T> u = weight_vector_image(seq[I], x, ctx.table);
        const Matrix<T> z = weight_vector_image(seq[J], x, ctx.table);
        const T scale = powers[x] * ctx.table.weights[x];
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c) acc(r, c) += scale * u(r, 0) * z(c, 0);
    }
    for (std::size_t c = 0; c < m; ++c) {
        const T inv = T(1) / ctx.H[J](c, c);
        for (std::size_t r = 0; r < m; ++r) acc(r, c) *= inv;
    }
    return acc;
}

namespace kernels {

template <class T>
Matrix<T> km_matrix_serial(const KMContext<T>& ctx, int n) {
    const auto powers = theta_powers(ctx, n);
    const int s = ctx.states();
    Matrix<T> out(static_cast<std::size_t>(s), static_cast<std::size_t>(s));
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) out(i, j) = scalar_entry(ctx, powers, i, j);
    return out;
}

template <class T>
Matrix<T> km_matrix_parallel(const KMContext<T>& ctx, int n) {
    const auto powers = theta_powers(ctx, n);
    const int s = ctx.states();
    Matrix<T> out(static_cast<std::size_t>(s), static_cast<std::size_t>(s));
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) out(i, j) = scalar_entry(ctx, powers, i, j);
    return out;
}

}  // namespace kernels

template <class T>
Matrix<T> km_block_matrix(const KMContext<T>& ctx, int n) {
    if (!ctx.has_blocks()) throw ContextError("block data is not available for " + ctx.model.describe());
    const int L = ctx.blocks->L;
    const auto m = static_cast<std::size_t>(ctx.m);
    Matrix<T> out(static_cast<std::size_t>(ctx.states()), static_cast<std::size_t>(ctx.states()));
    for (int I = 0; I < L; ++I)
        for (int J = 0; J < L; ++J) out.set_block(m * I, m * J, km_block_entry(ctx, n, I, J));
    return out;
}

template <class T>
std::vector<T> n_step_distribution(const KMContext<T>& ctx, int start, int n) {
    check_state(ctx, start);
    const auto powers = theta_powers(ctx, n);
    std::vector<T> row;
    row.reserve(static_cast<std::size_t>(ctx.states()));
    for (int j = 0; j < ctx.states(); ++j) {
        T v = scalar_entry(ctx, powers, start, j);
        if constexpr (!is_exact_v<T>) {
            if (v < 0.0 && v >= -1e-12) v = 0.0;
        }
        row.push_back(v);
    }
    return row;
}

template <class T>
T tv_distance(const std::vector<T>& p, const std::vector<T>& q) {
    if (p.size() != q.size()) throw DomainError("distributions differ in length");
    T s(0);
    for (std::size_t i = 0; i < p.size(); ++i) s += magnitude(T(p[i] - q[i]));
    return s / T(2);
}

#define MVOP_INSTANTIATE(T)                                                               \
    template KMContext<T> make_km_context<T>(const ModelSpec&, bool);                     \
    template T km_scalar_entry<T>(const KMContext<T>&, int, int, int);                    \
    template Matrix<T> km_block_entry<T>(const KMContext<T>&, int, int, int);             \
    template Matrix<T> kernels::km_matrix_serial<T>(const KMContext<T>&, int);            \
    template Matrix<T> kernels::km_matrix_parallel<T>(const KMContext<T>&, int);          \
    template Matrix<T> km_block_matrix<T>(const KMContext<T>&, int);                      \
    template std::vector<T> n_step_distribution<T>(const KMContext<T>&, int, int);        \
    template T tv_distance<T>(const std::vector<T>&, const std::vector<T>&);

MVOP_INSTANTIATE(double)
MVOP_INSTANTIATE(Extended)
MVOP_INSTANTIATE(Rational)
#undef MVOP_INSTANTIATE

}  // namespace mvop
