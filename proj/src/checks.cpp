#include "mvop/checks.hpp"

#include <type_traits>

#include "mvop/block_mvop.hpp"
#include "mvop/ehrenfest.hpp"
#include "mvop/km_kernel.hpp"

namespace mvop {

namespace {

template <class T>
void keep_max(T& acc, const T& v) {
    if (v > acc) acc = v;
}

// Arithmetic used for the block suites: the block recurrence loses about
// eight digits in double precision by N = 11, so the real backend runs them
// in Extended.
template <class T>
using BlockScalar = std::conditional_t<is_exact_v<T>, Rational, Extended>;

template <class T>
CheckResult verdict(std::string name, const T& deviation, bool exact) {
    CheckResult r;
    r.name = std::move(name);
    r.deviation = to_double(deviation);
    r.tolerance = exact ? 0.0 : 1e-10;
    r.passed = exact ? is_zero(deviation) : r.deviation <= r.tolerance;
    return r;
}

template <class B>
void block_suites(const ModelSpec& spec, int max_power, bool exact, std::vector<CheckResult>& out) {
    const auto ctx = make_km_context<B>(spec, true);
    if (!ctx.has_blocks()) return;
    const auto& seq = *ctx.mvops;
    B link(0);
    B ortho(0);
    for (int j = 0; j < ctx.blocks->L; ++j) {
        keep_max(link, scalar_link_check(j, seq, ctx.table));
        for (int k = 0; k < ctx.blocks->L; ++k) {
            Matrix<B> expected(static_cast<std::size_t>(ctx.m), static_cast<std::size_t>(ctx.m));
            if (j == k) expected = ctx.H[j];
            keep_max(ortho, max_abs_diff(inner_product(seq[j], seq[k], ctx.table), expected));
        }
    }
    out.push_back(verdict("scalar_matrix_link", link, exact));
    out.push_back(verdict("mvop_orthogonality", ortho, exact));

    const auto mq = build<B>(spec);
    B km_block(0);
    for (int n = 0; n <= max_power; ++n)
        keep_max(km_block, max_abs_diff(km_block_matrix(ctx, n), matrix_power(mq, n).dense()));
    out.push_back(verdict("karlin_mcgregor_block", km_block, exact));
}

}  // namespace

template <class T>
std::vector<CheckResult> run_identity_checks(int N, const Rational& q, int max_power) {
    constexpr bool exact = is_exact_v<T>;
    std::vector<CheckResult> out;
    const ModelSpec spec = ModelSpec::q_deformed(N, q);
    const auto m0 = build<T>(ModelSpec::classical(N));
    const auto mq = build<T>(spec);

    out.push_back(verdict("theta_polynomial", max_abs_diff(mq.dense(), theta_of_matrix(theta_for<T>(spec), m0).dense()),
                          exact));

    std::vector<CheckResult> blocks;
    block_suites<BlockScalar<T>>(spec, max_power, exact, blocks);
    for (auto& b : blocks)
        if (b.name != "karlin_mcgregor_block") out.push_back(b);

    out.push_back(verdict("k_ball_recurrence", jk_recurrence_check<T>(N, N), exact));
    T kraw(0);
    for (int k = 0; k <= N; ++k) keep_max(kraw, jk_krawtchouk_check<T>(N, k));
    out.push_back(verdict("k_ball_krawtchouk", kraw, exact));

    const auto ctx = make_km_context<T>(spec, false);
    T km(0);
    for (int n = 0; n <= max_power; ++n) keep_max(km, max_abs_diff(km_matrix(ctx, n), matrix_power(mq, n).dense()));
    out.push_back(verdict("karlin_mcgregor_scalar", km, exact));
    for (auto& b : blocks)
        if (b.name == "karlin_mcgregor_block") out.push_back(b);

    const auto pi = stationary<T>(N);
    T stat = stationarity_defect(mq, pi);
    keep_max(stat, reversibility_defect(mq, pi));
    out.push_back(verdict("stationarity", stat, exact));
    return out;
}

template std::vector<CheckResult> run_identity_checks<double>(int, const Rational&, int);
template std::vector<CheckResult> run_identity_checks<Rational>(int, const Rational&, int);

}  // namespace mvop
