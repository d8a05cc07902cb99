#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>

#include "mvop/errors.hpp"
#include "mvop/km_kernel.hpp"
#include "oracles.hpp"

using namespace mvop;

namespace {

std::vector<ModelSpec> model_grid(int N) {
    std::vector<ModelSpec> out{ModelSpec::classical(N), ModelSpec::q_deformed(N, ratio(3, 10)),
                               ModelSpec::q_deformed(N, Rational(1)), ModelSpec::k_ball(N, 2),
                               ModelSpec::k_ball(N, std::min(N, 3)),
                               ModelSpec::multi_ball(N, {ratio(1, 2), ratio(1, 3), ratio(1, 6)}, {1, 2, N})};
    return out;
}

}  // namespace

TEST_CASE("km_scalar_entry examples") {
    const auto c2 = make_km_context<Rational>(ModelSpec::classical(2));
    CHECK(km_scalar_entry(c2, 2, 0, 0) == ratio(1, 2));
    for (int i = 0; i <= 2; ++i)
        for (int j = 0; j <= 2; ++j) CHECK(km_scalar_entry(c2, 0, i, j) == (i == j ? 1 : 0));
    const auto q3 = make_km_context<Rational>(ModelSpec::q_deformed(3, ratio(1, 2)));
    CHECK(km_scalar_entry(q3, 1, 0, 2) == ratio(1, 2));
    CHECK_THROWS_AS(km_scalar_entry(q3, 1, 0, 4), DomainError);
    CHECK_THROWS_AS(km_scalar_entry(q3, -1, 0, 0), DomainError);
}

TEST_CASE("scalar kernel equals direct powers, exact") {
    for (int N : {1, 2, 5, 8})
        for (const auto& spec : model_grid(std::max(N, 2))) {
            const auto ctx = make_km_context<Rational>(spec, false);
            const auto m = build<Rational>(spec).dense();
            for (int n = 0; n <= 10; ++n) REQUIRE(km_matrix(ctx, n) == oracle::dense_power(m, n));
        }
}

TEST_CASE("scalar kernel equals direct powers, real, N = 21") {
    for (const auto& spec : model_grid(21)) {
        const auto ctx = make_km_context<double>(spec, false);
        const auto exact = build<Rational>(spec).dense();
        for (int n = 0; n <= 10; ++n)
            CHECK(max_abs_diff(km_matrix(ctx, n), to_double(oracle::dense_power(exact, n))) <= 1e-10);
    }
}

TEST_CASE("km_block_entry examples") {
    const auto ctx = make_km_context<Rational>(ModelSpec::q_deformed(3, ratio(1, 2)));
    REQUIRE(ctx.has_blocks());
    CHECK(km_block_entry(ctx, 0, 0, 0) == Matrix<Rational>::identity(2));
    CHECK(km_block_entry(ctx, 0, 1, 1) == Matrix<Rational>::identity(2));
    CHECK(km_block_entry(ctx, 0, 0, 1) == Matrix<Rational>(2, 2));
    const Matrix<Rational> b0{{0, ratio(1, 2)}, {ratio(1, 6), ratio(1, 3)}};
    CHECK(km_block_entry(ctx, 1, 0, 0) == b0);
    CHECK_THROWS_AS(km_block_entry(ctx, 1, 0, 2), DomainError);

    const auto no_blocks = make_km_context<Rational>(ModelSpec::q_deformed(4, ratio(1, 2)));
    CHECK_FALSE(no_blocks.has_blocks());
    CHECK_THROWS_AS(km_block_entry(no_blocks, 1, 0, 0), ContextError);
    CHECK_THROWS_AS(km_block_matrix(make_km_context<Rational>(ModelSpec::classical(3), false), 1), ContextError);
}

TEST_CASE("block kernel, N = 11, q = 0.3") {
    const auto spec = ModelSpec::q_deformed(11, parse_rational("0.3"));
    const auto exact = build<Rational>(spec).dense();
    const auto direct = oracle::dense_power(exact, 5);
    const auto ctx = make_km_context<Rational>(spec);
    CHECK(km_block_matrix(ctx, 5) == direct);
    const auto ext = make_km_context<Extended>(spec);
    for (int I = 0; I < 6; ++I)
        for (int J = 0; J < 6; ++J) {
            const auto blk = km_block_entry(ext, 5, I, J);
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c)
                    CHECK(std::abs(to_double(blk(r, c)) - direct(2 * I + r, 2 * J + c).get_d()) <= 1e-10);
        }
}

TEST_CASE("block assembly equals the scalar kernel") {
    for (int N : {3, 5, 7, 11})
        for (const auto& spec : {ModelSpec::q_deformed(N, ratio(2, 5)), ModelSpec::k_ball(N, 2),
                                 ModelSpec::multi_ball(N, {ratio(1, 4), ratio(3, 4)}, {1, 3})}) {
            const auto ctx = make_km_context<Rational>(spec);
            if (!ctx.has_blocks()) continue;
            for (int n : {0, 1, 4, 10}) REQUIRE(km_block_matrix(ctx, n) == km_matrix(ctx, n));
        }
    for (const auto& spec : {ModelSpec::q_deformed(21, ratio(3, 10)), ModelSpec::k_ball(20, 3)}) {
        const auto ctx = make_km_context<Extended>(spec);
        REQUIRE(ctx.has_blocks());
        const auto exact = build<Rational>(spec).dense();
        for (int n = 0; n <= 10; ++n)
            CHECK(max_abs_diff(to_double(km_block_matrix(ctx, n)), to_double(oracle::dense_power(exact, n))) <= 1e-10);
    }
}

TEST_CASE("serial and parallel kernels agree bit for bit") {
    const auto ctx = make_km_context<double>(ModelSpec::q_deformed(40, ratio(3, 10)), false);
    for (int n : {0, 3, 9}) CHECK(kernels::km_matrix_serial(ctx, n) == kernels::km_matrix_parallel(ctx, n));
    const auto exact = make_km_context<Rational>(ModelSpec::k_ball(9, 4), false);
    CHECK(kernels::km_matrix_serial(exact, 4) == kernels::km_matrix_parallel(exact, 4));
}

TEST_CASE("powers are pi-reversible") {
    const auto spec = ModelSpec::multi_ball(9, {ratio(1, 3), ratio(2, 3)}, {2, 5});
    const auto ctx = make_km_context<Rational>(spec, false);
    const auto pi = stationary<Rational>(9);
    for (int n : {1, 2, 7}) {
        const auto p = km_matrix(ctx, n);
        for (int i = 0; i <= 9; ++i)
            for (int j = 0; j <= 9; ++j) REQUIRE(pi[i] * p(i, j) == pi[j] * p(j, i));
    }
}

TEST_CASE("n_step_distribution examples") {
    CHECK(n_step_distribution(make_km_context<Rational>(ModelSpec::classical(2)), 0, 1) ==
          std::vector<Rational>{0, 1, 0});
    const auto ctx = make_km_context<Rational>(ModelSpec::k_ball(4, 2), false);
    CHECK(n_step_distribution(ctx, 2, 1) == std::vector<Rational>{ratio(1, 6), 0, ratio(2, 3), 0, ratio(1, 6)});
    for (int s = 0; s <= 4; ++s) {
        const auto row = n_step_distribution(ctx, s, 0);
        for (int j = 0; j <= 4; ++j) CHECK(row[j] == (j == s ? 1 : 0));
    }
    const auto real = make_km_context<double>(ModelSpec::q_deformed(30, ratio(1, 5)), false);
    for (int n : {1, 5, 20}) {
        const auto row = n_step_distribution(real, 3, n);
        for (double v : row) CHECK(v >= 0.0);
        CHECK(std::accumulate(row.begin(), row.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK_THROWS_AS(n_step_distribution(ctx, 5, 1), DomainError);
}

TEST_CASE("tv_distance") {
    const std::vector<double> p{0.2, 0.3, 0.5};
    CHECK(tv_distance(p, p) == 0.0);
    CHECK(tv_distance(std::vector<Rational>{1, 0}, std::vector<Rational>{0, 1}) == 1);
    CHECK_THROWS_AS(tv_distance(p, std::vector<double>{1.0}), DomainError);
}

TEST_CASE("distance to stationarity decays at the spectral rate") {
    const int N = 11;
    const auto spec = ModelSpec::q_deformed(N, parse_rational("0.3"));
    const auto ctx = make_km_context<double>(spec, false);
    const auto pi = stationary<double>(N);
    const double rho = 1.0 - spectral_gap(spectrum<double>(spec)).gap_excluding_one;
    // TV(P^n(x, .), pi) <= (1/2) sqrt((1 - pi_x)/pi_x) rho^n for reversible chains.
    const double c = 0.5 * std::sqrt((1.0 - pi[0]) / pi[0]);
    double previous = 1.0;
    for (int n = 0; n <= 60; n += 5) {
        const double d = tv_distance(n_step_distribution(ctx, 0, n), pi);
        CHECK(d <= c * std::pow(rho, n) + 1e-12);
        CHECK(d <= previous + 1e-15);
        previous = d;
    }
    CHECK(previous < 1e-3);
}
