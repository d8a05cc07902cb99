#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "mvop/block_mvop.hpp"
#include "mvop/ehrenfest.hpp"
#include "mvop/errors.hpp"
#include "oracles.hpp"

using namespace mvop;

namespace {

struct QBlocks {
    Matrix<Rational> A, B, C;
};

// Closed-form 2x2 blocks of M_q, row block i.
QBlocks mq_blocks(int N, const Rational& q, int i) {
    const Rational nn = Rational(N * (N - 1));
    const Rational p = 1 - q;
    QBlocks out;
    out.A = Matrix<Rational>{{q * (N - 2 * i) * (N - 2 * i - 1) / nn, 0},
                             {p * (N - 2 * i - 1) / N, q * (N - 2 * i - 1) * (N - 2 * i - 2) / nn}};
    out.B = Matrix<Rational>{{q * 4 * i * (N - 2 * i) / nn, p * (N - 2 * i) / N},
                             {p * (2 * i + 1) / N, q * 2 * (2 * i + 1) * (N - 2 * i - 1) / nn}};
    out.C = Matrix<Rational>{{q * 2 * i * (2 * i - 1) / nn, p * 2 * i / N}, {0, q * 2 * i * (2 * i + 1) / nn}};
    for (auto* m : {&out.A, &out.B, &out.C})
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t c = 0; c < 2; ++c) (*m)(r, c).canonicalize();
    return out;
}

struct Setup {
    ModelSpec spec;
    ScalarFamily<Rational> fam;
    DiscreteMeasure<Rational> mu;
    ThetaPolynomial<Rational> theta;
    BlockTridiagonal<Rational> blocks;
    std::vector<MatrixPolynomial<Rational>> seq;
    SupportTable<Rational> table;
};

Setup setup(const ModelSpec& spec) {
    Setup s{spec, {}, {}, {}, {}, {}, {}};
    s.mu = ehrenfest_measure<Rational>(spec.N);
    s.fam = make_family(ehrenfest_coefficients<Rational>(spec.N), s.mu);
    s.theta = theta_for<Rational>(spec);
    s.blocks = block_partition(build<Rational>(spec), spec.degree());
    s.seq = mvop_sequence(s.blocks);
    s.table = tabulate(s.theta, s.fam, s.mu);
    return s;
}

Eigen::MatrixXd to_eigen(const Matrix<double>& m) {
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
    return out;
}

}  // namespace

TEST_CASE("block_partition of M_q matches the closed-form blocks") {
    for (int N : {3, 5, 7, 11})
        for (const Rational& q : {ratio(1, 2), ratio(1, 3), Rational(1)}) {
            const auto blocks = block_partition(build<Rational>(ModelSpec::q_deformed(N, q)), 2);
            REQUIRE(blocks.L == (N + 1) / 2);
            for (int i = 0; i < blocks.L; ++i) {
                const auto expected = mq_blocks(N, q, i);
                CHECK(blocks.B[i] == expected.B);
                if (i + 1 < blocks.L) CHECK(blocks.A[i] == expected.A);
                if (i > 0) CHECK(blocks.C[i] == expected.C);
            }
        }
}

TEST_CASE("block_partition with m = 1 gives the Jacobi coefficients") {
    const auto coeffs = ehrenfest_coefficients<Rational>(6);
    const auto blocks = block_partition(jacobi_matrix(coeffs), 1);
    REQUIRE(blocks.L == 7);
    for (int i = 0; i < 7; ++i) {
        CHECK(blocks.B[i](0, 0) == coeffs.b[i]);
        if (i < 6) CHECK(blocks.A[i](0, 0) == coeffs.a[i]);
        if (i > 0) CHECK(blocks.C[i](0, 0) == coeffs.c[i]);
    }
}

TEST_CASE("block_partition: triangularity, diagonal formula, reassembly") {
    for (int N : {5, 11}) {
        const auto coeffs = ehrenfest_coefficients<Rational>(N);
        for (const auto& spec : {ModelSpec::q_deformed(N, ratio(1, 2)), ModelSpec::k_ball(N, 2),
                                 ModelSpec::k_ball(N, 3), ModelSpec::multi_ball(N, {ratio(1, 2), ratio(1, 2)}, {1, 3})}) {
            const int m = spec.degree();
            if ((N + 1) % m != 0) continue;
            const auto theta = theta_for<Rational>(spec);
            const auto mat = build<Rational>(spec);
            const auto blocks = block_partition(mat, m);
            CHECK(assemble(blocks) == mat);
            for (int i = 0; i < blocks.L; ++i) {
                if (i > 0) CHECK(is_upper_triangular(blocks.C[i]));
                if (i + 1 < blocks.L) {
                    CHECK(is_lower_triangular(blocks.A[i]));
                    for (int j = 0; j < m; ++j) {
                        // alpha_m a_{mi+j} ... a_{m(i+1)+j-1}
                        Rational prod = theta.coefficients.back();
                        for (int r = m * i + j; r <= m * (i + 1) + j - 1; ++r) prod *= coeffs.a[r];
                        CHECK(blocks.A[i](j, j) == prod);
                        CHECK(expected_a_diagonal(theta, coeffs, m, i, j) == prod);
                    }
                }
            }
        }
    }
    const auto c1 = block_partition(build<Rational>(ModelSpec::q_deformed(5, ratio(1, 2))), 2).C[1];
    CHECK(c1(1, 0) == 0);
}

TEST_CASE("block_partition errors") {
    const auto mq = build<Rational>(ModelSpec::q_deformed(4, ratio(1, 2)));
    CHECK_THROWS_AS(block_partition(mq, 2), PartitionError);
    CHECK_THROWS_AS(block_partition(build<Rational>(ModelSpec::q_deformed(5, ratio(1, 2))), 1), PartitionError);
    CHECK_THROWS_AS(block_partition(mq, 0), PartitionError);
}

TEST_CASE("mvop_sequence: first steps") {
    const auto s = setup(ModelSpec::q_deformed(3, ratio(1, 2)));
    REQUIRE(s.seq.size() == 2);
    CHECK(s.seq[0].degree() == 0);
    CHECK(s.seq[0].coeffs[0] == Matrix<Rational>::identity(2));
    Matrix<Rational> a0inv;
    REQUIRE(invert(s.blocks.A[0], a0inv));
    CHECK(s.seq[1].degree() == 1);
    CHECK(s.seq[1].coeffs[1] == a0inv);
    Matrix<Rational> c0 = a0inv * s.blocks.B[0];
    c0 *= Rational(-1);
    CHECK(s.seq[1].coeffs[0] == c0);
}

TEST_CASE("mvop_sequence: leading coefficients lower triangular, invertible") {
    const auto s = setup(ModelSpec::q_deformed(11, ratio(1, 2)));
    REQUIRE(s.seq.size() == 6);
    for (std::size_t j = 0; j < s.seq.size(); ++j) {
        CHECK(s.seq[j].degree() == static_cast<int>(j));
        CHECK(is_lower_triangular(s.seq[j].leading()));
        for (int d = 0; d < 2; ++d) CHECK(s.seq[j].leading()(d, d) != 0);
    }
}

TEST_CASE("mvop_sequence rejects singular A") {
    auto blocks = block_partition(build<Rational>(ModelSpec::q_deformed(5, ratio(1, 2))), 2);
    blocks.A[1] = Matrix<Rational>(2, 2);
    CHECK_THROWS_AS(mvop_sequence(blocks), IllConditionedBlock);
    auto real = block_partition(build<double>(ModelSpec::q_deformed(5, ratio(1, 2))), 2);
    real.A[0](1, 1) = 1e-15;
    CHECK_THROWS_AS(mvop_sequence(real), IllConditionedBlock);
}

TEST_CASE("weight_at examples") {
    const auto mu = ehrenfest_measure<Rational>(3);
    const auto fam = make_family(ehrenfest_coefficients<Rational>(3), mu);
    const Matrix<Rational> w1{{ratio(3, 8), ratio(1, 8)}, {ratio(1, 8), ratio(1, 24)}};
    CHECK(weight_at(1, fam, mu, 2) == w1);
    const Matrix<Rational> w0{{ratio(1, 8), ratio(1, 8)}, {ratio(1, 8), ratio(1, 8)}};
    CHECK(weight_at(0, fam, mu, 2) == w0);
    for (int x = 0; x <= 3; ++x) {
        const auto w = to_double(weight_at(x, fam, mu, 2));
        CHECK(w == w.transpose());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(w));
        CHECK(es.eigenvalues().minCoeff() >= -1e-15);
    }
}

TEST_CASE("inner_product examples") {
    const auto s = setup(ModelSpec::q_deformed(3, ratio(1, 2)));
    const Matrix<Rational> h0{{1, 0}, {0, ratio(1, 3)}};
    CHECK(inner_product(s.seq[0], s.seq[0], s.table) == h0);
    CHECK(inner_product(s.seq[0], s.seq[1], s.table) == Matrix<Rational>(2, 2));
    const Matrix<Rational> h1{{ratio(1, 3), 0}, {0, 1}};
    CHECK(inner_product(s.seq[1], s.seq[1], s.theta, s.fam, s.mu) == h1);
    for (const Rational& q : {ratio(1, 4), ratio(3, 4), Rational(1)}) {
        const auto t = setup(ModelSpec::q_deformed(3, q));
        CHECK(inner_product(t.seq[0], t.seq[0], t.table) == h0);
    }
}

TEST_CASE("orthogonality over a grid, exact") {
    for (int N : {3, 5, 7, 9, 11})
        for (const auto& spec : {ModelSpec::q_deformed(N, ratio(1, 2)), ModelSpec::q_deformed(N, ratio(1, 3)),
                                 ModelSpec::q_deformed(N, Rational(1)), ModelSpec::k_ball(N, 2)}) {
            const auto s = setup(spec);
            for (std::size_t j = 0; j < s.seq.size(); ++j)
                for (std::size_t k = 0; k < s.seq.size(); ++k) {
                    const auto g = inner_product(s.seq[j], s.seq[k], s.table);
                    if (j == k) {
                        REQUIRE(g == norm_block(s.fam.norms, 2, static_cast<int>(j)));
                        for (int d = 0; d < 2; ++d) CHECK(g(d, d) > 0);
                    } else {
                        REQUIRE(g == Matrix<Rational>(2, 2));
                    }
                }
        }
}

TEST_CASE("orthogonality, real backend, degree 3") {
    const int N = 11;
    const auto spec = ModelSpec::k_ball(N, 3);
    const auto mu = ehrenfest_measure<double>(N);
    const auto fam = make_family(ehrenfest_coefficients<double>(N), mu);
    const auto seq = mvop_sequence(block_partition(build<double>(spec), 3));
    const auto table = tabulate(theta_for<double>(spec), fam, mu);
    for (std::size_t j = 0; j < seq.size(); ++j)
        for (std::size_t k = 0; k < seq.size(); ++k) {
            auto g = inner_product(seq[j], seq[k], table);
            if (j == k) g -= norm_block(fam.norms, 3, static_cast<int>(j));
            CHECK(max_abs(g) <= 1e-10);
        }
}

TEST_CASE("orthogonality, Extended backend, q-deformed grid") {
    for (int N : {3, 7, 11})
        for (const char* qs : {"0.3", "0.5", "0.9"}) {
            const auto spec = ModelSpec::q_deformed(N, parse_rational(qs));
            const auto mu = ehrenfest_measure<Extended>(N);
            const auto fam = make_family(ehrenfest_coefficients<Extended>(N), mu);
            const auto seq = mvop_sequence(block_partition(build<Extended>(spec), 2));
            const auto table = tabulate(spectrum<Extended>(spec).eigenvalues, fam, mu);
            for (std::size_t j = 0; j < seq.size(); ++j)
                for (std::size_t k = 0; k < seq.size(); ++k) {
                    auto g = inner_product(seq[j], seq[k], table);
                    if (j == k) g -= norm_block(fam.norms, 2, static_cast<int>(j));
                    CHECK(to_double(max_abs(g)) <= 1e-10);
                }
        }
}

TEST_CASE("inner product is positive semidefinite, sesquilinear and symmetric") {
    const auto s = setup(ModelSpec::q_deformed(7, ratio(2, 5)));
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> d(-4, 4);
    auto random_poly = [&](int deg) {
        MatrixPolynomial<Rational> p{2, {}};
        for (int k = 0; k <= deg; ++k) {
            Matrix<Rational> c(2, 2);
            for (int r = 0; r < 2; ++r)
                for (int cc = 0; cc < 2; ++cc) c(r, cc) = ratio(d(rng), 1 + (d(rng) + 4));
            p.coeffs.push_back(c);
        }
        return p;
    };
    for (int trial = 0; trial < 20; ++trial) {
        const auto p = random_poly(trial % 4);
        const auto q = random_poly((trial + 1) % 4);
        const auto g = inner_product(p, p, s.table);
        CHECK(g == g.transpose());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(to_double(g)));
        CHECK(es.eigenvalues().minCoeff() >= -1e-12 * std::max(1.0, es.eigenvalues().maxCoeff()));
        CHECK(inner_product(p, q, s.table) == inner_product(q, p, s.table).transpose());
        Matrix<Rational> t{{1, 2}, {ratio(-1, 2), 3}};
        MatrixPolynomial<Rational> tp = p;
        for (auto& c : tp.coeffs) c = t * c;
        CHECK(inner_product(tp, q, s.table) == t * inner_product(p, q, s.table));
    }
}

TEST_CASE("scalar_link_check") {
    const auto s = setup(ModelSpec::q_deformed(3, ratio(1, 2)));
    CHECK(scalar_link_check(0, s.seq, s.table) == 0);
    CHECK(scalar_link_check(1, s.seq, s.table) == 0);
    const auto big = setup(ModelSpec::q_deformed(11, ratio(2, 7)));
    for (int j = 0; j < 6; ++j) CHECK(scalar_link_check(j, big.seq, big.table) == 0);

    for (const char* qs : {"0.3", "0.5", "0.9"}) {
        const int N = 11;
        const auto spec = ModelSpec::q_deformed(N, parse_rational(qs));
        const auto mu = ehrenfest_measure<Extended>(N);
        const auto fam = make_family(ehrenfest_coefficients<Extended>(N), mu);
        const auto seq = mvop_sequence(block_partition(build<Extended>(spec), 2));
        const auto table = tabulate(theta_for<Extended>(spec), fam, mu);
        for (int j = 0; j < 6; ++j) CHECK(to_double(scalar_link_check(j, seq, table)) <= 1e-10);
    }
    // Low blocks are fine in double too.
    const int N = 11;
    const auto spec = ModelSpec::q_deformed(N, parse_rational("0.3"));
    const auto mu = ehrenfest_measure<double>(N);
    const auto fam = make_family(ehrenfest_coefficients<double>(N), mu);
    const auto seq = mvop_sequence(block_partition(build<double>(spec), 2));
    const auto table = tabulate(theta_for<double>(spec), fam, mu);
    CHECK(scalar_link_check(1, seq, table) <= 1e-10);
}

TEST_CASE("commutant of the Ehrenfest weight is trivial") {
    const auto mu = ehrenfest_measure<Rational>(3);
    const auto fam = make_family(ehrenfest_coefficients<Rational>(3), mu);
    const auto basis = commutant(fam, mu, 2, 0.0);
    REQUIRE(basis.size() == 1);
    CHECK(basis[0].imag == Matrix<Rational>(2, 2));
    CHECK(is_diagonal(basis[0].real));
    CHECK(basis[0].real(0, 0) == basis[0].real(1, 1));

    std::vector<Eigen::MatrixXd> ws;
    for (int x = 0; x <= 3; ++x) ws.push_back(to_eigen(to_double(weight_at(x, fam, mu, 2))));
    CHECK(oracle::commutant_dimension(ws) == 1);

    for (int N : {5, 9, 11}) {
        const auto mud = ehrenfest_measure<double>(N);
        const auto famd = make_family(ehrenfest_coefficients<double>(N), mud);
        for (int m : {2, 3}) {
            std::vector<Eigen::MatrixXd> wd;
            for (int x = 0; x <= N; ++x) wd.push_back(to_eigen(weight_at(x, famd, mud, m)));
            const int expected = oracle::commutant_dimension(wd);
            CHECK(static_cast<int>(commutant(famd, mud, m).size()) == expected);
            CHECK(expected == 1);
        }
    }
}

TEST_CASE("commutant: diagonal weight and m = 1") {
    std::vector<Matrix<Rational>> diag{Matrix<Rational>{{1, 0}, {0, 2}}, Matrix<Rational>{{3, 0}, {0, 1}}};
    const auto basis = commutant(diag, 0.0);
    CHECK(basis.size() >= 2);
    std::vector<Eigen::MatrixXd> dd{to_eigen(to_double(diag[0])), to_eigen(to_double(diag[1]))};
    CHECK(static_cast<int>(basis.size()) == oracle::commutant_dimension(dd));
    for (const auto& t : basis)
        for (const auto& w : diag) {
            CHECK(t.real * w == w * t.real.transpose());
            Matrix<Rational> lhs = t.imag * w;
            lhs += w * t.imag.transpose();
            CHECK(lhs == Matrix<Rational>(2, 2));
        }

    const auto mu = ehrenfest_measure<Rational>(4);
    const auto fam = make_family(ehrenfest_coefficients<Rational>(4), mu);
    CHECK(commutant(fam, mu, 1, 0.0).size() == 1);
}

TEST_CASE("norm_ratio_test examples") {
    std::vector<double> hermite;
    for (int n = 0; n < 8; ++n) hermite.push_back(std::sqrt(M_PI) * std::pow(2.0, n) * std::tgamma(n + 1.0));
    auto r = norm_ratio_test(hermite, 2);
    CHECK(r.verdict == NormVerdict::diagonal);
    CHECK(r.pairs.size() == 1);
    CHECK_FALSE(r.pairs[0].constant);

    r = norm_ratio_test(std::vector<Rational>(6, Rational(1)), 2);
    CHECK(r.verdict == NormVerdict::inconclusive);
    CHECK(r.pairs[0].constant);
    CHECK(to_string(r.verdict) == "inconclusive");

    std::vector<Rational> h5;
    for (int n = 0; n <= 5; ++n) h5.push_back(1 / binomial(5, n));
    r = norm_ratio_test(h5, 2);
    CHECK(r.verdict == NormVerdict::diagonal);
    CHECK(to_string(r.verdict) == "diagonal");

    r = norm_ratio_test(std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8, 9}, 3);
    CHECK(r.pairs.size() == 3);

    CHECK_THROWS_AS(norm_ratio_test(std::vector<Rational>{1, 2, 3}, 2), DomainError);
}
