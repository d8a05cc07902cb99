#include "mvop/ehrenfest.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "mvop/errors.hpp"

namespace mvop {

ModelSpec ModelSpec::classical(int N) {
    ModelSpec s;
    s.N = N;
    return s;
}

ModelSpec ModelSpec::q_deformed(int N, Rational q) {
    ModelSpec s;
    s.N = N;
    s.kind = ModelKind::q_deformed;
    s.q = std::move(q);
    return s;
}

ModelSpec ModelSpec::k_ball(int N, int k) {
    ModelSpec s;
    s.N = N;
    s.kind = ModelKind::k_ball;
    s.k = k;
    return s;
}

ModelSpec ModelSpec::multi_ball(int N, std::vector<Rational> qvec, std::vector<int> kvec) {
    ModelSpec s;
    s.N = N;
    s.kind = ModelKind::multi_ball;
    s.qvec = std::move(qvec);
    s.kvec = std::move(kvec);
    return s;
}

void ModelSpec::validate() const {
    if (N < 1) throw DomainError("N must be at least 1");
    switch (kind) {
        case ModelKind::classical:
            break;
        case ModelKind::q_deformed:
            if (N < 2) throw DomainError("the q-deformed model needs N >= 2");
            if (q < 0 || q > 1) throw DomainError("q must lie in [0, 1]");
            break;
        case ModelKind::k_ball:
            if (k < 1 || k > N) throw DomainError("k must lie in [1, N]");
            break;
        case ModelKind::multi_ball: {
            if (qvec.empty() || qvec.size() != kvec.size())
                throw DomainError("qvec and kvec must be nonempty and of equal length");
            Rational total = 0;
            for (const auto& w : qvec) {
                if (w < 0) throw DomainError("qvec entries must be nonnegative");
                total += w;
            }
            if (total != 1) throw DomainError("qvec must sum to 1");
            for (int kk : kvec)
                if (kk < 1 || kk > N) throw DomainError("kvec entries must lie in [1, N]");
            break;
        }
    }
}

std::vector<std::pair<int, Rational>> ModelSpec::mixture() const {
    validate();
    std::map<int, Rational> merged;
    switch (kind) {
        case ModelKind::classical:
            merged[1] = 1;
            break;
        case ModelKind::q_deformed:
            merged[1] = 1 - q;
            merged[2] = q;
            break;
        case ModelKind::k_ball:
            merged[k] = 1;
            break;
        case ModelKind::multi_ball:
            for (std::size_t i = 0; i < qvec.size(); ++i) merged[kvec[i]] += qvec[i];
            break;
    }
    std::vector<std::pair<int, Rational>> out;
    for (auto& [kk, w] : merged)
        if (w > 0) out.emplace_back(kk, w);
    return out;
}

int ModelSpec::degree() const { return mixture().back().first; }

std::string ModelSpec::describe() const {
    std::ostringstream os;
    os << "N=" << N << " ";
    switch (kind) {
        case ModelKind::classical:
            os << "classical";
            break;
        case ModelKind::q_deformed:
            os << "q_deformed(q=" << q.get_str() << ")";
            break;
        case ModelKind::k_ball:
            os << "k_ball(k=" << k << ")";
            break;
        case ModelKind::multi_ball:
            os << "multi_ball(";
            for (std::size_t i = 0; i < qvec.size(); ++i)
                os << (i ? "," : "") << qvec[i].get_str() << "@" << kvec[i];
            os << ")";
            break;
    }
    return os.str();
}

template <class T>
BandedMatrix<T> k_ball_matrix(int N, int k) {
    if (N < 1 || k < 0 || k > N) throw DomainError("k-ball model needs 0 <= k <= N");
    const int bw = std::min(k, N);
    BandedMatrix<T> out(N + 1, bw, bw);
    const Rational total = binomial(N, k);
    for (int i = 0; i <= N; ++i)
        for (int l = 0; l <= k; ++l) {
            const Rational p = binomial(i, k - l) * binomial(N - i, l) / total;
            if (sgn(p) == 0) continue;
            out.set(i, i - k + 2 * l, from_rational<T>(p));
        }
    return out;
}

template <class T>
BandedMatrix<T> q_deformed_matrix(int N, const Rational& q) {
    if (N < 2) throw DomainError("the q-deformed model needs N >= 2");
    const int bw = std::min(2, N);
    BandedMatrix<T> out(N + 1, bw, bw);
    const Rational pairs(N * (N - 1));
    const Rational one_minus = 1 - q;
    for (int i = 0; i <= N; ++i) {
        auto put = [&](int j, const Rational& v) {
            if (j >= 0 && j <= N && sgn(v) != 0) out.set(i, j, from_rational<T>(v));
        };
        put(i - 2, q * i * (i - 1) / pairs);
        put(i - 1, one_minus * i / N);
        put(i, 2 * q * i * (N - i) / pairs);
        put(i + 1, one_minus * (N - i) / N);
        put(i + 2, q * (N - i) * (N - i - 1) / pairs);
    }
    return out;
}

template <class T>
BandedMatrix<T> build(const ModelSpec& spec) {
    spec.validate();
    const int N = spec.N;
    BandedMatrix<T> out;
    switch (spec.kind) {
        case ModelKind::classical:
            out = k_ball_matrix<T>(N, 1);
            break;
        case ModelKind::q_deformed:
            out = q_deformed_matrix<T>(N, spec.q);
            break;
        case ModelKind::k_ball:
            out = k_ball_matrix<T>(N, spec.k);
            break;
        case ModelKind::multi_ball: {
            const auto parts = spec.mixture();
            const int bw = std::min(parts.back().first, N);
            Matrix<T> acc(static_cast<std::size_t>(N + 1), static_cast<std::size_t>(N + 1));
            for (const auto& [kk, w] : parts) acc += k_ball_matrix<T>(N, kk).dense() * from_rational<T>(w);
            out = BandedMatrix<T>::from_dense(acc, bw, bw);
            break;
        }
    }
    if (!is_stochastic(out, 1e-12)) throw DomainError("model " + spec.describe() + " is not stochastic");
    return out;
}

namespace {

using Poly = std::vector<Rational>;

void axpy(Poly& acc, const Rational& s, const Poly& p) {
    if (acc.size() < p.size()) acc.resize(p.size(), Rational(0));
    for (std::size_t i = 0; i < p.size(); ++i) acc[i] += s * p[i];
}

// K_0..K_kmax of -N(x-1)/2 as polynomials in x.
std::vector<Poly> krawtchouk_in_x(int N, int kmax) {
    std::vector<Poly> out{Poly{Rational(1)}};
    for (int j = 0; j < kmax; ++j) {
        Poly next(static_cast<std::size_t>(j) + 2, Rational(0));
        for (std::size_t i = 0; i < out[j].size(); ++i) next[i + 1] += N * out[j][i];
        if (j > 0) axpy(next, Rational(-j), out[j - 1]);
        for (auto& c : next) c /= (N - j);
        out.push_back(std::move(next));
    }
    return out;
}

}  // namespace

ThetaPolynomial<Rational> exact_theta(const ModelSpec& spec) {
    const auto parts = spec.mixture();
    const auto basis = krawtchouk_in_x(spec.N, parts.back().first);
    Poly acc;
    for (const auto& [kk, w] : parts) axpy(acc, w, basis[kk]);
    while (acc.size() > 1 && sgn(acc.back()) == 0) acc.pop_back();
    return ThetaPolynomial<Rational>{acc};
}

template <class T>
ThetaPolynomial<T> theta_for(const ModelSpec& spec) {
    return cast_theta<T>(exact_theta(spec));
}

template <class T>
T jk_recurrence_check(int N, int kmax) {
    if (kmax < 1 || kmax > N) throw DomainError("recurrence check needs 1 <= kmax <= N");
    const BandedMatrix<T> j1 = k_ball_matrix<T>(N, 1);
    std::vector<BandedMatrix<T>> jk;
    for (int k = 0; k <= kmax; ++k) jk.push_back(k_ball_matrix<T>(N, k));
    T worst(0);
    for (int k = 1; k < kmax; ++k) {
        Matrix<T> lhs = jk[k + 1].dense() * T(k - N);
        Matrix<T> rhs = jk[k - 1].dense() * T(k) - band_multiply(j1, jk[k]).dense() * T(N);
        const T d = max_abs_diff(lhs, rhs);
        if (d > worst) worst = d;
    }
    return worst;
}

template <class T>
T jk_krawtchouk_check(int N, int k) {
    if (N < 1 || k < 0 || k > N) throw DomainError("Krawtchouk check needs 0 <= k <= N");
    ThetaPolynomial<T> theta;
    if (k == 0) {
        theta.coefficients = {T(1)};
    } else {
        theta = theta_for<T>(ModelSpec::k_ball(N, k));
    }
    const auto via_theta = theta_of_matrix(theta, k_ball_matrix<T>(N, 1));
    return max_abs_diff(k_ball_matrix<T>(N, k).dense(), via_theta.dense());
}

template <class T>
int SpectrumReport<T>::count_repeated() const {
    int n = 0;
    for (const auto& c : classes) n += c.size() >= 2 ? 1 : 0;
    return n;
}

template <class T>
int SpectrumReport<T>::max_multiplicity() const {
    std::size_t best = 0;
    for (const auto& c : classes) best = std::max(best, c.size());
    return static_cast<int>(best);
}

template <class T>
GapReport<T> spectral_gap(const SpectrumReport<T>& report) {
    T worst_nontrivial(0);
    T worst_non_unimodular(0);
    for (std::size_t j = 0; j < report.eigenvalues.size(); ++j) {
        const T mag = magnitude(report.eigenvalues[j]);
        if (j > 0 && mag > worst_nontrivial) worst_nontrivial = mag;
        bool unimodular;
        if constexpr (is_exact_v<T>) {
            unimodular = mag == T(1);
        } else {
            unimodular = std::fabs(to_double(mag) - 1.0) <= 1e-12;
        }
        if (!unimodular && mag > worst_non_unimodular) worst_non_unimodular = mag;
    }
    return GapReport<T>{T(T(1) - worst_nontrivial), T(T(1) - worst_non_unimodular)};
}

template <class T>
SpectrumReport<T> spectrum(const ModelSpec& spec) {
    const auto theta = exact_theta(spec);
    const int N = spec.N;
    SpectrumReport<T> report;
    for (int j = 0; j <= N; ++j) {
        const Rational lambda = ratio(N - 2 * j, N);
        report.lambdas.push_back(from_rational<T>(lambda));
        report.eigenvalues.push_back(from_rational<T>(theta(lambda)));
    }
    report.class_of.assign(static_cast<std::size_t>(N) + 1, -1);
    for (int j = 0; j <= N; ++j) {
        if (report.class_of[j] >= 0) continue;
        std::vector<int> members{j};
        report.class_of[j] = j;
        const T& a = report.eigenvalues[j];
        for (int k = j + 1; k <= N; ++k) {
            if (report.class_of[k] >= 0) continue;
            const T& b = report.eigenvalues[k];
            bool same;
            if constexpr (is_exact_v<T>) {
                same = a == b;
            } else {
                same = std::fabs(to_double(T(a - b))) < 1e-9 * std::max(1.0, std::fabs(to_double(a)));
            }
            if (same) {
                report.class_of[k] = j;
                members.push_back(k);
            }
        }
        report.classes.push_back(std::move(members));
    }
    report.gap = spectral_gap(report).gap_excluding_one;
    return report;
}

Rational q_deformed_closed_form(int N, const Rational& q, int j) {
    return 2 * q * (N - j) * (N - 2 * j - 1) / Rational(N * (N - 1)) + ratio(2 * j - N, N);
}

std::vector<Rational> omega_set(int N) {
    if (N < 2) throw DomainError("Omega needs N >= 2");
    std::vector<Rational> out;
    for (int i = 0; i < N; ++i) out.emplace_back(ratio(N - 1, 3 * (N - 1) - 2 * i));
    return out;
}

MultiplicityReport multiplicity_report(int N, const Rational& q) {
    MultiplicityReport r;
    const auto omega = omega_set(N);
    for (int i = 0; i < N; ++i)
        if (omega[i] == q) {
            r.in_omega = true;
            r.i = i;
            r.predicted_doubles = i % 2 == 0 ? i / 2 + 1 : (i + 1) / 2;
            break;
        }
    const auto spec = spectrum<Rational>(ModelSpec::q_deformed(N, q));
    r.observed_doubles = spec.count_repeated();
    r.max_multiplicity = spec.max_multiplicity();
    return r;
}

template <class T>
std::vector<T> stationary(int N) {
    if (N < 1) throw DomainError("N must be at least 1");
    mpz_class two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(N));
    std::vector<T> pi;
    for (int m = 0; m <= N; ++m) pi.push_back(from_rational<T>(binomial(N, m) / Rational(two_pow)));
    return pi;
}

template <class T>
T stationarity_defect(const BandedMatrix<T>& m, const std::vector<T>& pi) {
    const int n = m.size();
    std::vector<T> out(static_cast<std::size_t>(n), T(0));
    for (int i = 0; i < n; ++i)
        for (int j = m.row_begin(i); j < m.row_end(i); ++j) out[j] += pi[i] * m(i, j);
    T worst(0);
    for (int j = 0; j < n; ++j) {
        const T d = magnitude(T(out[j] - pi[j]));
        if (d > worst) worst = d;
    }
    return worst;
}

template <class T>
T reversibility_defect(const BandedMatrix<T>& m, const std::vector<T>& pi) {
    T worst(0);
    for (int i = 0; i < m.size(); ++i)
        for (int j = m.row_begin(i); j < m.row_end(i); ++j) {
            const T d = magnitude(T(pi[i] * m(i, j) - pi[j] * m(j, i)));
            if (d > worst) worst = d;
        }
    return worst;
}

std::vector<double> numeric_eigenvalues(const BandedMatrix<double>& m, const std::vector<double>& pi) {
    const int n = m.size();
    Eigen::MatrixXd s(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s(i, j) = std::sqrt(pi[i]) * m(i, j) / std::sqrt(pi[j]);
    const Eigen::MatrixXd sym = 0.5 * (s + s.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

#define MVOP_INSTANTIATE(T)                                                              \
    template BandedMatrix<T> k_ball_matrix<T>(int, int);                                 \
    template BandedMatrix<T> q_deformed_matrix<T>(int, const Rational&);                 \
    template BandedMatrix<T> build<T>(const ModelSpec&);                                 \
    template ThetaPolynomial<T> theta_for<T>(const ModelSpec&);                          \
    template T jk_recurrence_check<T>(int, int);                                         \
    template T jk_krawtchouk_check<T>(int, int);                                         \
    template struct SpectrumReport<T>;                                                   \
    template SpectrumReport<T> spectrum<T>(const ModelSpec&);                            \
    template GapReport<T> spectral_gap<T>(const SpectrumReport<T>&);                     \
    template std::vector<T> stationary<T>(int);                                          \
    template T stationarity_defect<T>(const BandedMatrix<T>&, const std::vector<T>&);    \
    template T reversibility_defect<T>(const BandedMatrix<T>&, const std::vector<T>&);

MVOP_INSTANTIATE(double)
MVOP_INSTANTIATE(Extended)
MVOP_INSTANTIATE(Rational)
#undef MVOP_INSTANTIATE

}  // namespace mvop
