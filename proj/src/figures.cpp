#include "mvop/figures.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "mvop/ehrenfest.hpp"
#include "mvop/errors.hpp"
#include "mvop/scalar_orthopoly.hpp"

namespace mvop {

std::vector<Rational> parse_grid(std::string_view text) {
    const auto c1 = text.find(':');
    const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
    if (c2 == std::string_view::npos) throw DomainError("grid must look like lo:hi:step");
    const Rational lo = parse_rational(text.substr(0, c1));
    const Rational hi = parse_rational(text.substr(c1 + 1, c2 - c1 - 1));
    const Rational step = parse_rational(text.substr(c2 + 1));
    if (step <= 0 || hi < lo) throw DomainError("grid needs lo <= hi and a positive step");
    std::vector<Rational> out;
    for (long i = 0;; ++i) {
        Rational v = lo + step * i;
        if (v > hi) break;
        out.push_back(v);
        if (out.size() > 10'000'000) throw DomainError("grid too large");
    }
    return out;
}

std::vector<Fig1Row> fig1_rows(int N, const std::vector<Rational>& qs) {
    std::vector<Fig1Row> rows;
    for (const auto& q : qs) {
        const auto spec = spectrum<Rational>(ModelSpec::q_deformed(N, q));
        for (int j = 0; j <= N; ++j) rows.push_back({q, j, spec.eigenvalues[j]});
    }
    return rows;
}

std::vector<Fig2Row> fig2_rows(int N, const Rational& q, const std::vector<int>& ks) {
    if (q < 0 || q > 1) throw DomainError("q must lie in [0, 1]");
    std::vector<Fig2Row> rows;
    for (int k : ks) {
        if (k < 1 || k > N) throw DomainError("k must lie in [1, N]");
        const std::size_t first = rows.size();
        Rational best = -1;
        for (int j = 0; j <= N; ++j) {
            const Rational x(j);
            Rational lambda = (1 - q) * krawtchouk_eval(1, x, N) + q * krawtchouk_eval(k, x, N);
            const Rational mag = magnitude(lambda);
            if (mag < 1 && mag > best) best = mag;
            rows.push_back({k, j, lambda, false});
        }
        for (std::size_t r = first; r < rows.size(); ++r) rows[r].is_subdominant = magnitude(rows[r].eigenvalue) == best;
    }
    return rows;
}

std::vector<Rational> eigenvalue_crossings(int N) {
    // Theta_q(lambda_j) is affine in q: value = at0 + q (at1 - at0).
    const auto at0 = spectrum<Rational>(ModelSpec::q_deformed(N, 0)).eigenvalues;
    const auto at1 = spectrum<Rational>(ModelSpec::q_deformed(N, 1)).eigenvalues;
    std::set<Rational> found;
    for (int a = 0; a <= N; ++a)
        for (int b = a + 1; b <= N; ++b) {
            const Rational slope_a = at1[a] - at0[a];
            const Rational slope_b = at1[b] - at0[b];
            if (slope_a == slope_b) continue;
            const Rational q = (at0[b] - at0[a]) / (slope_a - slope_b);
            if (q >= 0 && q <= 1) found.insert(q);
        }
    return {found.begin(), found.end()};
}

std::vector<Rational> repeated_eigenvalue_qs(const std::vector<Fig1Row>& rows) {
    std::map<Rational, std::vector<Rational>> by_q;
    for (const auto& r : rows) by_q[r.q].push_back(r.eigenvalue);
    std::vector<Rational> out;
    for (auto& [q, values] : by_q) {
        std::sort(values.begin(), values.end());
        if (std::adjacent_find(values.begin(), values.end()) != values.end()) out.push_back(q);
    }
    return out;
}

}  // namespace mvop
