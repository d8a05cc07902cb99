#pragma once

// Data behind the eigenvalue plots. Values are exact; callers decide how to
// print them.

#include <string_view>
#include <vector>

#include "mvop/numeric.hpp"

namespace mvop {

/// One point of the curve q -> Theta_q(lambda_j) of the q-deformed model.
struct Fig1Row {
    Rational q;
    int j = 0;
    Rational eigenvalue;
};

/// One point of lambda_j^k = (1-q) K_1(j) + q K_k(j).
struct Fig2Row {
    int k = 0;
    int j = 0;
    Rational eigenvalue;
    bool is_subdominant = false;  // largest |lambda| < 1 for this k (ties all flagged)
};

/// "lo:hi:step", inclusive of hi when it lies on the grid. Bounds and step
/// are parsed exactly, so 0:1:0.005 has 201 points.
std::vector<Rational> parse_grid(std::string_view text);

std::vector<Fig1Row> fig1_rows(int N, const std::vector<Rational>& qs);

std::vector<Fig2Row> fig2_rows(int N, const Rational& q, const std::vector<int>& ks);

/// Every q in [0, 1] where two of the affine curves q -> Theta_q(lambda_j)
/// meet, sorted and deduplicated.
std::vector<Rational> eigenvalue_crossings(int N);

/// The q values of `rows` at which some eigenvalue occurs twice.
std::vector<Rational> repeated_eigenvalue_qs(const std::vector<Fig1Row>& rows);

}  // namespace mvop
