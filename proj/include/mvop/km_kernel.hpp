#pragma once

// n-step transition probabilities of Theta(J) from the spectral data:
//
//   (Theta(J)^n)_ij = (1/h_j) sum_x Theta(v_x)^n p_i(v_x) p_j(v_x) w_x,
//
// and, block by block with the matrix-valued polynomials,
//
//   [Theta(J)^n]_IJ = (sum_x Theta(v_x)^n P_I(Theta(v_x)) W(x) P_J(Theta(v_x))^T) H_J^-1.
//
// Theta(v_x)^n is formed by repeated multiplication; no eigensolver is used.

#include <optional>
#include <vector>

#include "mvop/banded.hpp"
#include "mvop/block_mvop.hpp"
#include "mvop/ehrenfest.hpp"
#include "mvop/scalar_orthopoly.hpp"

namespace mvop {

template <class T>
struct KMContext {
    ModelSpec model;
    ScalarFamily<T> fam;
    DiscreteMeasure<T> mu;
    ThetaPolynomial<T> theta;
    SupportTable<T> table;  // Theta(v_x) taken from the exact spectrum
    int m = 1;              // block size = deg Theta
    std::optional<BlockTridiagonal<T>> blocks;
    std::optional<std::vector<MatrixPolynomial<T>>> mvops;
    std::vector<Matrix<T>> H;

    int states() const { return model.N + 1; }
    bool has_blocks() const { return blocks.has_value() && mvops.has_value(); }
};

/// Assembles the spectral data of `spec`. Block data is attached when
/// `with_blocks` is set and deg Theta divides N + 1; otherwise the block
/// routines throw ContextError. Propagates IllConditionedBlock.
/// On floating backends the support table is computed exactly and rounded.
/// The block recurrence itself is evaluated in T; in double it is only
/// trustworthy for small N, so use Extended for block work.
template <class T>
KMContext<T> make_km_context(const ModelSpec& spec, bool with_blocks = true);

/// Raw entry; float cancellation is not clamped.
template <class T>
T km_scalar_entry(const KMContext<T>& ctx, int n, int i, int j);

template <class T>
Matrix<T> km_block_entry(const KMContext<T>& ctx, int n, int I, int J);

namespace kernels {

// All (N+1)^2 entries of Theta(J)^n from the scalar representation. The
// parallel variant distributes rows; per-entry arithmetic is identical.
template <class T>
Matrix<T> km_matrix_serial(const KMContext<T>& ctx, int n);

template <class T>
Matrix<T> km_matrix_parallel(const KMContext<T>& ctx, int n);

}  // namespace kernels

template <class T>
Matrix<T> km_matrix(const KMContext<T>& ctx, int n, Exec exec = Exec::parallel) {
    return exec == Exec::parallel ? kernels::km_matrix_parallel(ctx, n) : kernels::km_matrix_serial(ctx, n);
}

/// Theta(J)^n assembled from the L x L grid of m x m block entries.
template <class T>
Matrix<T> km_block_matrix(const KMContext<T>& ctx, int n);

/// Row `start` of Theta(J)^n. On the real backend entries in [-1e-12, 0)
/// are clamped to 0.
template <class T>
std::vector<T> n_step_distribution(const KMContext<T>& ctx, int start, int n);

/// (1/2) sum |p_i - q_i|. Throws DomainError on a length mismatch.
template <class T>
T tv_distance(const std::vector<T>& p, const std::vector<T>& q);

}  // namespace mvop
