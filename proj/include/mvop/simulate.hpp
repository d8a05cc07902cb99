#pragma once

// Monte Carlo trajectories of the urn models.
//
// Randomness comes from Philox4x32-10 (Salmon et al., "Parallel random
// numbers: as easy as 1, 2, 3", SC'11), a counter-based generator: block b of
// trajectory t is Philox(counter = (b_lo, b_hi, t_lo, t_hi), key = seed).
// A trajectory's draws depend only on (seed, t), so any thread schedule
// reproduces the serial run bit for bit.

#include <array>
#include <cstdint>
#include <vector>

#include "mvop/banded.hpp"
#include "mvop/ehrenfest.hpp"

namespace mvop {

class Philox4x32 {
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter generate(Counter counter, Key key);
};

/// Stream `stream` of the generator keyed by `seed`.
class StreamRng {
public:
    StreamRng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();
    /// Uniform on [0, 1) with 53 random bits.
    double uniform();

private:
    Philox4x32::Key key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    Philox4x32::Counter buffer_{};
    int used_ = 4;
};

struct SimConfig {
    ModelSpec spec;
    int start = 0;
    int steps = 0;
    long long trials = 1;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Inverse-CDF sampling over the banded nonzeros of each row.
class TransitionSampler {
public:
    explicit TransitionSampler(const BandedMatrix<double>& m);

    int step(int state, double u) const;
    int states() const { return static_cast<int>(first_.size()); }

private:
    std::vector<int> first_;
    std::vector<std::vector<double>> cdf_;
};

/// States X_0..X_steps of trajectory `trajectory`.
std::vector<int> sample_path(const SimConfig& cfg, std::uint64_t trajectory = 0);

namespace kernels {

// Final state X_n of every trajectory, indexed by trajectory.
std::vector<int> final_states_serial(const TransitionSampler& sampler, const SimConfig& cfg, int n);
std::vector<int> final_states_parallel(const TransitionSampler& sampler, const SimConfig& cfg, int n);

}  // namespace kernels

struct EmpiricalReport {
    int n = 0;
    long long trials = 0;
    std::vector<long long> counts;
    std::vector<double> empirical;
    std::vector<double> analytic;
    double tv = 0.0;
    /// max_s |count_s - T p_s| / sqrt(T p_s (1 - p_s)); a state with
    /// p_s in {0, 1} contributes 0 if its count matches exactly, else infinity.
    double z_max = 0.0;
};

/// Empirical distribution of X_n over cfg.trials trajectories against the
/// spectral n-step row (evaluated exactly, then rounded). Requires
/// 0 <= n <= cfg.steps.
EmpiricalReport empirical_vs_analytic(const SimConfig& cfg, int n, Exec exec = Exec::parallel);

}  // namespace mvop
