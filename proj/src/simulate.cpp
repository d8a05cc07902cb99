#include "mvop/simulate.hpp"

#include <cmath>
#include <limits>

#include "mvop/errors.hpp"
#include "mvop/km_kernel.hpp"

namespace mvop {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

}  // namespace

Philox4x32::Counter Philox4x32::generate(Counter ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
        mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

StreamRng::StreamRng(std::uint64_t seed, std::uint64_t stream)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)}, stream_(stream) {}

std::uint64_t StreamRng::next_u64() {
    if (used_ >= 4) {
        buffer_ = Philox4x32::generate({static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                                        static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)},
                                       key_);
        ++block_;
        used_ = 0;
    }
    const std::uint64_t out = (static_cast<std::uint64_t>(buffer_[used_]) << 32) | buffer_[used_ + 1];
    used_ += 2;
    return out;
}

double StreamRng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

void SimConfig::validate() const {
    spec.validate();
    if (trials < 1) throw DomainError("trials must be at least 1");
    if (steps < 0) throw DomainError("steps must be nonnegative");
    if (start < 0 || start > spec.N) throw DomainError("start state out of range");
}

TransitionSampler::TransitionSampler(const BandedMatrix<double>& m) {
    for (int i = 0; i < m.size(); ++i) {
        first_.push_back(m.row_begin(i));
        std::vector<double> cdf;
        double acc = 0.0;
        for (int j = m.row_begin(i); j < m.row_end(i); ++j) {
            acc += m(i, j);
            cdf.push_back(acc);
        }
        cdf_.push_back(std::move(cdf));
    }
}

int TransitionSampler::step(int state, double u) const {
    const auto& cdf = cdf_[state];
    const double target = u * cdf.back();
    int last_positive = -1;
    double prev = 0.0;
    for (std::size_t k = 0; k < cdf.size(); ++k) {
        if (cdf[k] > prev) {
            last_positive = static_cast<int>(k);
            if (target < cdf[k]) return first_[state] + static_cast<int>(k);
        }
        prev = cdf[k];
    }
    return first_[state] + last_positive;
}

namespace {

int run_trajectory(const TransitionSampler& sampler, const SimConfig& cfg, std::uint64_t trajectory, int n,
                   std::vector<int>* path) {
    StreamRng rng(cfg.seed, trajectory);
    int state = cfg.start;
    if (path) path->push_back(state);
    for (int t = 0; t < n; ++t) {
        state = sampler.step(state, rng.uniform());
        if (path) path->push_back(state);
    }
    return state;
}

}  // namespace

std::vector<int> sample_path(const SimConfig& cfg, std::uint64_t trajectory) {
    cfg.validate();
    const TransitionSampler sampler(to_double(build<Rational>(cfg.spec)));
    std::vector<int> path;
    path.reserve(static_cast<std::size_t>(cfg.steps) + 1);
    run_trajectory(sampler, cfg, trajectory, cfg.steps, &path);
    return path;
}

namespace kernels {

std::vector<int> final_states_serial(const TransitionSampler& sampler, const SimConfig& cfg, int n) {
    std::vector<int> out(static_cast<std::size_t>(cfg.trials));
    for (long long t = 0; t < cfg.trials; ++t)
        out[t] = run_trajectory(sampler, cfg, static_cast<std::uint64_t>(t), n, nullptr);
    return out;
}

std::vector<int> final_states_parallel(const TransitionSampler& sampler, const SimConfig& cfg, int n) {
    std::vector<int> out(static_cast<std::size_t>(cfg.trials));
    const long long trials = cfg.trials;
#pragma omp parallel for schedule(static)
    for (long long t = 0; t < trials; ++t)
        out[t] = run_trajectory(sampler, cfg, static_cast<std::uint64_t>(t), n, nullptr);
    return out;
}

}  // namespace kernels

EmpiricalReport empirical_vs_analytic(const SimConfig& cfg, int n, Exec exec) {
    cfg.validate();
    if (n < 0 || n > cfg.steps) throw DomainError("time index must lie in [0, steps]");
    const TransitionSampler sampler(to_double(build<Rational>(cfg.spec)));
    const auto finals = exec == Exec::parallel ? kernels::final_states_parallel(sampler, cfg, n)
                                               : kernels::final_states_serial(sampler, cfg, n);
    EmpiricalReport r;
    r.n = n;
    r.trials = cfg.trials;
    r.counts.assign(static_cast<std::size_t>(cfg.spec.N) + 1, 0);
    for (int s : finals) ++r.counts[s];

    // The spectral row is evaluated exactly so that impossible states get
    // probability exactly 0.
    const auto ctx = make_km_context<Rational>(cfg.spec, false);
    for (const auto& v : n_step_distribution(ctx, cfg.start, n)) r.analytic.push_back(v.get_d());
    const auto trials = static_cast<double>(cfg.trials);
    for (std::size_t s = 0; s < r.counts.size(); ++s) {
        r.empirical.push_back(static_cast<double>(r.counts[s]) / trials);
        const double p = std::min(1.0, std::max(0.0, r.analytic[s]));
        const double var = trials * p * (1.0 - p);
        const double dev = std::fabs(static_cast<double>(r.counts[s]) - trials * p);
        double z;
        if (var > 0.0) {
            z = dev / std::sqrt(var);
        } else {
            z = dev < 0.5 ? 0.0 : std::numeric_limits<double>::infinity();
        }
        r.z_max = std::max(r.z_max, z);
    }
    r.tv = tv_distance(r.empirical, r.analytic);
    return r;
}

}  // namespace mvop
