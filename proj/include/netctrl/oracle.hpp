#pragma once

// Randomized exact-arithmetic controllability oracle. A topology is
// structurally controllable iff some weight vector makes (A(w), B(w))
// controllable, and the uncontrollable weight set has measure zero, so
// testing the Kalman rank at a handful of random integer weight vectors
// decides the question with one-sided certainty: a full-rank trial is a
// certificate, repeated failures are overwhelming probabilistic evidence.

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "netctrl/parameterization.hpp"
#include "netctrl/topology.hpp"

namespace netctrl {

struct OracleConfig {
    int trials = 5;
    std::uint64_t seed = 0;
    std::int64_t min_weight = 1;  // inclusive range; must not contain 0
    std::int64_t max_weight = 1'000'000;
};

namespace detail {

inline void validate(const OracleConfig& config) {
    if (config.trials < 1) throw std::invalid_argument("oracle needs at least one trial");
    if (config.min_weight > config.max_weight) throw std::invalid_argument("weight range is empty");
    if (config.min_weight <= 0 && config.max_weight >= 0)
        throw std::invalid_argument("weight range must exclude 0");
}

// splitmix64: portable, seedable, byte-identical across platforms, which the
// determinism contract needs and std:: distributions do not give.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t next_random(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    return mix64(state);
}

/// Start state of the per-trial random stream: seed and 1-based trial index
/// hashed together, so trials are reproducible independent of execution order.
inline std::uint64_t trial_stream(std::uint64_t seed, int trial) {
    return mix64(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(trial));
}

}  // namespace detail

/// Integer weights for one trial, drawn uniformly from the configured range.
inline WeightAssignment draw_weights(int sigma, const OracleConfig& config, int trial) {
    detail::validate(config);
    std::uint64_t state = detail::trial_stream(config.seed, trial);
    const std::uint64_t span = static_cast<std::uint64_t>(config.max_weight) -
                               static_cast<std::uint64_t>(config.min_weight) + 1;
    std::vector<Rational> values;
    values.reserve(sigma);
    for (int k = 0; k < sigma; ++k) {
        const std::int64_t w =
            config.min_weight + static_cast<std::int64_t>(detail::next_random(state) % span);
        values.emplace_back(w);
    }
    return WeightAssignment(std::move(values));
}

/// Kalman controllability matrix [B, AB, A^2 B, ..., A^{n-1} B].
inline Matrix<Rational> kalman_matrix(const Matrix<Rational>& a, const Matrix<Rational>& b) {
    if (a.rows() != a.cols()) throw std::invalid_argument("kalman_matrix: A must be square");
    if (b.rows() != a.rows()) throw std::invalid_argument("kalman_matrix: A and B row counts differ");
    Matrix<Rational> block = b;
    Matrix<Rational> out = b;
    for (int power = 1; power < a.rows(); ++power) {
        block = a * block;
        out = hconcat(out, block);
    }
    return out;
}

/// Exact rank of the Kalman matrix over the rationals.
inline int controllability_rank(const Matrix<Rational>& a, const Matrix<Rational>& b) {
    return rank(kalman_matrix(a, b));
}

struct OracleResult {
    bool controllable = false;
    std::optional<WeightAssignment> witness;
    int trials_run = 0;
    int rank_achieved = 0;
};

/// Samples weight vectors trial by trial and tests Kalman rank = n, stopping
/// at the first success. controllable = true is a certificate (the witness
/// weights provably work); false only says no sampled vector worked.
inline OracleResult oracle_decide(const CommunicationTopology& topo, const OracleConfig& config = {}) {
    detail::validate(config);
    const LinearParameterization param = build_parameterization(topo);
    OracleResult out;
    for (int trial = 1; trial <= config.trials; ++trial) {
        WeightAssignment w = draw_weights(param.sigma(), config, trial);
        const auto [a, b] = assemble_matrices(param, w);
        const int r = controllability_rank(a, b);
        out.trials_run = trial;
        if (r > out.rank_achieved) out.rank_achieved = r;
        if (r == param.n) {
            out.controllable = true;
            out.witness = std::move(w);
            break;
        }
    }
    return out;
}

/// Generic rank of [A(w) B(w)]: the maximum rank over all parameter values,
/// estimated from below by sampling; exact with probability 1 per trial.
inline int generic_rank(const LinearParameterization& param, const OracleConfig& config = {}) {
    detail::validate(config);
    int best = 0;
    for (int trial = 1; trial <= config.trials; ++trial) {
        const WeightAssignment w = draw_weights(param.sigma(), config, trial);
        const auto [a, b] = assemble_matrices(param, w);
        best = std::max(best, rank(hconcat(a, b)));
        if (best == param.n) break;
    }
    return best;
}

}  // namespace netctrl
