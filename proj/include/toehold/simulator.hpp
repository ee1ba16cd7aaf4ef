#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "toehold/exact_core.hpp"
#include "toehold/model.hpp"

namespace toehold::sim {

/// Philox4x32 with 10 rounds: a keyed bijection on 128-bit counters.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// Uniform 64-bit draw for one shareholder in one trial. Pure function of
/// its arguments, so any partition of trials across workers sees the same
/// stream.
std::uint64_t uniform_draw(std::uint64_t seed, std::uint64_t trial, std::uint64_t shareholder);

/// round(sigma * 2^64), clamped to [0, 2^64 - 1]. A draw u tenders iff
/// u < threshold; the bias is at most 2^-64 per draw.
std::uint64_t bernoulli_threshold(const Rational& sigma);

struct SimConfig {
    std::int64_t n = 1;
    model::StrategyId strategy = model::StrategyId::NoToehold;
    std::optional<Rational> sigma;  ///< equilibrium_sigma(n) when empty
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;
};

struct SimSummary {
    double takeover_frequency = 0;
    double mean_profit = 0;
    double stderr_takeover = 0;  ///< sample sd / sqrt(trials); 0 when trials == 1
    double stderr_profit = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::uint64_t takeover_count = 0;
    Rational sigma;

    friend bool operator==(const SimSummary&, const SimSummary&) = default;
};

/// Throws DomainError for n < 1, trials == 0 or sigma outside (0,1).
/// The result is bit-identical for every worker count.
SimSummary run_trials(const SimConfig& config, unsigned workers = 1);

struct ExactOutcome {
    Rational takeover_prob;
    Rational expected_profit;
};

/// Sums over every subset of tendering shareholders, weighting each by
/// sigma^|S| (1-sigma)^(m-|S|). Prices come from the same enumeration.
/// Throws DomainError for n > 6 or sigma outside (0,1).
ExactOutcome enumerate_exact(std::int64_t n, const Rational& sigma, model::StrategyId strategy);

struct Comparison {
    SimSummary summary;
    Rational exact_takeover;
    Rational exact_profit;
    /// |empirical - exact| / stderr; empty when stderr is 0 and they differ.
    std::optional<double> z_takeover;
    std::optional<double> z_profit;
};

Comparison empirical_vs_exact(const SimConfig& config, unsigned workers = 1);

}  // namespace toehold::sim
