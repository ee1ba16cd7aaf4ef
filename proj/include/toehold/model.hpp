#pragma once

#include <cstdint>
#include <string_view>

#include "toehold/exact_core.hpp"

namespace toehold::model {

/// The investor's two strategies: tender for all 2n+1 shares, or first buy
/// a one-share toehold at the no-toehold price and tender for the other 2n.
enum class StrategyId { NoToehold, Toehold };

std::string_view to_string(StrategyId s);

/// Equilibrium parameters for a firm with 2n+1 shareholders.
struct ModelPoint {
    std::int64_t n = 0;
    Rational sigma;                     ///< tender probability, equal in both strategies
    Rational price_no_toehold;          ///< X0
    Rational takeover_prob_no_toehold;  ///< P0
    Rational price_toehold;             ///< X1
    Rational takeover_prob_toehold;     ///< P1
    Rational expected_profit;           ///< common to both strategies

    friend bool operator==(const ModelPoint&, const ModelPoint&) = default;
};

/// (n+1)/(2n+1). All functions taking n throw DomainError when n < 1.
Rational equilibrium_sigma(std::int64_t n);

/// Pr(at least n+1 of the other 2n tender) at the equilibrium sigma.
Rational price_no_toehold(std::int64_t n);
/// Pr(at least n+1 of 2n+1 tender).
Rational takeover_prob_no_toehold(std::int64_t n);
/// Pr(at least n of the other 2n-1 tender).
Rational price_toehold(std::int64_t n);
/// Pr(at least n of 2n tender); the toehold supplies the remaining vote.
Rational takeover_prob_toehold(std::int64_t n);
/// C(2n,n) (n+1)^(n+1) n^n / (2n+1)^(2n).
Rational expected_profit(std::int64_t n);

/// Assembles all parameters and checks the ordering invariants plus
/// P1 == X0 + C(2n,n) sigma^n (1-sigma)^n. A violation throws
/// InternalConsistencyError.
ModelPoint model_point(std::int64_t n);

/// Expected investor profit when shareholders tender with probability
/// `sigma` and the tender price is the indifference price at `sigma`.
///
/// NoToehold: (2n+1) C(2n,n) sigma^(n+1) (1-sigma)^n.
/// Toehold: -X0 + Pr(k >= n of 2n) + n C(2n,n) sigma^n (1-sigma)^n, with the
/// toehold bought at the fixed equilibrium price X0 = price_no_toehold(n).
///
/// Requires 0 < sigma < 1 (DomainError otherwise).
Rational profit_curve(std::int64_t n, const Rational& sigma, StrategyId strategy);

/// Same quantity as profit_curve, summed directly over the number k of
/// tendered shares before any rearrangement: for each k, the probability of
/// k tenders times the per-outcome payoff.
Rational profit_by_outcome_sum(std::int64_t n, const Rational& sigma, StrategyId strategy);

/// d/dsigma of the Toehold profit curve:
/// n C(2n,n) sigma^(n-1) (1-sigma)^(n-1) (1 - sigma + n (1 - 2 sigma)).
Rational profit_derivative_toehold(std::int64_t n, const Rational& sigma);

/// price - Pr(enough other shareholders tender for a takeover). Zero iff
/// (price, sigma) satisfies the indifference condition.
Rational indifference_gap(std::int64_t n, StrategyId strategy, const Rational& price,
                          const Rational& sigma);

}  // namespace toehold::model
