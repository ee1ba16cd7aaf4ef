#include "toehold/model.hpp"

#include <string>
#include <vector>

#include "toehold/error.hpp"

namespace toehold::model {

namespace {

std::uint64_t checked_n(std::int64_t n) {
    if (n < 1) {
        throw DomainError("n must be >= 1, got " + std::to_string(n));
    }
    return static_cast<std::uint64_t>(n);
}

void require_interior(const Rational& sigma) {
    if (sigma <= Rational(0) || sigma >= Rational(1)) {
        throw DomainError("sigma must lie strictly inside (0,1), got " + sigma.to_string());
    }
}

// C(2n,n) sigma^n (1-sigma)^n
Rational central_weight(std::uint64_t n, const Rational& sigma) {
    const auto e = static_cast<std::int64_t>(n);
    return Rational(binomial(2 * n, n)) * rational_pow(sigma, e) *
           rational_pow(Rational(1) - sigma, e);
}

}  // namespace

std::string_view to_string(StrategyId s) {
    return s == StrategyId::NoToehold ? "no_toehold" : "toehold";
}

Rational equilibrium_sigma(std::int64_t n) {
    checked_n(n);
    return Rational(BigInt(static_cast<long>(n + 1)), BigInt(static_cast<long>(2 * n + 1)));
}

Rational price_no_toehold(std::int64_t n) {
    const auto m = checked_n(n);
    return tail_binomial_sum(2 * m, m + 1, equilibrium_sigma(n));
}

Rational takeover_prob_no_toehold(std::int64_t n) {
    const auto m = checked_n(n);
    return tail_binomial_sum(2 * m + 1, m + 1, equilibrium_sigma(n));
}

Rational price_toehold(std::int64_t n) {
    const auto m = checked_n(n);
    return tail_binomial_sum(2 * m - 1, m, equilibrium_sigma(n));
}

Rational takeover_prob_toehold(std::int64_t n) {
    const auto m = checked_n(n);
    return tail_binomial_sum(2 * m, m, equilibrium_sigma(n));
}

Rational expected_profit(std::int64_t n) {
    const auto m = checked_n(n);
    const Rational np1(static_cast<long>(n + 1));
    const Rational nn(static_cast<long>(n));
    const Rational two_np1(static_cast<long>(2 * n + 1));
    return Rational(binomial(2 * m, m)) * rational_pow(np1, n + 1) * rational_pow(nn, n) /
           rational_pow(two_np1, 2 * n);
}

ModelPoint model_point(std::int64_t n) {
    const auto m = checked_n(n);
    ModelPoint p;
    p.n = n;
    p.sigma = equilibrium_sigma(n);
    p.price_no_toehold = price_no_toehold(n);
    p.takeover_prob_no_toehold = takeover_prob_no_toehold(n);
    p.price_toehold = price_toehold(n);
    p.takeover_prob_toehold = takeover_prob_toehold(n);
    p.expected_profit = expected_profit(n);

    auto fail = [n](const char* what) {
        throw InternalConsistencyError("model_point(" + std::to_string(n) + "): " + what);
    };
    const Rational zero(0);
    const Rational one(1);
    const Rational half(BigInt(1), BigInt(2));
    if (!(zero < p.price_no_toehold && p.price_no_toehold < p.price_toehold && p.price_toehold < one)) {
        fail("expected 0 < X0 < X1 < 1");
    }
    if (!(half < p.takeover_prob_no_toehold &&
          p.takeover_prob_no_toehold < p.takeover_prob_toehold && p.takeover_prob_toehold < one)) {
        fail("expected 1/2 < P0 < P1 < 1");
    }
    if (p.takeover_prob_toehold != p.price_no_toehold + central_weight(m, p.sigma)) {
        fail("P1 != X0 + C(2n,n) sigma^n (1-sigma)^n");
    }
    return p;
}

Rational profit_curve(std::int64_t n, const Rational& sigma, StrategyId strategy) {
    const auto m = checked_n(n);
    require_interior(sigma);
    if (strategy == StrategyId::NoToehold) {
        return Rational(static_cast<long>(2 * n + 1)) * central_weight(m, sigma) * sigma;
    }
    return -price_no_toehold(n) + tail_binomial_sum(2 * m, m, sigma) +
           Rational(static_cast<long>(n)) * central_weight(m, sigma);
}

Rational profit_by_outcome_sum(std::int64_t n, const Rational& sigma, StrategyId strategy) {
    const auto m = checked_n(n);
    require_interior(sigma);
    const bool toehold = strategy == StrategyId::Toehold;
    // k of `shares` tender; takeover iff k >= need. Without a toehold the
    // price is X0 on 2n+1 shares; with one the bidder paid X0 for its own
    // share and offers X1 to the remaining 2n.
    const std::uint64_t shares = toehold ? 2 * m : 2 * m + 1;
    const std::uint64_t need = toehold ? m : m + 1;
    const Rational price = toehold ? tail_binomial_sum(2 * m - 1, m, sigma)
                                   : tail_binomial_sum(2 * m, m + 1, sigma);

    // sigma = a/b; outcome k has weight C(shares,k) a^k (b-a)^(shares-k) / b^shares.
    const BigInt& a = sigma.numerator();
    const BigInt& b = sigma.denominator();
    const BigInt c = b - a;
    std::vector<BigInt> c_pow(shares + 1);
    c_pow[0] = 1;
    for (std::uint64_t k = 1; k <= shares; ++k) {
        c_pow[k] = c_pow[k - 1] * c;
    }
    BigInt a_pow = 1;
    BigInt won_value;  // sum of weight * (shares held after a takeover)
    BigInt tendered;   // sum of weight * k
    for (std::uint64_t k = 0; k <= shares; ++k) {
        const BigInt w = binomial(shares, k) * a_pow * c_pow[shares - k];
        tendered += w * k;
        if (k >= need) {
            won_value += w * (toehold ? k + 1 : k);
        }
        a_pow *= a;
    }
    BigInt scale;
    mpz_pow_ui(scale.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(shares));
    const Rational total = (Rational(won_value) - price * Rational(tendered)) / Rational(scale);
    return toehold ? total - price_no_toehold(n) : total;
}

Rational profit_derivative_toehold(std::int64_t n, const Rational& sigma) {
    const auto m = checked_n(n);
    require_interior(sigma);
    const Rational one(1);
    const Rational nn(static_cast<long>(n));
    const Rational factor = one - sigma + nn * (one - Rational(2) * sigma);
    return nn * Rational(binomial(2 * m, m)) * rational_pow(sigma, n - 1) *
           rational_pow(one - sigma, n - 1) * factor;
}

Rational indifference_gap(std::int64_t n, StrategyId strategy, const Rational& price,
                          const Rational& sigma) {
    const auto m = checked_n(n);
    require_interior(sigma);
    if (strategy == StrategyId::NoToehold) {
        return price - tail_binomial_sum(2 * m, m + 1, sigma);
    }
    return price - tail_binomial_sum(2 * m - 1, m, sigma);
}

}  // namespace toehold::model
