#include "toehold/beta_forms.hpp"

#include <string>

#include "toehold/error.hpp"

namespace toehold::beta {

namespace {

void require_unit(const Rational& x, const char* who) {
    if (x < Rational(0) || x > Rational(1)) {
        throw DomainError(std::string(who) + ": x outside [0,1], got " + x.to_string());
    }
}

std::uint64_t checked_n(std::int64_t n) {
    if (n < 1) {
        throw DomainError("n must be >= 1, got " + std::to_string(n));
    }
    return static_cast<std::uint64_t>(n);
}

Rational pow2(std::int64_t e) { return rational_pow(Rational(2), e); }

// Shared pieces of the five integral forms at x = 1/(2n+1).
struct Pieces {
    Rational central;        // C(2n,n)
    Rational shrink_pow;     // (1 - 1/(2n+1)^2)^n
    Rational integral_nm1;   // integral_0^x (1-t^2)^(n-1) dt
    Rational integral_n;     // integral_0^x (1-t^2)^n dt
};

Pieces pieces(std::int64_t n) {
    const auto m = checked_n(n);
    const Rational x(BigInt(1), BigInt(static_cast<long>(2 * n + 1)));
    Pieces p;
    p.central = Rational(binomial(2 * m, m));
    p.shrink_pow = rational_pow(Rational(1) - x * x, n);
    p.integral_nm1 = symmetric_integral_exact(n - 1, x);
    p.integral_n = symmetric_integral_exact(n, x);
    return p;
}

const Rational kHalf(BigInt(1), BigInt(2));

}  // namespace

Rational incomplete_beta_exact(std::int64_t a, std::int64_t b, const Rational& x) {
    if (a < 1 || b < 1) {
        throw DomainError("incomplete_beta_exact: a and b must be >= 1");
    }
    require_unit(x, "incomplete_beta_exact");
    Rational total;
    Rational xp = rational_pow(x, a);
    for (std::int64_t j = 0; j < b; ++j) {
        Rational term = Rational(binomial(static_cast<std::uint64_t>(b - 1),
                                          static_cast<std::uint64_t>(j))) *
                        xp / Rational(a + j);
        total += (j % 2 == 0) ? term : -term;
        xp *= x;
    }
    return total;
}

Rational complete_beta(std::int64_t a, std::int64_t b) {
    if (a < 1 || b < 1) {
        throw DomainError("complete_beta: a and b must be >= 1");
    }
    // (a-1)!(b-1)!/(a+b-1)! = 1 / (a * C(a+b-1, a))
    const auto n = static_cast<std::uint64_t>(a + b - 1);
    return Rational(1) / (Rational(a) * Rational(binomial(n, static_cast<std::uint64_t>(a))));
}

Rational beta_tail_identity_gap(std::int64_t a, std::int64_t b, const Rational& x) {
    if (a < 1 || b < 1) {
        throw DomainError("beta_tail_identity_gap: a and b must be >= 1");
    }
    require_unit(x, "beta_tail_identity_gap");
    const auto m = static_cast<std::uint64_t>(a + b - 1);
    const Rational lhs = tail_binomial_sum(m, static_cast<std::uint64_t>(a), x);
    const Rational rhs = Rational(a) * Rational(binomial(m, static_cast<std::uint64_t>(a))) *
                         incomplete_beta_exact(a, b, x);
    return lhs - rhs;
}

Rational symmetric_integral_exact(std::int64_t m, const Rational& x) {
    if (m < 0) {
        throw DomainError("symmetric_integral_exact: m must be >= 0");
    }
    require_unit(x, "symmetric_integral_exact");
    const Rational x2 = x * x;
    Rational xp = x;
    Rational total;
    for (std::int64_t j = 0; j <= m; ++j) {
        Rational term = Rational(binomial(static_cast<std::uint64_t>(m),
                                          static_cast<std::uint64_t>(j))) *
                        xp / Rational(2 * j + 1);
        total += (j % 2 == 0) ? term : -term;
        xp *= x2;
    }
    return total;
}

Rational analytic_price_no_toehold(std::int64_t n) {
    const Pieces p = pieces(n);
    return kHalf - p.central * p.shrink_pow / pow2(2 * n + 1) +
           Rational(n) * p.central * p.integral_nm1 / pow2(2 * n);
}

Rational analytic_takeover_prob_no_toehold(std::int64_t n) {
    const Pieces p = pieces(n);
    return kHalf + Rational(2 * n + 1) * p.central * p.integral_n / pow2(2 * n + 1);
}

Rational analytic_profit(std::int64_t n) {
    const Pieces p = pieces(n);
    return Rational(n + 1) * p.central * p.shrink_pow / pow2(2 * n);
}

Rational analytic_takeover_prob_toehold(std::int64_t n) {
    const Pieces p = pieces(n);
    return kHalf + p.central * p.shrink_pow / pow2(2 * n + 1) +
           Rational(n) * p.central * p.integral_nm1 / pow2(2 * n);
}

Rational analytic_price_toehold(std::int64_t n) {
    const Pieces p = pieces(n);
    return kHalf + Rational(n) * p.central * p.integral_nm1 / pow2(2 * n);
}

}  // namespace toehold::beta
