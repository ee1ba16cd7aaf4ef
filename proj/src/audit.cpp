#include "toehold/audit.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <variant>

#include "toehold/beta_forms.hpp"
#include "toehold/error.hpp"
#include "toehold/model.hpp"

namespace toehold::audit {

using ival::Interval;

namespace {

constexpr std::array<ClaimId, kClaimCount> kClaims = {
    ClaimId::X0_BOUNDS,     ClaimId::X1_BOUNDS,     ClaimId::P0_BOUNDS,
    ClaimId::P1_BOUNDS,     ClaimId::PI_BOUNDS,     ClaimId::DIFF_P_BOUNDS,
    ClaimId::DIFF_X_BOUNDS, ClaimId::ELEM_INEQ_1,   ClaimId::ELEM_INEQ_2,
    ClaimId::ELEM_INEQ_3,   ClaimId::SOME_1,        ClaimId::SOME_2,
    ClaimId::SOME_3,        ClaimId::SOME_4,        ClaimId::STIRLING_REMAINDER,
    ClaimId::CENTRAL_BINOM_BOUNDS,
};

constexpr std::array<std::string_view, kClaimCount> kNames = {
    "X0_BOUNDS",   "X1_BOUNDS",   "P0_BOUNDS",          "P1_BOUNDS",
    "PI_BOUNDS",   "DIFF_P_BOUNDS", "DIFF_X_BOUNDS",    "ELEM_INEQ_1",
    "ELEM_INEQ_2", "ELEM_INEQ_3", "SOME_1",             "SOME_2",
    "SOME_3",      "SOME_4",      "STIRLING_REMAINDER", "CENTRAL_BINOM_BOUNDS",
};

Rational q(long num, long den = 1) { return Rational(BigInt(num), BigInt(den)); }

using Term = std::variant<Rational, Interval>;

Interval as_interval(const Term& t, long p) {
    if (const auto* r = std::get_if<Rational>(&t)) {
        return ival::interval_from_rational(*r, p);
    }
    return std::get<Interval>(t);
}

Interval point(const Rational& r, long p) { return ival::interval_from_rational(r, p); }

// 1/sqrt(pi n)
Interval inv_sqrt_pi_n(std::int64_t n, long p) {
    const Interval pi_n = ival::pi_interval(p) * point(Rational(n), p);
    return point(Rational(1), p) / ival::sqrt_interval(pi_n, p);
}

// offset + s * c_lo < value < offset + s * c_hi, with s = 1/sqrt(pi n).
std::vector<Term> scaled_chain(std::int64_t n, long p, const Rational& value,
                               const Rational& offset, const Rational& c_lo,
                               const Rational& c_hi) {
    const Interval s = inv_sqrt_pi_n(n, p);
    const Interval lower = point(offset, p) + s * point(c_lo, p);
    const Interval upper = point(offset, p) + s * point(c_hi, p);
    return {lower, point(value, p), upper};
}

std::vector<Term> chain_for(ClaimId claim, std::int64_t n, const Rational& x, long p) {
    const Rational N(n);
    const Rational one(1);
    const Rational half = q(1, 2);
    const Rational inv_n = one / N;
    const Rational inv_n2 = inv_n * inv_n;
    const Rational inv_n3 = inv_n2 * inv_n;
    const Rational u = q(1, 2 * n + 1);

    switch (claim) {
        case ClaimId::X0_BOUNDS:
            return scaled_chain(n, p, model::price_no_toehold(n), half,
                                -q(1, 6) * inv_n - q(1, 64) * inv_n2,
                                -q(1, 6) * inv_n + q(5, 24) * inv_n2);
        case ClaimId::X1_BOUNDS:
            return scaled_chain(n, p, model::price_toehold(n), half,
                                half - q(5, 16) * inv_n + q(1, 48) * inv_n2,
                                half - q(5, 16) * inv_n + q(1, 12) * inv_n2);
        case ClaimId::P0_BOUNDS:
            return scaled_chain(n, p, model::takeover_prob_no_toehold(n), half,
                                half - q(5, 48) * inv_n + q(1, 16) * inv_n2,
                                half - q(5, 48) * inv_n + q(6, 16) * inv_n2);
        case ClaimId::P1_BOUNDS:
            return scaled_chain(n, p, model::takeover_prob_toehold(n), half,
                                one - q(13, 24) * inv_n + q(3, 16) * inv_n2,
                                one - q(13, 24) * inv_n + q(4, 16) * inv_n2);
        case ClaimId::PI_BOUNDS:
            // sqrt(n/pi) (1 + 5/(8n) - ...) = s (n + 5/8 - ...)
            return scaled_chain(n, p, model::expected_profit(n), Rational(0),
                                N + q(5, 8) - q(1, 4) * inv_n,
                                N + q(5, 8) - q(1, 24) * inv_n + q(1, 3) * inv_n2);
        case ClaimId::DIFF_P_BOUNDS:
            return scaled_chain(n, p,
                                model::takeover_prob_toehold(n) -
                                    model::takeover_prob_no_toehold(n),
                                Rational(0), half - q(31, 48) * inv_n - q(3, 16) * inv_n2,
                                half - q(31, 48) * inv_n + q(3, 16) * inv_n2);
        case ClaimId::DIFF_X_BOUNDS:
            return scaled_chain(n, p, model::price_toehold(n) - model::price_no_toehold(n),
                                Rational(0), half - q(7, 48) * inv_n - q(3, 16) * inv_n2,
                                half - q(7, 48) * inv_n + q(1, 24) * inv_n2);
        case ClaimId::ELEM_INEQ_1: {
            // 1 - x < 1 - x + x^2/2 - x^3/6 < e^-x < 1 - x + x^2/2
            const Rational x2 = x * x;
            const Rational x3 = x2 * x;
            return {one - x, one - x + x2 / Rational(2) - x3 / Rational(6),
                    ival::exp_interval(-point(x, p), p), one - x + x2 / Rational(2)};
        }
        case ClaimId::ELEM_INEQ_2:
            return {one - x, one / (one + x), one - x + x * x};
        case ClaimId::ELEM_INEQ_3:
            return {one - N * x, rational_pow(one - x, n),
                    one - N * x + N * (N - one) * x * x / Rational(2)};
        case ClaimId::SOME_1:
            return {half * inv_n - q(1, 4) * inv_n2 + q(1, 12) * inv_n3, u,
                    half * inv_n - q(1, 4) * inv_n2 + q(1, 8) * inv_n3};
        case ClaimId::SOME_2:
            return {one - q(1, 4) * inv_n + q(1, 8) * inv_n2, rational_pow(one - u * u, n),
                    one - q(1, 4) * inv_n + q(9, 32) * inv_n2};
        case ClaimId::SOME_3:
            return {half * inv_n - q(7, 24) * inv_n2 + q(11, 48) * inv_n3,
                    beta::symmetric_integral_exact(n, u),
                    half * inv_n - q(7, 24) * inv_n2 + q(18, 48) * inv_n3};
        case ClaimId::SOME_4:
            return {half * inv_n - q(7, 24) * inv_n2 + q(5, 48) * inv_n3,
                    beta::symmetric_integral_exact(n - 1, u),
                    half * inv_n - q(7, 24) * inv_n2 + q(12, 48) * inv_n3};
        case ClaimId::STIRLING_REMAINDER:
            return {q(1, 12) * inv_n - q(1, 192) * inv_n3, stirling_remainder(n, p),
                    q(1, 12) * inv_n};
        case ClaimId::CENTRAL_BINOM_BOUNDS:
            return {one - q(1, 8) * inv_n + q(1, 64) * inv_n2, central_binomial_normalized(n, p),
                    one - q(1, 8) * inv_n + q(1, 48) * inv_n2};
    }
    throw DomainError("unknown claim");
}

Status classify(const Rational& lo, const Rational& hi) {
    if (lo.sign() > 0) {
        return Status::Holds;
    }
    if (hi.sign() <= 0) {
        return Status::Fails;
    }
    return Status::Undecided;
}

Verdict evaluate(ClaimId claim, std::int64_t n, const Rational& x, long p, Route route) {
    if (n < 1) {
        throw DomainError("audit: n must be >= 1");
    }
    if (p < 16) {
        throw DomainError("audit: precision_bits must be >= 16");
    }
    const std::vector<Term> terms = chain_for(claim, n, x, p);
    Verdict v;
    v.claim = claim;
    v.n = n;
    if (is_elem_claim(claim)) {
        v.x = x;
    }
    v.precision_bits = p;
    v.exact_route = route == Route::Auto && is_exact_claim(claim);

    if (v.exact_route) {
        std::optional<Rational> margin;
        for (std::size_t i = 0; i + 1 < terms.size(); ++i) {
            const Rational gap = std::get<Rational>(terms[i + 1]) - std::get<Rational>(terms[i]);
            margin = margin ? std::min(*margin, gap) : gap;
        }
        v.margin_lo = *margin;
        v.margin_hi = *margin;
    } else {
        std::optional<Interval> margin;
        for (std::size_t i = 0; i + 1 < terms.size(); ++i) {
            const Interval gap = as_interval(terms[i + 1], p) - as_interval(terms[i], p);
            margin = margin ? min(*margin, gap) : gap;
        }
        v.margin_lo = margin->lo_exact();
        v.margin_hi = margin->hi_exact();
    }
    v.status = classify(v.margin_lo, v.margin_hi);
    return v;
}

unsigned bit_length(std::uint64_t v) {
    unsigned bits = 0;
    while (v != 0) {
        ++bits;
        v >>= 1;
    }
    return bits;
}

}  // namespace

const std::array<ClaimId, kClaimCount>& all_claims() { return kClaims; }

std::string_view claim_name(ClaimId c) { return kNames.at(static_cast<std::size_t>(c)); }

ClaimId parse_claim(std::string_view name) {
    for (std::size_t i = 0; i < kClaimCount; ++i) {
        if (kNames[i] == name) {
            return kClaims[i];
        }
    }
    throw DomainError("unknown claim '" + std::string(name) + "'");
}

bool is_elem_claim(ClaimId c) {
    return c == ClaimId::ELEM_INEQ_1 || c == ClaimId::ELEM_INEQ_2 || c == ClaimId::ELEM_INEQ_3;
}

bool is_exact_claim(ClaimId c) {
    switch (c) {
        case ClaimId::ELEM_INEQ_2:
        case ClaimId::ELEM_INEQ_3:
        case ClaimId::SOME_1:
        case ClaimId::SOME_2:
        case ClaimId::SOME_3:
        case ClaimId::SOME_4:
            return true;
        default:
            return false;
    }
}

Rational elem_grid_x(std::int64_t n) {
    if (n < 1) {
        throw DomainError("elem_grid_x: n must be >= 1");
    }
    static const std::array<Rational, 6> grid = {q(1, 1000000), q(1, 100), q(1, 10),
                                                 q(1, 3),       q(1),      q(3)};
    return grid[static_cast<std::size_t>((n - 1) % 6)];
}

std::string_view status_name(Status s) {
    switch (s) {
        case Status::Holds:
            return "HOLDS";
        case Status::Fails:
            return "FAILS";
        case Status::Undecided:
            return "UNDECIDED";
    }
    return "UNDECIDED";
}

Verdict audit_claim(ClaimId claim, std::int64_t n, long precision_bits, Route route) {
    const Rational x = is_elem_claim(claim) ? elem_grid_x(n) : Rational(0);
    return evaluate(claim, n, x, precision_bits, route);
}

Verdict audit_claim_at(ClaimId claim, std::int64_t n, const Rational& x, long precision_bits,
                       Route route) {
    if (!is_elem_claim(claim)) {
        throw DomainError("audit_claim_at: " + std::string(claim_name(claim)) +
                          " takes no sample point");
    }
    if (x.sign() <= 0) {
        throw DomainError("audit_claim_at: x must be positive");
    }
    return evaluate(claim, n, x, precision_bits, route);
}

std::vector<Verdict> audit_range(const std::vector<ClaimId>& claims, std::int64_t n_lo,
                                 std::int64_t n_hi, long precision_bits, unsigned workers) {
    if (n_lo < 1 || n_lo > n_hi) {
        throw DomainError("audit_range: need 1 <= n_lo <= n_hi");
    }
    const auto per_claim = static_cast<std::size_t>(n_hi - n_lo + 1);
    const std::size_t total = claims.size() * per_claim;
    std::vector<std::optional<Verdict>> slots(total);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto work = [&] {
        for (std::size_t i = next++; i < total; i = next++) {
            try {
                const ClaimId c = claims[i / per_claim];
                const auto n = n_lo + static_cast<std::int64_t>(i % per_claim);
                slots[i] = audit_claim(c, n, precision_bits);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };
    const unsigned count = std::max(1u, workers);
    if (count == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(count);
        for (unsigned t = 0; t < count; ++t) {
            pool.emplace_back(work);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    std::vector<Verdict> out;
    out.reserve(total);
    for (auto& s : slots) {
        out.push_back(std::move(*s));
    }
    return out;
}

std::string verdict_to_json_line(const Verdict& v) {
    std::string out = "{\"claim\": \"";
    out += claim_name(v.claim);
    out += "\", \"n\": " + std::to_string(v.n);
    if (v.x) {
        out += ", \"x\": \"" + v.x->to_string() + "\"";
    }
    out += ", \"status\": \"";
    out += status_name(v.status);
    out += "\", \"precision_bits\": " + std::to_string(v.precision_bits);
    out += ", \"margin_lo\": \"" + to_scientific_directed(v.margin_lo, false) + "\"";
    out += ", \"margin_hi\": \"" + to_scientific_directed(v.margin_hi, true) + "\"}";
    return out;
}

Interval stirling_remainder(std::int64_t n, long precision_bits) {
    if (n < 1) {
        throw DomainError("stirling_remainder: n must be >= 1");
    }
    if (precision_bits < 16) {
        throw DomainError("stirling_remainder: precision_bits must be >= 16");
    }
    const long guard = precision_bits + 2 * static_cast<long>(bit_length(static_cast<std::uint64_t>(n))) + 16;
    Interval log_factorial(guard);
    for (std::int64_t k = 2; k <= n; ++k) {
        log_factorial = log_factorial + ival::ln_interval(Rational(k), guard);
    }
    const Interval two_pi_n = point(Rational(2 * n), guard) * ival::pi_interval(guard);
    const Interval half_log = ival::ln_interval(two_pi_n, guard) * point(q(1, 2), guard);
    const Interval n_log_n = point(Rational(n), guard) * ival::ln_interval(Rational(n), guard);
    const Interval r = log_factorial - half_log - n_log_n + point(Rational(n), guard);
    return ival::round_to(r, precision_bits);
}

Interval central_binomial_normalized(std::int64_t n, long precision_bits) {
    if (n < 1) {
        throw DomainError("central_binomial_normalized: n must be >= 1");
    }
    const auto m = static_cast<std::uint64_t>(n);
    const Rational ratio = Rational(binomial(2 * m, m)) / rational_pow(Rational(4), n);
    const Interval pi_n = ival::pi_interval(precision_bits) * point(Rational(n), precision_bits);
    return point(ratio, precision_bits) * ival::sqrt_interval(pi_n, precision_bits);
}

}  // namespace toehold::audit
