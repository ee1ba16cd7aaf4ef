#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "toehold/exact_core.hpp"
#include "toehold/interval.hpp"

namespace toehold::audit {

/// Every audited inequality, in catalog order. `--claims all` and golden
/// files follow this order.
enum class ClaimId {
    X0_BOUNDS,
    X1_BOUNDS,
    P0_BOUNDS,
    P1_BOUNDS,
    PI_BOUNDS,
    DIFF_P_BOUNDS,
    DIFF_X_BOUNDS,
    ELEM_INEQ_1,
    ELEM_INEQ_2,
    ELEM_INEQ_3,
    SOME_1,
    SOME_2,
    SOME_3,
    SOME_4,
    STIRLING_REMAINDER,
    CENTRAL_BINOM_BOUNDS,
};

inline constexpr std::size_t kClaimCount = 16;

const std::array<ClaimId, kClaimCount>& all_claims();
std::string_view claim_name(ClaimId c);
/// Throws DomainError for an unknown name.
ClaimId parse_claim(std::string_view name);

/// ELEM_INEQ_* pair n with a sample point x.
bool is_elem_claim(ClaimId c);
/// Claims whose terms are all rational; their verdicts are never UNDECIDED.
bool is_exact_claim(ClaimId c);

/// x = grid[(n-1) mod 6] over {1/10^6, 1/100, 1/10, 1/3, 1, 3}.
Rational elem_grid_x(std::int64_t n);

enum class Status { Holds, Fails, Undecided };
std::string_view status_name(Status s);

/// Auto picks the exact route for rational claims; ForceInterval evaluates
/// every claim through enclosures.
enum class Route { Auto, ForceInterval };

/// margin encloses min_i (t_{i+1} - t_i) over the claim's strict chain
/// t_0 < t_1 < ... . HOLDS iff margin_lo > 0, FAILS iff margin_hi <= 0.
struct Verdict {
    ClaimId claim{};
    std::int64_t n = 0;
    std::optional<Rational> x;
    Status status = Status::Undecided;
    long precision_bits = 0;
    Rational margin_lo;
    Rational margin_hi;
    bool exact_route = false;

    friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// Throws DomainError when n < 1 or precision_bits < 16. ELEM claims use
/// elem_grid_x(n).
Verdict audit_claim(ClaimId claim, std::int64_t n, long precision_bits, Route route = Route::Auto);

/// ELEM claims at an explicit x > 0 (DomainError otherwise, or for a
/// non-ELEM claim).
Verdict audit_claim_at(ClaimId claim, std::int64_t n, const Rational& x, long precision_bits,
                       Route route = Route::Auto);

/// One verdict per (claim, n), ordered by claim list position then n.
/// Output is identical for every worker count.
std::vector<Verdict> audit_range(const std::vector<ClaimId>& claims, std::int64_t n_lo,
                                 std::int64_t n_hi, long precision_bits, unsigned workers = 1);

/// {"claim": ..., "n": ..., ["x": ...,] "status": ..., "precision_bits": ...,
///  "margin_lo": ..., "margin_hi": ...}; margins as 17 significant digits
/// rounded outward.
std::string verdict_to_json_line(const Verdict& v);

/// r_n = ln(n!) - ln(2 pi n)/2 - n ln n + n, with ln(n!) summed as
/// sum_k ln k at guard precision.
ival::Interval stirling_remainder(std::int64_t n, long precision_bits);

/// C(2n,n) sqrt(pi n) / 4^n.
ival::Interval central_binomial_normalized(std::int64_t n, long precision_bits);

}  // namespace toehold::audit
