#pragma once

#include <cstdint>

#include "toehold/exact_core.hpp"

namespace toehold::beta {

/// B_x(a,b) = integral_0^x t^(a-1) (1-t)^(b-1) dt, by term-by-term integration:
/// sum_{j=0}^{b-1} C(b-1,j) (-1)^j x^(a+j) / (a+j).
/// Throws DomainError unless a, b >= 1 and 0 <= x <= 1.
Rational incomplete_beta_exact(std::int64_t a, std::int64_t b, const Rational& x);

/// B(a,b) = (a-1)! (b-1)! / (a+b-1)!.
Rational complete_beta(std::int64_t a, std::int64_t b);

/// LHS - RHS of
///   sum_{k=a}^{a+b-1} C(a+b-1,k) x^k (1-x)^(a+b-1-k) = a C(a+b-1,a) B_x(a,b).
Rational beta_tail_identity_gap(std::int64_t a, std::int64_t b, const Rational& x);

/// integral_0^x (1-t^2)^m dt = sum_{j=0}^{m} C(m,j) (-1)^j x^(2j+1) / (2j+1).
/// Throws DomainError unless m >= 0 and 0 <= x <= 1.
Rational symmetric_integral_exact(std::int64_t m, const Rational& x);

// Integral-form counterparts of the model closed forms. Each throws
// DomainError when n < 1 and must agree exactly with its model sum.
Rational analytic_price_no_toehold(std::int64_t n);
Rational analytic_takeover_prob_no_toehold(std::int64_t n);
Rational analytic_profit(std::int64_t n);
Rational analytic_takeover_prob_toehold(std::int64_t n);
Rational analytic_price_toehold(std::int64_t n);

}  // namespace toehold::beta
