#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>

#include <gmpxx.h>

namespace toehold {

using BigInt = mpz_class;

/// Arbitrary-precision signed rational, always in lowest terms with a
/// positive denominator. Two equal values therefore share the same
/// (numerator, denominator) pair.
///
/// Canonical text form is "p/q", or just "p" when q == 1.
class Rational {
public:
    Rational() = default;

    template <std::integral I>
    Rational(I value) {  // NOLINT(google-explicit-constructor)
        if constexpr (std::is_signed_v<I>) {
            value_ = static_cast<long>(value);
        } else {
            value_ = static_cast<unsigned long>(value);
        }
    }

    explicit Rational(const BigInt& value) : value_(value) {}

    /// Throws DomainError when den == 0.
    Rational(const BigInt& num, const BigInt& den);

    static Rational from_mpq(const mpq_class& q);

    /// Parses "p/q" or "p" (optional leading minus, decimal digits only).
    /// Throws DomainError on malformed text or a zero denominator.
    static Rational parse(std::string_view text);

    BigInt numerator() const { return value_.get_num(); }
    BigInt denominator() const { return value_.get_den(); }
    const mpq_class& raw() const { return value_; }

    int sign() const { return sgn(value_); }
    bool is_zero() const { return sign() == 0; }
    double to_double() const { return value_.get_d(); }
    std::string to_string() const;

    Rational operator-() const { return from_mpq(-value_); }
    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class value_;
};

/// C(n, k) by the multiplicative formula with exact division at every step.
/// Throws DomainError when k > n.
BigInt binomial(std::uint64_t n, std::uint64_t k);

/// Sum_{k=j0}^{m} C(m,k) sigma^k (1-sigma)^(m-k), exactly.
///
/// j0 == m+1 is the empty tail (returns 0). Throws DomainError when
/// j0 > m+1 or sigma is outside [0,1].
Rational tail_binomial_sum(std::uint64_t m, std::uint64_t j0, const Rational& sigma);

/// Exact integer power. Throws DomainError for 0 raised to a negative power.
Rational rational_pow(const Rational& base, std::int64_t exponent);

/// Fixed-point rendering with `digits` places after the point, rounded
/// half-to-even from the exact value. A result that rounds to zero is
/// printed without a minus sign.
std::string to_fixed_decimal(const Rational& value, int digits);

/// Scientific rendering with 17 significant digits, rounded toward -inf
/// (upward == false) or +inf (upward == true). Zero renders as "0".
/// Example: 1/3 -> "3.3333333333333333e-01" (down) / "...334e-01" (up).
std::string to_scientific_directed(const Rational& value, bool upward);

}  // namespace toehold
