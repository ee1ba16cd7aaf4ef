#pragma once

#include <string>

#include "toehold/exact_core.hpp"

#include <mpfr.h>

namespace toehold::ival {

/// Owning handle for one mpfr_t.
class Mpfr {
public:
    explicit Mpfr(mpfr_prec_t prec);
    Mpfr(const Mpfr& other);
    Mpfr(Mpfr&& other) noexcept;
    Mpfr& operator=(const Mpfr& other);
    Mpfr& operator=(Mpfr&& other) noexcept;
    ~Mpfr();

    mpfr_ptr get() { return value_; }
    mpfr_srcptr get() const { return value_; }
    mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

private:
    void release() noexcept;
    mpfr_t value_;
    bool live_ = false;
};

/// Closed interval [lo, hi] of binary floating-point numbers at a fixed
/// precision. Every operation rounds lo toward -inf and hi toward +inf, so
/// the real value of the enclosed expression always lies inside.
///
/// Binary operations work at the larger of the two operand precisions.
class Interval {
public:
    /// The point interval [0, 0]. Throws DomainError when prec < 16.
    explicit Interval(long precision_bits);

    /// Takes ownership of already directed-rounded endpoints. Both must
    /// carry `precision_bits` bits; throws InternalConsistencyError when
    /// lo > hi or either end is NaN.
    Interval(Mpfr lo, Mpfr hi, long precision_bits);

    long precision_bits() const { return precision_; }
    const Mpfr& lo() const { return lo_; }
    const Mpfr& hi() const { return hi_; }

    /// Endpoints as exact rationals (every finite binary float is one).
    Rational lo_exact() const;
    Rational hi_exact() const;
    Rational width() const;
    bool contains(const Rational& r) const;
    /// True when this interval lies inside `outer`.
    bool subset_of(const Interval& outer) const;
    std::string to_string() const;

    Interval operator-() const;
    friend Interval operator+(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a, const Interval& b);
    friend Interval operator*(const Interval& a, const Interval& b);
    /// Throws DomainError when `b` contains zero.
    friend Interval operator/(const Interval& a, const Interval& b);

    /// Elementwise minimum: encloses min(u, v) for u in a, v in b.
    friend Interval min(const Interval& a, const Interval& b);

private:
    long precision_;
    Mpfr lo_;
    Mpfr hi_;
};

/// Tightest enclosure of `r`; a point interval when r is representable.
Interval interval_from_rational(const Rational& r, long precision_bits);

/// Outward rounding of `x` to `precision_bits`.
Interval round_to(const Interval& x, long precision_bits);

/// Enclosures of pi and e. The first call validates the generator against
/// embedded 64-digit reference constants and throws
/// InternalConsistencyError on disagreement.
Interval pi_interval(long precision_bits);
Interval e_interval(long precision_bits);

/// ln of a positive rational; DomainError when x <= 0.
Interval ln_interval(const Rational& x, long precision_bits);
/// ln of an interval with lo > 0; DomainError otherwise.
Interval ln_interval(const Interval& x, long precision_bits);
Interval exp_interval(const Interval& x, long precision_bits);
/// DomainError when x.lo < 0.
Interval sqrt_interval(const Interval& x, long precision_bits);

}  // namespace toehold::ival
