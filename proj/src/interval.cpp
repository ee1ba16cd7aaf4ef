#include "toehold/interval.hpp"

#include <algorithm>
#include <mutex>

#include "toehold/error.hpp"

namespace toehold::ival {

Mpfr::Mpfr(mpfr_prec_t prec) {
    mpfr_init2(value_, prec);
    mpfr_set_zero(value_, 1);
    live_ = true;
}

Mpfr::Mpfr(const Mpfr& other) {
    mpfr_init2(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);  // same precision: exact
    live_ = true;
}

Mpfr::Mpfr(Mpfr&& other) noexcept {
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
    live_ = true;
}

Mpfr& Mpfr::operator=(const Mpfr& other) {
    if (this != &other) {
        mpfr_set_prec(value_, other.precision());
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

Mpfr& Mpfr::operator=(Mpfr&& other) noexcept {
    if (this != &other) {
        mpfr_swap(value_, other.value_);
    }
    return *this;
}

Mpfr::~Mpfr() { release(); }

void Mpfr::release() noexcept {
    if (live_) {
        mpfr_clear(value_);
        live_ = false;
    }
}

namespace {

Rational to_rational(const Mpfr& v) {
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), v.get());
    return Rational::from_mpq(q);
}

long checked_precision(long p) {
    if (p < 16) {
        throw DomainError("precision_bits must be >= 16, got " + std::to_string(p));
    }
    return p;
}

Mpfr make(long p) { return Mpfr(static_cast<mpfr_prec_t>(p)); }

}  // namespace

Interval::Interval(long precision_bits)
    : precision_(checked_precision(precision_bits)),
      lo_(make(precision_bits)),
      hi_(make(precision_bits)) {}

Interval::Interval(Mpfr lo, Mpfr hi, long precision_bits)
    : precision_(checked_precision(precision_bits)), lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.precision() != precision_bits || hi_.precision() != precision_bits) {
        throw InternalConsistencyError("interval endpoint precision mismatch");
    }
    if (mpfr_nan_p(lo_.get()) || mpfr_nan_p(hi_.get()) ||
        mpfr_greater_p(lo_.get(), hi_.get())) {
        throw InternalConsistencyError("interval endpoints out of order");
    }
}

Rational Interval::lo_exact() const { return to_rational(lo_); }
Rational Interval::hi_exact() const { return to_rational(hi_); }
Rational Interval::width() const { return hi_exact() - lo_exact(); }

bool Interval::contains(const Rational& r) const {
    return mpfr_cmp_q(lo_.get(), r.raw().get_mpq_t()) <= 0 &&
           mpfr_cmp_q(hi_.get(), r.raw().get_mpq_t()) >= 0;
}

bool Interval::subset_of(const Interval& outer) const {
    return mpfr_greaterequal_p(lo_.get(), outer.lo_.get()) != 0 &&
           mpfr_lessequal_p(hi_.get(), outer.hi_.get()) != 0;
}

std::string Interval::to_string() const {
    char* lo = nullptr;
    char* hi = nullptr;
    mpfr_asprintf(&lo, "%.20RDe", lo_.get());
    mpfr_asprintf(&hi, "%.20RUe", hi_.get());
    std::string out = std::string("[") + lo + ", " + hi + "]";
    mpfr_free_str(lo);
    mpfr_free_str(hi);
    return out;
}

Interval Interval::operator-() const {
    Mpfr lo = make(precision_);
    Mpfr hi = make(precision_);
    mpfr_neg(lo.get(), hi_.get(), MPFR_RNDD);
    mpfr_neg(hi.get(), lo_.get(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi), precision_);
}

Interval operator+(const Interval& a, const Interval& b) {
    const long p = std::max(a.precision_, b.precision_);
    Mpfr lo = make(p);
    Mpfr hi = make(p);
    mpfr_add(lo.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_add(hi.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi), p);
}

Interval operator-(const Interval& a, const Interval& b) {
    const long p = std::max(a.precision_, b.precision_);
    Mpfr lo = make(p);
    Mpfr hi = make(p);
    mpfr_sub(lo.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
    mpfr_sub(hi.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi), p);
}

namespace {

using BinaryOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

// Hull of op over the four endpoint combinations, rounded outward.
Interval corner_hull(BinaryOp op, const Interval& a, const Interval& b) {
    const long p = std::max(a.precision_bits(), b.precision_bits());
    const Mpfr* as[2] = {&a.lo(), &a.hi()};
    const Mpfr* bs[2] = {&b.lo(), &b.hi()};
    Mpfr lo = make(p);
    Mpfr hi = make(p);
    Mpfr t = make(p);
    bool first = true;
    for (const Mpfr* x : as) {
        for (const Mpfr* y : bs) {
            op(t.get(), x->get(), y->get(), MPFR_RNDD);
            if (first || mpfr_less_p(t.get(), lo.get())) {
                mpfr_set(lo.get(), t.get(), MPFR_RNDD);
            }
            op(t.get(), x->get(), y->get(), MPFR_RNDU);
            if (first || mpfr_greater_p(t.get(), hi.get())) {
                mpfr_set(hi.get(), t.get(), MPFR_RNDU);
            }
            first = false;
        }
    }
    return Interval(std::move(lo), std::move(hi), p);
}

}  // namespace

Interval operator*(const Interval& a, const Interval& b) { return corner_hull(&mpfr_mul, a, b); }

Interval operator/(const Interval& a, const Interval& b) {
    if (mpfr_sgn(b.lo_.get()) <= 0 && mpfr_sgn(b.hi_.get()) >= 0) {
        throw DomainError("interval division by an interval containing zero");
    }
    return corner_hull(&mpfr_div, a, b);
}

Interval min(const Interval& a, const Interval& b) {
    const long p = std::max(a.precision_, b.precision_);
    Mpfr lo = make(p);
    Mpfr hi = make(p);
    mpfr_min(lo.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_min(hi.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi), p);
}

Interval interval_from_rational(const Rational& r, long precision_bits) {
    checked_precision(precision_bits);
    Mpfr lo = make(precision_bits);
    Mpfr hi = make(precision_bits);
    mpfr_set_q(lo.get(), r.raw().get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi.get(), r.raw().get_mpq_t(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi), precision_bits);
}

Interval round_to(const Interval& x, long precision_bits) {
    checked_precision(precision_bits);
    Mpfr lo = make(precision_bits);
    Mpfr hi = make(precision_bits);
    mpfr_set(lo.get(), x.lo().get(), MPFR_RNDD);
    mpfr_set(hi.get(), x.hi().get(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi), precision_bits);
}

namespace {

// 63 decimals each; the true constant is within 10^-63 of the reference.
constexpr const char* kPiDigits =
    "3141592653589793238462643383279502884197169399375105820974944592";
constexpr const char* kEDigits =
    "2718281828459045235360287471352662497757247093699959574966967628";
constexpr unsigned long kReferenceDecimals = 63;
constexpr long kValidationBits = 256;

Interval unchecked_pi(long p) {
    checked_precision(p);
    Mpfr lo = make(p);
    Mpfr hi = make(p);
    mpfr_const_pi(lo.get(), MPFR_RNDD);
    mpfr_const_pi(hi.get(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi), p);
}

Interval unchecked_e(long p) {
    checked_precision(p);
    Mpfr one = make(p);
    mpfr_set_ui(one.get(), 1, MPFR_RNDN);
    Mpfr lo = make(p);
    Mpfr hi = make(p);
    mpfr_exp(lo.get(), one.get(), MPFR_RNDD);
    mpfr_exp(hi.get(), one.get(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi), p);
}

void validate_against(const Interval& x, const char* digits, const char* name) {
    BigInt ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, kReferenceDecimals);
    const Rational ref(BigInt(digits), ten_pow);
    const Rational slack(BigInt(1), ten_pow);
    const bool overlaps = x.lo_exact() <= ref + slack && x.hi_exact() >= ref - slack;
    const bool tight = x.width() <= slack;
    if (!overlaps || !tight) {
        throw InternalConsistencyError(std::string(name) +
                                       " enclosure disagrees with the reference digits: " +
                                       x.to_string());
    }
}

void validate_constants() {
    static std::once_flag once;
    std::call_once(once, [] {
        validate_against(unchecked_pi(kValidationBits), kPiDigits, "pi");
        validate_against(unchecked_e(kValidationBits), kEDigits, "e");
    });
}

}  // namespace

Interval pi_interval(long precision_bits) {
    validate_constants();
    return unchecked_pi(precision_bits);
}

Interval e_interval(long precision_bits) {
    validate_constants();
    return unchecked_e(precision_bits);
}

Interval ln_interval(const Rational& x, long precision_bits) {
    if (x.sign() <= 0) {
        throw DomainError("ln of a nonpositive value " + x.to_string());
    }
    return ln_interval(interval_from_rational(x, precision_bits), precision_bits);
}

Interval ln_interval(const Interval& x, long precision_bits) {
    checked_precision(precision_bits);
    if (mpfr_sgn(x.lo().get()) <= 0) {
        throw DomainError("ln of an interval reaching zero or below: " + x.to_string());
    }
    Mpfr lo = make(precision_bits);
    Mpfr hi = make(precision_bits);
    mpfr_log(lo.get(), x.lo().get(), MPFR_RNDD);
    mpfr_log(hi.get(), x.hi().get(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi), precision_bits);
}

Interval exp_interval(const Interval& x, long precision_bits) {
    checked_precision(precision_bits);
    Mpfr lo = make(precision_bits);
    Mpfr hi = make(precision_bits);
    mpfr_exp(lo.get(), x.lo().get(), MPFR_RNDD);
    mpfr_exp(hi.get(), x.hi().get(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi), precision_bits);
}

Interval sqrt_interval(const Interval& x, long precision_bits) {
    checked_precision(precision_bits);
    if (mpfr_sgn(x.lo().get()) < 0) {
        throw DomainError("sqrt of an interval reaching below zero: " + x.to_string());
    }
    Mpfr lo = make(precision_bits);
    Mpfr hi = make(precision_bits);
    mpfr_sqrt(lo.get(), x.lo().get(), MPFR_RNDD);
    mpfr_sqrt(hi.get(), x.hi().get(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi), precision_bits);
}

}  // namespace toehold::ival
