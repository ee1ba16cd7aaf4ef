#include "toehold/exact_core.hpp"

#include <algorithm>
#include <cctype>

#include "toehold/error.hpp"

namespace toehold {

Rational::Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) {
        throw DomainError("rational with zero denominator");
    }
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rational Rational::from_mpq(const mpq_class& q) {
    Rational r;
    r.value_ = q;
    r.value_.canonicalize();
    return r;
}

Rational Rational::parse(std::string_view text) {
    auto is_int = [](std::string_view s, bool allow_sign) {
        if (allow_sign && !s.empty() && s.front() == '-') {
            s.remove_prefix(1);
        }
        return !s.empty() &&
               std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
    };
    const auto slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? "1" : text.substr(slash + 1);
    if (!is_int(num, true) || !is_int(den, false)) {
        throw DomainError("malformed rational '" + std::string(text) + "'");
    }
    return Rational(BigInt(std::string(num)), BigInt(std::string(den)));
}

std::string Rational::to_string() const {
    if (value_.get_den() == 1) {
        return value_.get_num().get_str();
    }
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator+=(const Rational& rhs) {
    value_ += rhs.value_;
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
    value_ -= rhs.value_;
    return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
    value_ *= rhs.value_;
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) {
        throw DomainError("division by zero");
    }
    value_ /= rhs.value_;
    return *this;
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) {
        throw DomainError("binomial: k > n");
    }
    k = std::min(k, n - k);
    BigInt result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // result == C(n-k+i-1, i-1) here; the product is divisible by i.
        result *= static_cast<unsigned long>(n - k + i);
        mpz_divexact_ui(result.get_mpz_t(), result.get_mpz_t(), static_cast<unsigned long>(i));
    }
    return result;
}

Rational tail_binomial_sum(std::uint64_t m, std::uint64_t j0, const Rational& sigma) {
    if (sigma < Rational(0) || sigma > Rational(1)) {
        throw DomainError("tail_binomial_sum: sigma outside [0,1]");
    }
    if (j0 > m + 1) {
        throw DomainError("tail_binomial_sum: j0 > m+1");
    }
    if (j0 == m + 1) {
        return Rational(0);
    }
    // sigma = p/q, 1 - sigma = r/q. Accumulate integer weights C(m,k) p^k r^(m-k).
    const BigInt p = sigma.numerator();
    const BigInt q = sigma.denominator();
    const BigInt r = q - p;
    if (r == 0) {
        return Rational(1);  // only k = m carries mass, and j0 <= m
    }

    BigInt pk;
    BigInt rk;
    mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(j0));
    mpz_pow_ui(rk.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>(m - j0));
    BigInt weight = binomial(m, j0) * pk * rk;
    BigInt total = weight;
    for (std::uint64_t k = j0; k < m; ++k) {
        // w_{k+1} = w_k * (m-k) p / ((k+1) r), exact.
        weight *= static_cast<unsigned long>(m - k);
        weight *= p;
        mpz_divexact_ui(weight.get_mpz_t(), weight.get_mpz_t(), static_cast<unsigned long>(k + 1));
        mpz_divexact(weight.get_mpz_t(), weight.get_mpz_t(), r.get_mpz_t());
        total += weight;
    }
    BigInt qm;
    mpz_pow_ui(qm.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(m));
    return Rational(total, qm);
}

Rational rational_pow(const Rational& base, std::int64_t exponent) {
    if (exponent < 0 && base.is_zero()) {
        throw DomainError("rational_pow: zero to a negative power");
    }
    const auto e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
    BigInt num;
    BigInt den;
    mpz_pow_ui(num.get_mpz_t(), base.numerator().get_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.denominator().get_mpz_t(), e);
    return exponent < 0 ? Rational(den, num) : Rational(num, den);
}

namespace {

BigInt pow10(long e) {
    BigInt out;
    mpz_ui_pow_ui(out.get_mpz_t(), 10, static_cast<unsigned long>(e));
    return out;
}

Rational scale10(const Rational& v, long e) {
    return e >= 0 ? v * Rational(pow10(e)) : v / Rational(pow10(-e));
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt out;
    mpz_fdiv_q(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

BigInt ceil_div(const BigInt& a, const BigInt& b) {
    BigInt out;
    mpz_cdiv_q(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

}  // namespace

std::string to_fixed_decimal(const Rational& value, int digits) {
    if (digits < 0) {
        throw DomainError("to_fixed_decimal: negative digit count");
    }
    const Rational scaled = scale10(value, digits);
    const BigInt num = scaled.numerator();
    const BigInt den = scaled.denominator();
    BigInt q = floor_div(num, den);
    const Rational frac = scaled - Rational(q);
    const auto half = Rational(1, 2);
    if (frac > Rational(half) || (frac == Rational(half) && mpz_odd_p(q.get_mpz_t()))) {
        q += 1;
    }
    const bool negative = q < 0;
    std::string body = BigInt(abs(q)).get_str();
    if (digits > 0) {
        if (body.size() <= static_cast<std::size_t>(digits)) {
            body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
        }
        body.insert(body.size() - static_cast<std::size_t>(digits), ".");
    }
    return negative ? "-" + body : body;
}

std::string to_scientific_directed(const Rational& value, bool upward) {
    if (value.is_zero()) {
        return "0";
    }
    const Rational mag = value.sign() < 0 ? -value : value;
    // Decimal exponent e with 10^e <= |value| < 10^(e+1). The size estimate
    // is within one of the truth; the loops correct it exactly.
    long e = static_cast<long>(mpz_sizeinbase(mag.numerator().get_mpz_t(), 10)) -
             static_cast<long>(mpz_sizeinbase(mag.denominator().get_mpz_t(), 10));
    while (mag >= scale10(Rational(1), e + 1)) {
        ++e;
    }
    while (mag < scale10(Rational(1), e)) {
        --e;
    }
    const Rational scaled = scale10(value, 16 - e);
    BigInt r = upward ? ceil_div(scaled.numerator(), scaled.denominator())
                      : floor_div(scaled.numerator(), scaled.denominator());
    const BigInt limit = pow10(17);
    if (abs(r) == limit) {
        r /= 10;
        ++e;
    }
    const std::string digits = BigInt(abs(r)).get_str();
    std::string out = r < 0 ? "-" : "";
    out += digits.substr(0, 1) + "." + digits.substr(1) + "e";
    out += e < 0 ? "-" : "+";
    const std::string exp = std::to_string(e < 0 ? -e : e);
    out += (exp.size() < 2 ? "0" : "") + exp;
    return out;
}

}  // namespace toehold
