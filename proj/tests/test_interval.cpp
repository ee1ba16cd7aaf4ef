#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "toehold/audit.hpp"
#include "toehold/error.hpp"
#include "toehold/interval.hpp"

using namespace toehold;
using namespace toehold::ival;

namespace {

Rational R(const char* s) { return Rational::parse(s); }

// Decimal string d0.d1d2... with an error of at most one unit in the last place.
struct DecimalBracket {
    Rational lo;
    Rational hi;
};

DecimalBracket bracket(const std::string& digits_with_point) {
    const auto dot = digits_with_point.find('.');
    std::string digits = digits_with_point.substr(0, dot) + digits_with_point.substr(dot + 1);
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits_with_point.size() - dot - 1);
    const Rational mid(BigInt(digits), scale);
    const Rational ulp(BigInt(1), scale);
    return {mid - ulp, mid + ulp};
}

bool overlaps(const Interval& x, const DecimalBracket& b) {
    return x.lo_exact() <= b.hi && x.hi_exact() >= b.lo;
}

Rational pow2(long e) { return rational_pow(Rational(2), e); }

const long kPrecisions[] = {64, 128, 256};

}  // namespace

TEST(Interval, FromRationalExamples) {
    const Interval half = interval_from_rational(R("1/2"), 64);
    EXPECT_EQ(half.lo_exact(), R("1/2"));
    EXPECT_EQ(half.hi_exact(), R("1/2"));
    for (long p : {16L, 64L, 113L, 256L}) {
        const Interval third = interval_from_rational(R("1/3"), p);
        EXPECT_LT(third.lo_exact(), R("1/3"));
        EXPECT_GT(third.hi_exact(), R("1/3"));
        EXPECT_LE(third.width(), pow2(1 - p));
    }
    EXPECT_TRUE(interval_from_rational(R("8/9"), 128).contains(R("8/9")));
    EXPECT_EQ(interval_from_rational(Rational(0), 64).width(), Rational(0));
}

TEST(Interval, PrecisionFloor) {
    EXPECT_THROW(Interval(15), DomainError);
    EXPECT_THROW(interval_from_rational(R("1/3"), 8), DomainError);
    EXPECT_THROW(pi_interval(10), DomainError);
}

TEST(Interval, PiAndEAgainstReferenceDigits) {
    const auto pi_ref = bracket("3.14159265358979323846264338327950288");
    const auto e_ref = bracket("2.71828182845904523536028747135266249");
    for (long p : {16L, 53L, 64L, 128L, 192L, 256L, 512L}) {
        const Interval pi = pi_interval(p);
        const Interval e = e_interval(p);
        EXPECT_TRUE(overlaps(pi, pi_ref)) << p;
        EXPECT_TRUE(overlaps(e, e_ref)) << p;
        EXPECT_LE(pi.width(), pow2(8 - p));
        EXPECT_LE(e.width(), pow2(8 - p));
    }
    for (long p : {32L, 64L, 128L, 256L}) {
        EXPECT_TRUE(pi_interval(2 * p).subset_of(pi_interval(p)));
        EXPECT_TRUE(e_interval(2 * p).subset_of(e_interval(p)));
        EXPECT_LE(pi_interval(2 * p).width(), pi_interval(p).width());
    }
}

TEST(Interval, ElementaryExamples) {
    const Interval l = ln_interval(Rational(1), 64);
    EXPECT_EQ(l.lo_exact(), Rational(0));
    EXPECT_EQ(l.hi_exact(), Rational(0));
    const Interval s = sqrt_interval(interval_from_rational(Rational(4), 64), 64);
    EXPECT_EQ(s.lo_exact(), Rational(2));
    EXPECT_EQ(s.hi_exact(), Rational(2));
    const Interval e = exp_interval(interval_from_rational(Rational(0), 64), 64);
    EXPECT_EQ(e.lo_exact(), Rational(1));
    EXPECT_EQ(e.hi_exact(), Rational(1));
}

TEST(Interval, DomainErrors) {
    EXPECT_THROW(ln_interval(Rational(0), 64), DomainError);
    EXPECT_THROW(ln_interval(R("-1/2"), 64), DomainError);
    EXPECT_THROW(ln_interval(interval_from_rational(Rational(0), 64), 64), DomainError);
    EXPECT_THROW(sqrt_interval(interval_from_rational(R("-1/3"), 64), 64), DomainError);
    const Interval straddle =
        interval_from_rational(R("-1/3"), 64) + interval_from_rational(R("1/2"), 64);
    EXPECT_THROW(interval_from_rational(Rational(1), 64) /
                     (interval_from_rational(R("-1/2"), 64) - interval_from_rational(R("-1/2"), 64)),
                 DomainError);
    EXPECT_NO_THROW(interval_from_rational(Rational(1), 64) / straddle);
    EXPECT_THROW(interval_from_rational(Rational(1), 64) /
                     (straddle - interval_from_rational(R("1/6"), 64)),
                 DomainError);
}

TEST(Interval, ArithmeticContainment) {
    std::mt19937_64 rng(101);
    for (long p : kPrecisions) {
        for (int i = 0; i < 1000; ++i) {
            const mpq_class a = oracle::random_rational(rng, 1L << 40);
            mpq_class b = oracle::random_rational(rng, 1L << 40);
            if (b == 0) {
                b = 1;
            }
            const Interval A = interval_from_rational(oracle::to_rational(a), p);
            const Interval B = interval_from_rational(oracle::to_rational(b), p);
            ASSERT_TRUE((A + B).contains(oracle::to_rational(a + b)));
            ASSERT_TRUE((A - B).contains(oracle::to_rational(a - b)));
            ASSERT_TRUE((A * B).contains(oracle::to_rational(a * b)));
            ASSERT_TRUE((A / B).contains(oracle::to_rational(a / b)));
            ASSERT_TRUE((-A).contains(oracle::to_rational(-a)));
            ASSERT_TRUE(min(A, B).contains(oracle::to_rational(a < b ? a : b)));
            ASSERT_LE(A.lo_exact(), A.hi_exact());
        }
    }
}

TEST(Interval, ElementaryContainment) {
    std::mt19937_64 rng(202);
    std::uniform_int_distribution<long> dist(1, 1L << 30);
    for (long p : kPrecisions) {
        for (int i = 0; i < 1000; ++i) {
            const mpq_class r = oracle::q(dist(rng), dist(rng));
            const Rational x = oracle::to_rational(r);
            const Interval X = interval_from_rational(x, p);
            // sqrt of an exact square is the exact root
            ASSERT_TRUE(sqrt_interval(X * X, p).contains(x));
            // exp and ln are inverse enclosures
            ASSERT_TRUE(exp_interval(ln_interval(x, p), p).contains(x));
            ASSERT_TRUE(ln_interval(exp_interval(X, p), p).contains(x));
            // sqrt(x)^2 encloses x
            const Interval s = sqrt_interval(X, p);
            ASSERT_TRUE((s * s).contains(x));
            // ln(x) + ln(1/x) encloses 0
            ASSERT_TRUE((ln_interval(x, p) + ln_interval(Rational(1) / x, p)).contains(Rational(0)));
        }
    }
}

TEST(Interval, MonotoneRefinementOfOperations) {
    std::mt19937_64 rng(303);
    std::uniform_int_distribution<long> dist(1, 1L << 30);
    for (long p : {32L, 64L, 128L}) {
        for (int i = 0; i < 300; ++i) {
            const Rational a = oracle::to_rational(oracle::q(dist(rng), dist(rng)));
            const Rational b = oracle::to_rational(oracle::q(dist(rng), dist(rng)));
            auto expr = [&](long q) {
                const Interval A = interval_from_rational(a, q);
                const Interval B = interval_from_rational(b, q);
                return exp_interval(-(A / B), q) + sqrt_interval(A * pi_interval(q), q) -
                       ln_interval(B, q) * e_interval(q);
            };
            const Interval coarse = expr(p);
            const Interval fine = expr(2 * p);
            ASSERT_TRUE(fine.subset_of(coarse)) << coarse.to_string() << " " << fine.to_string();
        }
    }
}

TEST(Interval, RoundToIsOutward) {
    const Interval x = interval_from_rational(R("1/3"), 256);
    const Interval y = round_to(x, 64);
    EXPECT_TRUE(x.subset_of(y));
    EXPECT_TRUE(y.contains(R("1/3")));
    EXPECT_EQ(y.precision_bits(), 64);
}

TEST(StirlingRemainder, FirstValue) {
    // 1 - ln(2 pi)/2
    const auto ref = bracket("0.08106146679532725821967026359438236");
    for (long p : kPrecisions) {
        const Interval r = audit::stirling_remainder(1, p);
        EXPECT_TRUE(overlaps(r, ref));
        EXPECT_GT(r.lo_exact(), R("5/64"));
        EXPECT_LT(r.hi_exact(), R("1/12"));
    }
}

TEST(StirlingRemainder, WidthContract) {
    for (long p : {64L, 128L}) {
        for (std::int64_t n : {1, 2, 10, 100, 1000, 10000}) {
            const Interval r = audit::stirling_remainder(n, p);
            ASSERT_LE(r.width(), pow2(16 - p)) << n << " " << p;
            // r_n lies in (1/(12n+1), 1/(12n)), a classical bound
            ASSERT_LT(r.hi_exact(), Rational(BigInt(1), BigInt(12 * n)));
            ASSERT_GT(r.lo_exact(), Rational(BigInt(1), BigInt(12 * n + 1)));
        }
    }
    EXPECT_THROW(audit::stirling_remainder(0, 64), DomainError);
}

TEST(CentralBinomial, Examples) {
    const auto n1 = bracket("0.886226925452758013649083741671");  // sqrt(pi)/2
    EXPECT_TRUE(overlaps(audit::central_binomial_normalized(1, 128), n1));
    const Interval c10 = audit::central_binomial_normalized(10, 192);
    EXPECT_GT(c10.lo_exact(), R("98758/100000"));
    EXPECT_LT(c10.hi_exact(), R("98759/100000"));
    EXPECT_LT(c10.hi_exact(), R("79/80") + R("1/6400"));  // below the claimed lower value
    for (std::int64_t n = 1; n <= 50; ++n) {
        EXPECT_TRUE(audit::central_binomial_normalized(n, 256)
                        .subset_of(audit::central_binomial_normalized(n, 128)));
    }
}
