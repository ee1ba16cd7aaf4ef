#include "toehold/formats.hpp"

#include <array>
#include <cmath>
#include <utility>
#include <vector>

#include "toehold/error.hpp"
#include "toehold/interval.hpp"

namespace toehold::formats {

namespace {

void check_digits(int digits) {
    if (digits < 1) {
        throw DomainError("digits must be >= 1");
    }
}

void append_field(std::string& out, const char* key, const Rational& value) {
    out += ", \"";
    out += key;
    out += "\": \"" + value.to_string() + "\"";
}

// Round-to-nearest scalar at a fixed working precision.
class Real {
public:
    explicit Real(mpfr_prec_t p) : v_(p) {}
    static Real of(const Rational& r, mpfr_prec_t p) {
        Real out(p);
        mpfr_set_q(out.v_.get(), r.raw().get_mpq_t(), MPFR_RNDN);
        return out;
    }
    mpfr_ptr get() { return v_.get(); }
    mpfr_srcptr get() const { return v_.get(); }
    Rational exact() const {
        mpq_class q;
        mpfr_get_q(q.get_mpq_t(), v_.get());
        return Rational::from_mpq(q);
    }

private:
    ival::Mpfr v_;
};

}  // namespace

std::string model_point_json(const model::ModelPoint& p) {
    std::string out = "{\"n\": " + std::to_string(p.n);
    append_field(out, "sigma", p.sigma);
    append_field(out, "x0", p.price_no_toehold);
    append_field(out, "p0", p.takeover_prob_no_toehold);
    append_field(out, "x1", p.price_toehold);
    append_field(out, "p1", p.takeover_prob_toehold);
    append_field(out, "profit", p.expected_profit);
    out += "}";
    return out;
}

std::string model_point_csv_header() {
    return "n,sigma,x0,p0,x1,p1,profit,p1_minus_p0,x1_minus_x0";
}

std::string model_point_csv_row(const model::ModelPoint& p, int digits) {
    check_digits(digits);
    const std::array<Rational, 8> cols = {
        p.sigma,
        p.price_no_toehold,
        p.takeover_prob_no_toehold,
        p.price_toehold,
        p.takeover_prob_toehold,
        p.expected_profit,
        p.takeover_prob_toehold - p.takeover_prob_no_toehold,
        p.price_toehold - p.price_no_toehold,
    };
    std::string out = std::to_string(p.n);
    for (const auto& c : cols) {
        out += "," + to_fixed_decimal(c, digits);
    }
    return out;
}

std::string sweep_csv_header() {
    std::string out = "n";
    for (const char* q : {"profit", "p0", "p1", "x0", "x1", "p1_minus_p0", "x1_minus_x0"}) {
        for (const char* col : {"_exact", "_approx", "_scaled_residual"}) {
            out += ",";
            out += q;
            out += col;
        }
    }
    return out;
}

std::string sweep_csv_row(std::int64_t n, int digits) {
    check_digits(digits);
    const model::ModelPoint p = model::model_point(n);
    const auto prec = static_cast<mpfr_prec_t>(std::ceil((2.0 * digits + 16) * 3.3219280948873623));

    Real pi(prec);
    mpfr_const_pi(pi.get(), MPFR_RNDN);
    Real sqrt_pi_n(prec);
    mpfr_mul_si(sqrt_pi_n.get(), pi.get(), static_cast<long>(n), MPFR_RNDN);
    mpfr_sqrt(sqrt_pi_n.get(), sqrt_pi_n.get(), MPFR_RNDN);
    Real s(prec);  // 1/sqrt(pi n)
    mpfr_ui_div(s.get(), 1, sqrt_pi_n.get(), MPFR_RNDN);

    // half + c * s
    auto around_half = [&](const Rational& half, const Rational& c) {
        Real out = Real::of(c, prec);
        mpfr_mul(out.get(), out.get(), s.get(), MPFR_RNDN);
        Real h = Real::of(half, prec);
        mpfr_add(out.get(), out.get(), h.get(), MPFR_RNDN);
        return out;
    };
    const Rational half(BigInt(1), BigInt(2));
    const Rational zero(0);

    Real profit_approx(prec);  // sqrt(n/pi) = n s
    mpfr_mul_si(profit_approx.get(), s.get(), static_cast<long>(n), MPFR_RNDN);

    std::vector<std::pair<Rational, Real>> rows;
    rows.emplace_back(p.expected_profit, std::move(profit_approx));
    rows.emplace_back(p.takeover_prob_no_toehold, around_half(half, half));
    rows.emplace_back(p.takeover_prob_toehold, around_half(half, Rational(1)));
    rows.emplace_back(p.price_no_toehold,
                      around_half(half, -Rational(BigInt(1), BigInt(6 * n))));
    rows.emplace_back(p.price_toehold, around_half(half, half));
    rows.emplace_back(p.takeover_prob_toehold - p.takeover_prob_no_toehold,
                      around_half(zero, half));
    rows.emplace_back(p.price_toehold - p.price_no_toehold, around_half(zero, half));

    std::string out = std::to_string(n);
    for (auto& [exact, approx] : rows) {
        Real residual = Real::of(exact, prec);
        mpfr_sub(residual.get(), residual.get(), approx.get(), MPFR_RNDN);
        mpfr_mul(residual.get(), residual.get(), sqrt_pi_n.get(), MPFR_RNDN);
        out += "," + to_fixed_decimal(exact, digits);
        out += "," + to_fixed_decimal(approx.exact(), digits);
        out += "," + to_fixed_decimal(residual.exact(), digits);
    }
    return out;
}

}  // namespace toehold::formats
