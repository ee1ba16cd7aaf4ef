#include "toehold/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "toehold/error.hpp"

namespace toehold::sim {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53;
constexpr std::uint32_t kMul1 = 0xCD9E8D57;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85;
constexpr std::uint64_t kChunk = 65536;

void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

Rational resolve_sigma(const SimConfig& c) {
    if (c.n < 1) {
        throw DomainError("simulation: n must be >= 1");
    }
    if (c.trials == 0) {
        throw DomainError("simulation: trials must be >= 1");
    }
    Rational s = c.sigma ? *c.sigma : model::equilibrium_sigma(c.n);
    if (s <= Rational(0) || s >= Rational(1)) {
        throw DomainError("simulation: sigma must lie strictly inside (0,1)");
    }
    return s;
}

// Sum with Neumaier compensation.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::fabs(sum_) >= std::fabs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0;
    double comp_ = 0;
};

struct Game {
    std::uint64_t shares;     // shareholders who may tender
    std::uint64_t threshold;  // takeover iff k >= threshold
    std::vector<double> profit_by_k;
};

Game make_game(std::int64_t n, const Rational& sigma, model::StrategyId strategy) {
    const auto m = static_cast<std::uint64_t>(n);
    Game g;
    if (strategy == model::StrategyId::NoToehold) {
        g.shares = 2 * m + 1;
        g.threshold = m + 1;
        const Rational price = tail_binomial_sum(2 * m, m + 1, sigma);
        for (std::uint64_t k = 0; k <= g.shares; ++k) {
            const Rational v(k >= g.threshold ? 1 : 0);
            g.profit_by_k.push_back(((v - price) * Rational(k)).to_double());
        }
    } else {
        g.shares = 2 * m;
        g.threshold = m;
        const Rational toehold_price = model::price_no_toehold(n);
        const Rational price = tail_binomial_sum(2 * m - 1, m, sigma);
        for (std::uint64_t k = 0; k <= g.shares; ++k) {
            const Rational v(k >= g.threshold ? 1 : 0);
            const Rational profit = -toehold_price + v * Rational(k + 1) - price * Rational(k);
            g.profit_by_k.push_back(profit.to_double());
        }
    }
    return g;
}

// Both 64-bit uniforms of one Philox block; shareholders 2b and 2b+1 share block b.
std::array<std::uint64_t, 2> block_draws(std::uint64_t seed, std::uint64_t trial,
                                         std::uint64_t block) {
    const auto out = philox4x32_10(
        {static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32),
         static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)},
        {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)});
    return {(static_cast<std::uint64_t>(out[1]) << 32) | out[0],
            (static_cast<std::uint64_t>(out[3]) << 32) | out[2]};
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, ctr[0], hi0, lo0);
        mulhilo(kMul1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

std::uint64_t uniform_draw(std::uint64_t seed, std::uint64_t trial, std::uint64_t shareholder) {
    return block_draws(seed, trial, shareholder / 2)[shareholder % 2];
}

std::uint64_t bernoulli_threshold(const Rational& sigma) {
    if (sigma < Rational(0) || sigma > Rational(1)) {
        throw DomainError("bernoulli_threshold: sigma outside [0,1]");
    }
    BigInt scaled;
    mpz_mul_2exp(scaled.get_mpz_t(), sigma.numerator().get_mpz_t(), 64);
    // round half up of scaled / den
    BigInt twice = 2 * scaled + sigma.denominator();
    BigInt rounded;
    mpz_fdiv_q(rounded.get_mpz_t(), twice.get_mpz_t(),
               BigInt(2 * sigma.denominator()).get_mpz_t());
    BigInt cap;
    mpz_ui_pow_ui(cap.get_mpz_t(), 2, 64);
    cap -= 1;
    if (rounded > cap) {
        rounded = cap;
    }
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, rounded.get_mpz_t());
    return out;
}

SimSummary run_trials(const SimConfig& config, unsigned workers) {
    const Rational sigma = resolve_sigma(config);
    const Game game = make_game(config.n, sigma, config.strategy);
    const std::uint64_t threshold = bernoulli_threshold(sigma);

    const std::uint64_t chunks = (config.trials + kChunk - 1) / kChunk;
    std::vector<std::vector<std::uint64_t>> histograms(
        chunks, std::vector<std::uint64_t>(game.shares + 1, 0));
    std::atomic<std::uint64_t> next{0};
    auto work = [&] {
        for (std::uint64_t c = next++; c < chunks; c = next++) {
            auto& h = histograms[c];
            const std::uint64_t end = std::min(config.trials, (c + 1) * kChunk);
            for (std::uint64_t t = c * kChunk; t < end; ++t) {
                std::uint64_t k = 0;
                for (std::uint64_t s = 0; s < game.shares; s += 2) {
                    const auto u = block_draws(config.seed, t, s / 2);
                    k += u[0] < threshold ? 1 : 0;
                    if (s + 1 < game.shares) {
                        k += u[1] < threshold ? 1 : 0;
                    }
                }
                ++h[k];
            }
        }
    };
    const unsigned count = static_cast<unsigned>(
        std::clamp<std::uint64_t>(workers == 0 ? 1 : workers, 1, chunks));
    if (count == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < count; ++i) {
            pool.emplace_back(work);
        }
        for (auto& th : pool) {
            th.join();
        }
    }

    std::vector<std::uint64_t> hist(game.shares + 1, 0);
    for (const auto& h : histograms) {
        for (std::size_t k = 0; k < h.size(); ++k) {
            hist[k] += h[k];
        }
    }

    SimSummary s;
    s.trials = config.trials;
    s.seed = config.seed;
    s.sigma = sigma;
    for (std::uint64_t k = game.threshold; k <= game.shares; ++k) {
        s.takeover_count += hist[k];
    }
    const auto T = static_cast<double>(config.trials);
    s.takeover_frequency = static_cast<double>(s.takeover_count) / T;

    CompensatedSum total;
    for (std::size_t k = 0; k < hist.size(); ++k) {
        total.add(static_cast<double>(hist[k]) * game.profit_by_k[k]);
    }
    s.mean_profit = total.value() / T;

    if (config.trials > 1) {
        CompensatedSum squares;
        for (std::size_t k = 0; k < hist.size(); ++k) {
            const double d = game.profit_by_k[k] - s.mean_profit;
            squares.add(static_cast<double>(hist[k]) * d * d);
        }
        const double var_profit = std::max(0.0, squares.value()) / (T - 1);
        const auto c = static_cast<double>(s.takeover_count);
        const double var_takeover = c * (T - c) / (T * (T - 1));
        s.stderr_profit = std::sqrt(var_profit / T);
        s.stderr_takeover = std::sqrt(var_takeover / T);
    }
    return s;
}

ExactOutcome enumerate_exact(std::int64_t n, const Rational& sigma, model::StrategyId strategy) {
    if (n < 1 || n > 6) {
        throw DomainError("enumerate_exact: n must lie in 1..6");
    }
    if (sigma <= Rational(0) || sigma >= Rational(1)) {
        throw DomainError("enumerate_exact: sigma must lie strictly inside (0,1)");
    }
    const auto m = static_cast<unsigned>(n);
    const Rational one(1);

    // Pr(at least `need` of `holders` tender at probability p), by subsets.
    auto enumerate_tail = [&](unsigned holders, unsigned need, const Rational& p) {
        Rational total;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << holders); ++mask) {
            Rational w = one;
            unsigned k = 0;
            for (unsigned i = 0; i < holders; ++i) {
                const bool tenders = ((mask >> i) & 1U) != 0;
                w *= tenders ? p : one - p;
                k += tenders ? 1 : 0;
            }
            if (k >= need) {
                total += w;
            }
        }
        return total;
    };

    const bool toehold = strategy == model::StrategyId::Toehold;
    const unsigned shares = toehold ? 2 * m : 2 * m + 1;
    const unsigned need = toehold ? m : m + 1;
    const Rational price =
        toehold ? enumerate_tail(2 * m - 1, m, sigma) : enumerate_tail(2 * m, m + 1, sigma);
    const Rational toehold_price =
        toehold ? enumerate_tail(2 * m, m + 1, model::equilibrium_sigma(n)) : Rational(0);

    ExactOutcome out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << shares); ++mask) {
        Rational w = one;
        unsigned k = 0;
        for (unsigned i = 0; i < shares; ++i) {
            const bool tenders = ((mask >> i) & 1U) != 0;
            w *= tenders ? sigma : one - sigma;
            k += tenders ? 1 : 0;
        }
        const bool takeover = k >= need;
        const Rational v(takeover ? 1 : 0);
        const Rational profit = toehold
                                    ? -toehold_price + v * Rational(k + 1) - price * Rational(k)
                                    : (v - price) * Rational(k);
        if (takeover) {
            out.takeover_prob += w;
        }
        out.expected_profit += w * profit;
    }
    return out;
}

Comparison empirical_vs_exact(const SimConfig& config, unsigned workers) {
    Comparison c;
    c.summary = run_trials(config, workers);
    const Rational& sigma = c.summary.sigma;
    const auto m = static_cast<std::uint64_t>(config.n);
    const bool toehold = config.strategy == model::StrategyId::Toehold;
    c.exact_takeover = toehold ? tail_binomial_sum(2 * m, m, sigma)
                               : tail_binomial_sum(2 * m + 1, m + 1, sigma);
    c.exact_profit = model::profit_curve(config.n, sigma, config.strategy);

    auto z = [](double empirical, const Rational& exact, double se) -> std::optional<double> {
        const double diff = std::fabs(empirical - exact.to_double());
        if (se > 0) {
            return diff / se;
        }
        if (diff == 0) {
            return 0.0;
        }
        return std::nullopt;
    };
    c.z_takeover = z(c.summary.takeover_frequency, c.exact_takeover, c.summary.stderr_takeover);
    c.z_profit = z(c.summary.mean_profit, c.exact_profit, c.summary.stderr_profit);
    return c;
}

}  // namespace toehold::sim
