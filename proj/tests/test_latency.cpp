#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nfvsim/errors.hpp"
#include "nfvsim/latency.hpp"
#include "oracles.hpp"

using namespace nfvsim;

TEST_CASE("cdf boundary behaviour") {
    const LatencyParams params{50.0, 10.0, 1.0, 126};
    CHECK(cdf(params, params.runtime_shift()) == 0.0);
    CHECK(cdf(params, -5.0) == 0.0);
    CHECK(cdf(params, 1e9) == doctest::Approx(1.0));
    CHECK(survival(params, params.runtime_shift()) == 1.0);
}

TEST_CASE("cdf is a proper distribution on a dense grid") {
    const LatencyParams params{1.0 / 30.0, 10.0, 0.1, 252};
    double prev = 0.0;
    for (int i = 0; i <= 2000; ++i) {
        const double t = i * 0.5;
        const double f = cdf(params, t);
        CHECK(f >= prev - 1e-15);
        CHECK(f >= 0.0);
        CHECK(f <= 1.0);
        // continuity: steps move the value by at most peak density * step
        // (peak of this hypoexponential is ~0.0134)
        if (i > 0) CHECK(std::abs(f - prev) < 8e-3);
        prev = f;
    }
}

TEST_CASE("closed form matches an independent sampling oracle") {
    // The oracle samples T1 + T2 with std::exponential_distribution, which
    // shares nothing with the library's inverse-transform path.
    const LatencyParams params{50.0, 10.0, 1.0, 126};
    std::mt19937_64 rng(123456);
    std::exponential_distribution<double> d1(params.mu1);
    std::exponential_distribution<double> d2(params.lambda2());
    const int samples = 1'000'000;
    const double t_probe = params.runtime_shift() + 20.0;
    int below = 0;
    for (int i = 0; i < samples; ++i) {
        const double t = d1(rng) + params.runtime_shift() + d2(rng);
        if (t <= t_probe) ++below;
    }
    const double empirical = double(below) / samples;
    const double predicted = cdf(params, t_probe);
    const double se = std::sqrt(predicted * (1 - predicted) / samples);
    CHECK(std::abs(empirical - predicted) < 3 * se + 1e-9);
}

TEST_CASE("equal-rate branch agrees with the general branch near the boundary") {
    // mu1 == lambda2 exactly uses the Erlang-like limit; just outside the
    // switching window the general formula must agree closely.
    const int n = 100;
    const double mu1 = 0.25;
    const LatencyParams equal{mu1, mu1 * n, 0.0, n};           // lambda2 == mu1
    const LatencyParams near{mu1 + 1e-8, mu1 * n, 0.0, n};     // general branch
    for (double t : {1.0, 4.0, 10.0, 30.0}) {
        CHECK(cdf(equal, t) == doctest::Approx(cdf(near, t)).epsilon(1e-6));
    }
}

TEST_CASE("set completion probability") {
    const LatencyParams params{50.0, 10.0, 1.0, 126};
    SUBCASE("l = 0 before the shift") {
        CHECK(set_completion_prob(params, 0, 8, params.runtime_shift() * 0.5) == 1.0);
    }
    SUBCASE("l = N at large t") {
        CHECK(set_completion_prob(params, 8, 8, 1e9) == doctest::Approx(1.0));
    }
    SUBCASE("direct formula, no binomial coefficient") {
        // find t with F(t) = 0.5 by bisection, then Pr(1 of 2) = 0.25
        double lo = params.runtime_shift(), hi = 1e5;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            (cdf(params, mid) < 0.5 ? lo : hi) = mid;
        }
        CHECK(set_completion_prob(params, 1, 2, lo) == doctest::Approx(0.25).epsilon(1e-9));
    }
    SUBCASE("l out of range") {
        CHECK_THROWS_AS(set_completion_prob(params, 9, 8, 1.0), ConfigError);
        CHECK_THROWS_AS(set_completion_prob(params, -1, 8, 1.0), ConfigError);
    }
}

TEST_CASE("sampling determinism and support") {
    const LatencyParams params{2.0, 5.0, 0.3, 20};
    const auto a = sample_times(params, 1000, 42);
    const auto b = sample_times(params, 1000, 42);
    CHECK(a == b);
    const auto c = sample_times(params, 1000, 43);
    CHECK(a != c);
    for (double t : a) CHECK(t >= params.runtime_shift());
}

TEST_CASE("sample mean matches the model moments within 1%") {
    const LatencyParams params{50.0, 10.0, 1.0, 126};
    const auto samples = sample_times(params, 100'000, 7);
    double mean = 0;
    for (double t : samples) mean += t;
    mean /= double(samples.size());
    const double expected = 1.0 / params.mu1 + params.runtime_shift() + params.n / params.mu2;
    CHECK(std::abs(mean - expected) / expected < 0.01);
}

TEST_CASE("empirical cdf of sample_times passes a KS check at 1e5 samples") {
    const LatencyParams params{1.0 / 30.0, 10.0, 0.1, 252};
    const auto samples = sample_times(params, 100'000, 2024);
    const double d = oracles::ks_statistic(
        samples, [&](double t) { return cdf(params, t); });
    // 1% asymptotic critical value
    CHECK(d < 1.6276 / std::sqrt(double(samples.size())));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS((LatencyParams{0.0, 1.0, 0.0, 1}.validate()), ConfigError);
    CHECK_THROWS_AS((LatencyParams{1.0, -1.0, 0.0, 1}.validate()), ConfigError);
    CHECK_THROWS_AS((LatencyParams{1.0, 1.0, -0.1, 1}.validate()), ConfigError);
    CHECK_THROWS_AS((LatencyParams{1.0, 1.0, 0.0, 0}.validate()), ConfigError);
}
