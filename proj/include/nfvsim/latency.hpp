// Per-server decoding time model T = T1 + T2.
//
// T1 ~ Exp(mu1) models processor unavailability and is workload independent.
// T2 models the execution runtime of an n-symbol block: a deterministic
// shift n*a plus an Exp(mu2/n) tail, so E[T2] = n*(a + 1/mu2) and both the
// shift and the mean scale with the block length.
#pragma once

#include <cstdint>
#include <vector>

#include "nfvsim/rng.hpp"

namespace nfvsim {

struct LatencyParams {
    double mu1 = 1.0;  // unavailability rate (1/time)
    double mu2 = 1.0;  // per-symbol service rate (symbols/time)
    double a = 0.0;    // per-symbol runtime shift (time/symbol)
    int n = 1;         // block length (symbols)

    double runtime_shift() const { return a * n; }
    double lambda2() const { return mu2 / n; }
    void validate() const;  // throws ConfigError
};

// F(t) = Pr(T <= t). Hypoexponential closed form; equal-rate branch when
// lambda2 is within 1e-9 relative of mu1 to avoid cancellation.
double cdf(const LatencyParams& params, double t);

// 1 - F(t) computed directly so that deep tails keep full precision.
double survival(const LatencyParams& params, double t);

// Probability that one given set of l out of N servers has finished by t:
// F(t)^l (1 - F(t))^(N-l). No binomial coefficient by definition.
double set_completion_prob(const LatencyParams& params, int l, int N, double t);

std::vector<double> sample_times(const LatencyParams& params, int count, Rng& rng);
std::vector<double> sample_times(const LatencyParams& params, int count, std::uint64_t seed);

}  // namespace nfvsim
