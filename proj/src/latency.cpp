#include "nfvsim/latency.hpp"

#include <cmath>

#include "nfvsim/errors.hpp"

namespace nfvsim {

void LatencyParams::validate() const {
    if (!(mu1 > 0)) throw ConfigError("latency: mu1 must be > 0");
    if (!(mu2 > 0)) throw ConfigError("latency: mu2 must be > 0");
    if (!(a >= 0)) throw ConfigError("latency: a must be >= 0");
    if (n < 1) throw ConfigError("latency: n must be >= 1");
}

namespace {
constexpr double kEqualRateTol = 1e-9;
}

double survival(const LatencyParams& params, double t) {
    const double s = t - params.runtime_shift();
    if (!(s > 0)) return 1.0;
    const double mu1 = params.mu1;
    const double lam2 = params.lambda2();
    if (std::abs(lam2 - mu1) < kEqualRateTol * mu1) {
        // Erlang-like limit of the two-rate convolution.
        return (1.0 + mu1 * s) * std::exp(-mu1 * s);
    }
    return (lam2 * std::exp(-mu1 * s) - mu1 * std::exp(-lam2 * s)) / (lam2 - mu1);
}

double cdf(const LatencyParams& params, double t) { return 1.0 - survival(params, t); }

double set_completion_prob(const LatencyParams& params, int l, int N, double t) {
    if (l < 0 || l > N) throw ConfigError("set_completion_prob: l must be in [0, N]");
    const double q = survival(params, t);
    const double f = 1.0 - q;
    return std::pow(f, double(l)) * std::pow(q, double(N - l));
}

std::vector<double> sample_times(const LatencyParams& params, int count, Rng& rng) {
    const double shift = params.runtime_shift();
    const double lam2 = params.lambda2();
    std::vector<double> times(count);
    for (auto& t : times) {
        const double t1 = rng.exponential(params.mu1);
        const double t2 = shift + rng.exponential(lam2);
        t = t1 + t2;
    }
    return times;
}

std::vector<double> sample_times(const LatencyParams& params, int count, std::uint64_t seed) {
    Rng rng(seed);
    return sample_times(params, count, rng);
}

}  // namespace nfvsim
