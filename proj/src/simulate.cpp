#include "nfvsim/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "nfvsim/errors.hpp"
#include "nfvsim/parallel.hpp"

namespace nfvsim {

const char* to_string(McMode mode) {
    return mode == McMode::independent_bernoulli ? "independent-bernoulli"
                                                 : "correlated-gaussian-surrogate";
}

McMode mc_mode_from_string(const std::string& name) {
    if (name == "independent-bernoulli") return McMode::independent_bernoulli;
    if (name == "correlated-gaussian-surrogate") return McMode::correlated_gaussian_surrogate;
    throw ConfigError("unknown mc mode '" + name +
                      "' (expected independent-bernoulli | correlated-gaussian-surrogate)");
}

std::vector<std::uint8_t> sample_decodability(const GeneratorMatrix& code,
                                              const ChannelParams& ch, int noise_dim,
                                              Rng& rng) {
    if (noise_dim < 1) throw ConfigError("sample_decodability: noise_dim must be >= 1");
    const int K = code.K, N = code.N;
    const double alpha = mmse_alpha(ch);
    // Channel noise plus Gaussianized self noise per source block, shared
    // across servers so common terms stay common.
    const double sigma = std::sqrt(alpha * alpha * ch.N0 +
                                   (alpha - 1.0) * (alpha - 1.0) * ch.P);
    const double threshold = ch.P * std::exp2(-2.0 * ch.R);

    std::vector<double> noise(std::size_t(K) * noise_dim);
    rng.fill_normal(noise, sigma);

    std::vector<std::uint8_t> decodable(N);
    std::vector<double> combined(noise_dim);
    for (int i = 0; i < N; ++i) {
        std::fill(combined.begin(), combined.end(), 0.0);
        for (int j = 0; j < K; ++j) {
            const int g = code.at(j, i);
            if (g == 0) continue;
            const double* block = noise.data() + std::size_t(j) * noise_dim;
            for (int d = 0; d < noise_dim; ++d) combined[d] += g * block[d];
        }
        double energy = 0.0;
        for (int d = 0; d < noise_dim; ++d) energy += combined[d] * combined[d];
        decodable[i] = energy / noise_dim < threshold ? 1 : 0;
    }
    return decodable;
}

McResult run_mc(const GeneratorMatrix& code, const CodeMetrics& metrics,
                const ServerErrorProfile& profile, const ChannelParams& ch,
                const LatencyParams& lat, const McConfig& config,
                std::span<const double> time_grid, int threads) {
    if (config.trials < 1) throw ConfigError("mc: trials must be >= 1");
    const int N = code.N;
    if (int(profile.servers.size()) != N)
        throw ConfigError("mc: profile/code server count mismatch");
    const int noise_dim = config.noise_dim > 0 ? config.noise_dim : profile.n;
    if (noise_dim > profile.n)
        throw ConfigError("mc: noise_dim must not exceed the scheme block length");

    LatencyParams per_block = lat;
    per_block.n = profile.n;
    const int needed = N - metrics.d_min + 1;
    const std::size_t points = time_grid.size();

    std::vector<double> success_prob(N);
    for (int i = 0; i < N; ++i) success_prob[i] = 1.0 - profile.servers[i].p_e_ml;

    // Per-trial RNG streams are derived from (seed, trial index), so the
    // trial outcomes do not depend on how trials are split across threads.
    // Failure counts are integers; the final sums are order independent.
    std::vector<std::atomic<std::uint64_t>> failures(points);
    parallel_for(config.trials, std::max(1, threads), [&](std::size_t begin, std::size_t end) {
        std::vector<std::uint64_t> local(points, 0);
        std::vector<double> times;
        std::vector<std::uint8_t> decodable(N);
        for (std::size_t trial = begin; trial < end; ++trial) {
            Rng rng(derive_stream(config.seed, trial));
            times = sample_times(per_block, N, rng);
            if (config.mode == McMode::independent_bernoulli) {
                for (int i = 0; i < N; ++i)
                    decodable[i] = rng.uniform01() < success_prob[i] ? 1 : 0;
            } else {
                decodable = sample_decodability(code, ch, noise_dim, rng);
            }
            for (std::size_t k = 0; k < points; ++k) {
                const double t = time_grid[k];
                int good = 0;
                for (int i = 0; i < N; ++i) good += (times[i] <= t && decodable[i]) ? 1 : 0;
                if (good < needed) ++local[k];
            }
        }
        for (std::size_t k = 0; k < points; ++k)
            failures[k].fetch_add(local[k], std::memory_order_relaxed);
    });

    McResult out;
    out.noise_dim_used = noise_dim;
    out.fer.resize(points);
    out.ci_halfwidth.resize(points);
    const double trials = double(config.trials);
    for (std::size_t k = 0; k < points; ++k) {
        const double p = double(failures[k].load()) / trials;
        out.fer[k] = p;
        // Normal-approximation half-width with a rule-of-three floor so the
        // interval never collapses to zero at p in {0, 1}.
        const double wald = 1.959963984540054 * std::sqrt(p * (1.0 - p) / trials);
        out.ci_halfwidth[k] = std::min(1.0, std::max(wald, 3.0 / trials));
    }
    out.degenerate_ci = config.trials <= 3;
    return out;
}

}  // namespace nfvsim
