// Monte Carlo FER estimation.
//
// Each trial draws the N completion times once and the N decoding-success
// indicators once (both are time independent); a time point t then succeeds
// iff at least N - d_min + 1 servers have T_i <= t and decoded correctly.
//
// Decodability models:
//   independent_bernoulli      D_i ~ Bernoulli(1 - Pe_i), independent.
//   correlated_gaussian_surrogate
//       Draws one effective noise vector e_j per source block with per
//       component variance alpha^2 N0 + (alpha-1)^2 P (channel noise plus
//       Gaussianized self noise, alpha = MMSE), forms z_i = sum_j g_ji e_j,
//       and declares success iff ||z_i||^2 / n_s < P 2^(-2R). Shared e_j
//       terms reproduce the correlation structure of the dependency graph;
//       the threshold is the volume-to-noise condition with the lattice
//       quantization constant normalized to 1. A modeling surrogate, not an
//       exact decoder.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nfvsim/code_analysis.hpp"
#include "nfvsim/latency.hpp"
#include "nfvsim/rate.hpp"
#include "nfvsim/rng.hpp"

namespace nfvsim {

enum class McMode { independent_bernoulli, correlated_gaussian_surrogate };
const char* to_string(McMode mode);
McMode mc_mode_from_string(const std::string& name);

struct McConfig {
    std::uint64_t trials = 10000;
    std::uint64_t seed = 1;
    int noise_dim = 0;  // surrogate block length n_s; 0 means the scheme's n
    McMode mode = McMode::independent_bernoulli;
};

struct McResult {
    std::vector<double> fer;           // per time point
    std::vector<double> ci_halfwidth;  // 95% half-width, floored at 3/trials
    bool degenerate_ci = false;        // too few trials for a meaningful CI
    int noise_dim_used = 0;
};

// Correlated-surrogate decodability indicators for one trial.
std::vector<std::uint8_t> sample_decodability(const GeneratorMatrix& code,
                                              const ChannelParams& ch, int noise_dim,
                                              Rng& rng);

// Deterministic given (config.seed); per-trial streams are derived from
// (seed, trial index) so any thread count gives bit-identical results.
McResult run_mc(const GeneratorMatrix& code, const CodeMetrics& metrics,
                const ServerErrorProfile& profile, const ChannelParams& ch,
                const LatencyParams& lat, const McConfig& config,
                std::span<const double> time_grid, int threads = 1);

}  // namespace nfvsim
