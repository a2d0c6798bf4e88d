#include "nfvsim/rate.hpp"

#include <algorithm>

#include "nfvsim/errors.hpp"
#include "nfvsim/generator_matrix.hpp"

namespace nfvsim {

void ChannelParams::validate() const {
    if (!(P > 0)) throw ConfigError("channel: P must be > 0");
    if (!(N0 > 0)) throw ConfigError("channel: N0 must be > 0");
    if (!(R >= 0)) throw ConfigError("channel: R must be >= 0");
    if (!is_prime(p)) throw ConfigError("channel: p must be prime");
}

ChannelParams ChannelParams::from_snr_db(double snr_db, double rate, int p) {
    ChannelParams ch;
    ch.P = std::pow(10.0, snr_db / 10.0);
    ch.N0 = 1.0;
    ch.R = rate;
    ch.p = p;
    ch.validate();
    return ch;
}

double mmse_alpha(const ChannelParams& ch) {
    const double s = ch.snr();
    return s / (1.0 + s);
}

double computation_rate_at_alpha(const ChannelParams& ch, long long sq_norm, double alpha) {
    const double s = ch.snr();
    const double denom = alpha * alpha + s * (alpha - 1.0) * (alpha - 1.0);
    const double ratio = s / (double(sq_norm) * denom);
    return std::max(0.0, 0.5 * std::log2(ratio));
}

double optimal_computation_rate(const ChannelParams& ch, long long sq_norm) {
    const double ratio = (1.0 + ch.snr()) / double(sq_norm);
    return std::max(0.0, 0.5 * std::log2(ratio));
}

double equivalent_noise_variance(const ChannelParams& ch, long long sq_norm, double alpha) {
    const double s = ch.snr();
    return double(sq_norm) * ch.N0 * (alpha * alpha + s * (alpha - 1.0) * (alpha - 1.0));
}

double poltyrev_exponent(double mu) {
    if (mu <= 1.0) return 0.0;
    if (mu >= 2.0) return 0.5 * (std::log(mu) + 1.0 - std::log(4.0));
    return 0.5 * (mu - 1.0 - std::log(mu));
}

namespace {
constexpr double kMuTwoTol = 1e-12;
}

PeResult p_e_ml(const ChannelParams& ch, long long sq_norm, int n) {
    PeResult out;
    out.comp_rate = optimal_computation_rate(ch, sq_norm);
    out.gap = out.comp_rate - ch.R;
    out.mu = std::exp2(2.0 * out.gap);
    if (out.mu <= 1.0) {
        // No positive rate gap: the bound carries no information.
        out.value = 1.0;
        out.clamped = true;
        return out;
    }
    const double er = poltyrev_exponent(out.mu);
    double raw;
    if (std::abs(out.mu - 2.0) < kMuTwoTol) {
        raw = std::exp(-n * er) / std::sqrt(8.0 * M_PI * n);
    } else if (out.mu > 2.0) {
        raw = std::exp(-n * er) / std::sqrt(2.0 * M_PI * n);
    } else {
        raw = std::exp(-n * er - 0.5 * out.mu * std::log(n * M_PI)) /
              ((2.0 - out.mu) * (out.mu - 1.0));
    }
    out.value = raw;
    if (raw > 1.0) {
        out.value = 1.0;
        out.clamped = true;
    } else if (raw < 0.0) {
        out.value = 0.0;
        out.clamped = true;
    }
    return out;
}

double ServerErrorProfile::sum_pe() const {
    double total = 0;
    for (const auto& s : servers) total += s.p_e_ml;
    return total;
}

double ServerErrorProfile::min_pe() const {
    double best = 1.0;
    for (const auto& s : servers) best = std::min(best, s.p_e_ml);
    return best;
}

bool ServerErrorProfile::any_clamped() const {
    for (const auto& s : servers)
        if (s.clamped) return true;
    return false;
}

ServerErrorProfile make_error_profile(const ChannelParams& ch,
                                      std::span<const long long> sq_norms, int n) {
    if (n < 1) throw ConfigError("error profile: n must be >= 1");
    ServerErrorProfile profile;
    profile.n = n;
    profile.servers.reserve(sq_norms.size());
    for (const long long s : sq_norms) {
        const PeResult pe = p_e_ml(ch, s, n);
        profile.servers.push_back({s, pe.comp_rate, pe.gap, pe.mu, pe.value, pe.clamped});
    }
    return profile;
}

}  // namespace nfvsim
