// Computation rates, MMSE scaling, equivalent noise variance and the
// per-server ML decoding error bound built from the Poltyrev exponent.
//
// Rates and gaps are in bits (base-2 logs); the error exponent itself uses
// natural logs.
#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace nfvsim {

struct ChannelParams {
    double P = 1.0;   // per-symbol transmit power
    double N0 = 1.0;  // noise variance
    double R = 0.0;   // user transmission rate, bits per channel use
    int p = 2;        // user field prime

    double snr() const { return P / N0; }
    void validate() const;  // throws ConfigError

    // Convenience: unit noise power, P chosen to match the given SNR in dB.
    static ChannelParams from_snr_db(double snr_db, double rate, int p = 2);
};

// SNR / (1 + SNR); the scaling that minimizes the equivalent noise.
double mmse_alpha(const ChannelParams& ch);

// (1/2) log2+ ( P / (sq_norm * N0 * (alpha^2 + SNR (alpha-1)^2)) ).
double computation_rate_at_alpha(const ChannelParams& ch, long long sq_norm, double alpha);

// Closed form of the maximum over alpha: (1/2) log2+ ((1+SNR) / sq_norm).
double optimal_computation_rate(const ChannelParams& ch, long long sq_norm);

// sq_norm * N0 * (alpha^2 + SNR (alpha-1)^2).
double equivalent_noise_variance(const ChannelParams& ch, long long sq_norm, double alpha);

// Random coding exponent for the unconstrained AWGN channel:
//   mu >= 2      : (1/2) [ln(mu) + ln(e/4)]
//   1 <= mu <= 2 : (1/2) [mu - 1 - ln(mu)]
//   mu <= 1      : 0
double poltyrev_exponent(double mu);

struct PeResult {
    double value = 1.0;   // upper bound on the per-server error probability
    double comp_rate = 0; // optimal computation rate (bits)
    double gap = 0;       // comp_rate - R (bits)
    double mu = 1.0;      // 2^(2*gap)
    bool clamped = false; // true when the raw expression left [0, 1]
};

// The asymptotic ML error bound evaluated at finite n. mu <= 1 yields a
// vacuous bound clamped to 1; |mu - 2| < 1e-12 uses the mu = 2 expression
// (the 1 < mu < 2 branch diverges as mu -> 2-).
PeResult p_e_ml(const ChannelParams& ch, long long sq_norm, int n);

struct ServerError {
    long long sq_norm = 1;
    double comp_rate = 0;
    double gap = 0;
    double mu = 1;
    double p_e_ml = 1;
    bool clamped = false;
};

struct ServerErrorProfile {
    std::vector<ServerError> servers;
    int n = 1;  // block length the bound was evaluated at

    double sum_pe() const;
    double min_pe() const;
    bool any_clamped() const;
};

ServerErrorProfile make_error_profile(const ChannelParams& ch,
                                      std::span<const long long> sq_norms, int n);

}  // namespace nfvsim
