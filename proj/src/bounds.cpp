#include "nfvsim/bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "nfvsim/errors.hpp"
#include "nfvsim/parallel.hpp"

namespace nfvsim {

const char* to_string(ThresholdMu interp) {
    switch (interp) {
        case ThresholdMu::service_rate: return "service-rate";
        case ThresholdMu::unavailability_rate: return "unavailability-rate";
        case ThresholdMu::rate_gap: return "rate-gap";
    }
    return "?";
}

ThresholdMu threshold_mu_from_string(const std::string& name) {
    if (name == "service-rate") return ThresholdMu::service_rate;
    if (name == "unavailability-rate") return ThresholdMu::unavailability_rate;
    if (name == "rate-gap") return ThresholdMu::rate_gap;
    throw ConfigError("unknown ldb_threshold_mu '" + name +
                      "' (expected service-rate | unavailability-rate | rate-gap)");
}

const char* to_string(LdbStatus status) {
    switch (status) {
        case LdbStatus::ok: return "ok";
        case LdbStatus::vacuous: return "vacuous";
        case LdbStatus::below_threshold: return "below-threshold";
        case LdbStatus::inapplicable: return "inapplicable";
    }
    return "?";
}

namespace {

double bennett_phi(double x) { return (1.0 + x) * std::log1p(x) - x; }

double threshold_rate(const ServerErrorProfile& profile, const LatencyParams& lat,
                      ThresholdMu interp) {
    switch (interp) {
        case ThresholdMu::service_rate: return lat.mu2;
        case ThresholdMu::unavailability_rate: return lat.mu1;
        case ThresholdMu::rate_gap: {
            double mu = std::numeric_limits<double>::infinity();
            for (const auto& s : profile.servers) mu = std::min(mu, s.mu);
            return mu;
        }
    }
    return lat.mu2;
}

}  // namespace

double ldb_validity_threshold(const CodeMetrics& metrics, const ServerErrorProfile& profile,
                              const LatencyParams& lat, ThresholdMu interp) {
    const double sum_pe = profile.sum_pe();
    const int N = int(profile.servers.size());
    if (!(metrics.d_min > sum_pe)) return std::numeric_limits<double>::quiet_NaN();
    const double mu = threshold_rate(profile, lat, interp);
    const double ratio = (metrics.d_min - sum_pe) / (double(N) - sum_pe);
    return profile.n * (lat.a - std::log(ratio) / mu);
}

LdbPoint ldb(const CodeMetrics& metrics, const ServerErrorProfile& profile,
             const LatencyParams& lat, double t, ThresholdMu interp) {
    const int N = int(profile.servers.size());
    const double sum_pe = profile.sum_pe();
    if (!(metrics.d_min > sum_pe)) return {1.0, LdbStatus::inapplicable};

    const double threshold = ldb_validity_threshold(metrics, profile, lat, interp);
    if (t < threshold) return {1.0, LdbStatus::below_threshold};

    LatencyParams per_block = lat;
    per_block.n = profile.n;
    const double q = survival(per_block, t);
    const double f = 1.0 - q;
    if (f <= 0.0) return {1.0, LdbStatus::vacuous};

    const double b = f * (1.0 - profile.min_pe());
    // S = sum F(1-Pe)(1 - F(1-Pe)); the complement is built as
    // q + Pe - q*Pe to keep tiny tails exact when F rounds to 1.
    double s_var = 0.0;
    for (const auto& sv : profile.servers) {
        const double r = q + sv.p_e_ml - q * sv.p_e_ml;
        s_var += (1.0 - r) * r;
    }
    // Expected-success margin N F - F sum Pe - N + d_min, cancellation-free.
    const double margin = (metrics.d_min - sum_pe) - q * (double(N) - sum_pe);
    if (s_var <= 0.0) {
        // Zero variance: every server's indicator is deterministic.
        return margin > 0 ? LdbPoint{0.0, LdbStatus::ok} : LdbPoint{1.0, LdbStatus::vacuous};
    }
    const double x = 4.0 * b * margin / (5.0 * s_var);
    if (x < 0.0) return {1.0, LdbStatus::vacuous};
    const double exponent = s_var / (b * b * metrics.chromatic) * bennett_phi(x);
    return {std::clamp(std::exp(-exponent), 0.0, 1.0), LdbStatus::ok};
}

UbEvaluator::UbEvaluator(const GeneratorMatrix& code, const CodeMetrics& metrics,
                         const ServerErrorProfile& profile) {
    N_ = int(profile.servers.size());
    d_min_ = metrics.d_min;
    if (N_ > 20)
        throw SizeError("union bound subset enumeration limited to N <= 20, got N = " +
                        std::to_string(N_));
    if (code.N != N_) throw ConfigError("union bound: profile/code server count mismatch");

    const DependencyGraph graph = dependency_graph(code);
    deficit_by_l_.assign(std::size_t(N_) + 1, 0.0);

    const int l_min = N_ - d_min_ + 1;
    std::vector<int> members;
    members.reserve(N_);
    for (std::uint32_t mask = 1; mask < (1u << N_); ++mask) {
        const int l = std::popcount(mask);
        if (l < l_min) continue;
        members.clear();
        for (int i = 0; i < N_; ++i)
            if (mask & (1u << i)) members.push_back(i);

        double s_a = 0.0, pe_a = 0.0, pe_min = 1.0;
        for (int i : members) {
            const double pe = profile.servers[i].p_e_ml;
            s_a += pe * (1.0 - pe);
            pe_a += pe;
            pe_min = std::min(pe_min, pe);
        }
        const double margin = double(l - N_ + d_min_) - pe_a;

        double deficit;  // exp(-...) failure probability bound for this subset
        if (s_a <= 0.0) {
            deficit = margin > 0 ? 0.0 : 1.0;
        } else if (margin <= 0.0) {
            deficit = 1.0;
        } else {
            const double b = 1.0 - pe_min;
            const int chi = chromatic_number(induced_subgraph(graph, members));
            const double x = 4.0 * b * margin / (5.0 * s_a);
            deficit = std::exp(-s_a / (b * b * chi) * bennett_phi(x));
        }
        deficit_by_l_[l] += std::clamp(deficit, 0.0, 1.0);
    }
}

namespace {

// C(N, j) q^j f^(N-j)
double stragglers_term(int N, double q, double f, int j) {
    double coeff = 1.0;
    for (int i = 0; i < j; ++i) coeff = coeff * double(N - i) / double(i + 1);
    return coeff * std::pow(q, double(j)) * std::pow(f, double(N - j));
}

}  // namespace

double UbEvaluator::from_survival(double q) const {
    const double f = 1.0 - q;
    // Latency part: probability that at least d_min servers are unfinished,
    // accumulated from the largest straggler count down (fixed order).
    double binom_tail = 0.0;
    for (int j = N_; j >= d_min_; --j) binom_tail += stragglers_term(N_, q, f, j);
    // Decoding part: per-subset failure deficits weighted by Pr(l, t).
    double deficit = 0.0;
    for (int l = N_ - d_min_ + 1; l <= N_; ++l)
        deficit += std::pow(f, double(l)) * std::pow(q, double(N_ - l)) * deficit_by_l_[l];
    return std::clamp(binom_tail + deficit, 0.0, 1.0);
}

double UbEvaluator::at(const LatencyParams& lat, double t) const {
    return from_survival(survival(lat, t));
}

double ub(const GeneratorMatrix& code, const CodeMetrics& metrics,
          const ServerErrorProfile& profile, const LatencyParams& lat, double t) {
    LatencyParams per_block = lat;
    per_block.n = profile.n;
    return UbEvaluator(code, metrics, profile).at(per_block, t);
}

FERCurve sweep(const SweepInput& input, const LatencyParams& lat, const ChannelParams& ch,
               std::span<const double> time_grid, ThresholdMu interp, int threads) {
    if (time_grid.empty()) throw ConfigError("sweep: time grid must be non-empty");
    for (std::size_t i = 1; i < time_grid.size(); ++i)
        if (!(time_grid[i] > time_grid[i - 1]))
            throw ConfigError("sweep: time grid must be strictly increasing");

    const CodeMetrics metrics = analyze_code(input.code);
    const ServerErrorProfile profile = make_error_profile(ch, metrics.sq_norms, input.n);
    LatencyParams per_block = lat;
    per_block.n = input.n;
    const UbEvaluator evaluator(input.code, metrics, profile);

    FERCurve curve;
    curve.meta.scheme = input.name;
    curve.meta.K = input.code.K;
    curve.meta.N = input.code.N;
    curve.meta.n = input.n;
    curve.meta.d_min = metrics.d_min;
    curve.meta.chromatic = metrics.chromatic;
    curve.meta.servers = profile.servers;
    curve.meta.ldb_threshold_mu = to_string(interp);
    curve.meta.ldb_threshold_t = ldb_validity_threshold(metrics, profile, per_block, interp);
    curve.meta.ldb_applicable = !std::isnan(curve.meta.ldb_threshold_t);
    curve.meta.pe_clamped = profile.any_clamped();
    curve.meta.nfv_standin = input.nfv_standin;

    const std::size_t points = time_grid.size();
    curve.time_grid.assign(time_grid.begin(), time_grid.end());
    curve.f.resize(points);
    curve.ldb.resize(points);
    curve.ub.resize(points);

    parallel_for(points, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const double t = curve.time_grid[i];
            const double q = survival(per_block, t);
            curve.f[i] = 1.0 - q;
            curve.ldb[i] = ldb(metrics, profile, per_block, t, interp);
            curve.ub[i] = evaluator.from_survival(q);
        }
    });
    return curve;
}

}  // namespace nfvsim
