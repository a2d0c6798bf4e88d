// Analytical FER-vs-latency upper bounds.
//
// ldb: large-deviation bound with validity threshold
//        t >= n*(a - (1/mu) ln((d_min - sum Pe) / (N - sum Pe))),
//      exp(-S/(b^2 chi) * phi(4 b (N F - F sum Pe - N + d_min) / (5 S)))
//      with b = F (1 - Pe_min), S = sum F(1-Pe_i)(1 - F(1-Pe_i)),
//      phi(x) = (1+x) ln(1+x) - x.
// ub:  subset union bound
//        1 - sum_{l=N-d_min+1}^{N} Pr(l,t) sum_{|A|=l} (1 - exp(-S_A/(b_A^2
//        chi(G_A)) * phi(4 b_A (l - N + d_min - Pe^A) / (5 S_A))))
//      with S_A = sum_{i in A} Pe_i (1 - Pe_i), b_A = 1 - min_{i in A} Pe_i.
//
// All evaluation is survival-based (q = 1 - F kept explicit) and the union
// bound is accumulated in deficit space, so deep tails are not destroyed by
// cancellation and results are identical regardless of evaluation order.
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nfvsim/code_analysis.hpp"
#include "nfvsim/latency.hpp"
#include "nfvsim/rate.hpp"

namespace nfvsim {

// Which rate the mu symbol in the ldb validity threshold refers to.
enum class ThresholdMu { service_rate, unavailability_rate, rate_gap };
const char* to_string(ThresholdMu interp);
ThresholdMu threshold_mu_from_string(const std::string& name);

enum class LdbStatus {
    ok,               // bound evaluated
    vacuous,          // bound clamps to 1 (no expected-success margin yet)
    below_threshold,  // t below the stated validity region
    inapplicable      // d_min <= sum of per-server error bounds
};
const char* to_string(LdbStatus status);

struct LdbPoint {
    double value = 1.0;
    LdbStatus status = LdbStatus::inapplicable;
    bool usable() const { return status == LdbStatus::ok || status == LdbStatus::vacuous; }
};

// Validity threshold of the large-deviation bound; NaN when inapplicable.
double ldb_validity_threshold(const CodeMetrics& metrics, const ServerErrorProfile& profile,
                              const LatencyParams& lat,
                              ThresholdMu interp = ThresholdMu::service_rate);

LdbPoint ldb(const CodeMetrics& metrics, const ServerErrorProfile& profile,
             const LatencyParams& lat, double t,
             ThresholdMu interp = ThresholdMu::service_rate);

// Precomputes the time-independent per-subset terms of the union bound once;
// evaluation per time point is then O(d_min).
class UbEvaluator {
   public:
    UbEvaluator(const GeneratorMatrix& code, const CodeMetrics& metrics,
                const ServerErrorProfile& profile);

    // q = survival probability 1 - F(t) of a single server.
    double from_survival(double q) const;
    double at(const LatencyParams& lat, double t) const;

    // sum over subsets of size l of exp(-...) failure deficits.
    std::span<const double> deficits_by_size() const { return deficit_by_l_; }

   private:
    int N_ = 0;
    int d_min_ = 0;
    std::vector<double> deficit_by_l_;  // index l, l in [N-d_min+1, N]
};

double ub(const GeneratorMatrix& code, const CodeMetrics& metrics,
          const ServerErrorProfile& profile, const LatencyParams& lat, double t);

struct McPoint {
    double fer = 0;
    double ci_halfwidth = 0;
};

struct CurveMetadata {
    std::string scheme;
    int K = 0, N = 0, n = 0;
    int d_min = 0, chromatic = 0;
    std::vector<ServerError> servers;
    std::string ldb_threshold_mu;
    double ldb_threshold_t = 0;  // NaN when inapplicable
    bool ldb_applicable = true;
    bool pe_clamped = false;      // some server's error bound was clamped
    bool pe_asymptotic = true;    // finite-n use of asymptotic expressions
    bool nfv_standin = false;     // generator matrix is the bundled stand-in
    // Filled when Monte Carlo results are attached.
    std::optional<std::string> mc_mode;
    std::optional<std::uint64_t> mc_trials;
    std::optional<std::uint64_t> mc_seed;
    std::optional<int> mc_noise_dim;
    bool mc_degenerate_ci = false;
};

struct FERCurve {
    CurveMetadata meta;
    std::vector<double> time_grid;
    std::vector<double> f;  // F(t)
    std::vector<LdbPoint> ldb;
    std::vector<double> ub;
    std::optional<std::vector<McPoint>> mc;
};

struct SweepInput {
    std::string name;
    GeneratorMatrix code;
    int n = 1;
    bool nfv_standin = false;
};

// Per-point LDB/UB over the grid. lat carries (mu1, mu2, a); its block
// length is replaced by the scheme's n. Grid points are independent; with
// threads > 1 they are evaluated in parallel with results stored by index.
FERCurve sweep(const SweepInput& input, const LatencyParams& lat, const ChannelParams& ch,
               std::span<const double> time_grid,
               ThresholdMu interp = ThresholdMu::service_rate, int threads = 1);

}  // namespace nfvsim
