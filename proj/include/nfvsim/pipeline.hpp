// End-to-end runs shared by the CLI and the test suites: build schemes,
// evaluate bounds and Monte Carlo estimates, write CSV/JSON artifacts.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "nfvsim/bounds.hpp"
#include "nfvsim/config.hpp"

namespace nfvsim {

extern const char* const kArtifactVersion;

struct SchemeReport {
    BuiltScheme scheme;
    CodeMetrics metrics;
    ServerErrorProfile profile;
};

struct AnalyzeReport {
    std::vector<SchemeReport> rows;
};

AnalyzeReport run_analyze(const ExperimentConfig& config);
std::string render_analyze_table(const AnalyzeReport& report);
nlohmann::json analyze_to_json(const ExperimentConfig& config, const AnalyzeReport& report);

// Bounds for every scheme over the configured grid; optionally with Monte
// Carlo columns (requires config.mc).
std::vector<FERCurve> run_curves(const ExperimentConfig& config, bool with_mc, int threads = 1);

// Serialization used by both the per-scheme and the merged artifact files.
std::string curve_to_csv(const ExperimentConfig& config, const FERCurve& curve);
std::string curves_to_merged_csv(const ExperimentConfig& config,
                                 const std::vector<FERCurve>& curves);
nlohmann::json curve_to_json(const FERCurve& curve);
nlohmann::json curves_to_json(const ExperimentConfig& config,
                              const std::vector<FERCurve>& curves);

// Writes one file per scheme plus a merged comparison file into
// config.output.path (created if needed); returns the paths written.
std::vector<std::string> write_curves(const ExperimentConfig& config,
                                      const std::vector<FERCurve>& curves);

struct CompareRow {
    std::string scheme;
    double first_t_below_1e3;  // NaN when the target is never met on the grid
    int best_at_points;        // grid points where this scheme's UB is minimal
};

struct CompareReport {
    std::vector<CompareRow> rows;
};

CompareReport run_compare(const ExperimentConfig& config, const std::vector<FERCurve>& curves);
std::string render_compare_table(const CompareReport& report);
std::string compare_to_csv(const ExperimentConfig& config, const CompareReport& report);
nlohmann::json compare_to_json(const ExperimentConfig& config, const CompareReport& report);

void write_text_file(const std::string& path, const std::string& content);

// 17 significant digits, round-trip exact.
std::string format_double(double v);

}  // namespace nfvsim
