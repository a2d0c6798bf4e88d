#include "nfvsim/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "nfvsim/errors.hpp"
#include "nfvsim/simulate.hpp"

namespace nfvsim {

const char* const kArtifactVersion = "0.1.0";

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

AnalyzeReport run_analyze(const ExperimentConfig& config) {
    config.validate();
    const ChannelParams ch = config.channel();
    AnalyzeReport report;
    for (const auto& spec : config.schemes) {
        SchemeReport row;
        row.scheme = build(spec, config.frame);
        row.metrics = analyze_code(row.scheme.code);
        row.profile = make_error_profile(ch, row.metrics.sq_norms, row.scheme.n);
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::string render_analyze_table(const AnalyzeReport& report) {
    std::ostringstream out;
    out << "scheme        K   N     n  d_min  chi  server  |g|^2      R*        gap       mu        P_e^ML\n";
    for (const auto& row : report.rows) {
        for (std::size_t i = 0; i < row.profile.servers.size(); ++i) {
            const auto& s = row.profile.servers[i];
            char line[256];
            if (i == 0) {
                std::snprintf(line, sizeof(line),
                              "%-12s %3d %3d %5d  %5d  %3d  %6zu  %-6lld %-9.4g %-9.4g %-9.4g %.4g%s\n",
                              row.scheme.name.c_str(), row.scheme.K, row.scheme.code.N,
                              row.scheme.n, row.metrics.d_min, row.metrics.chromatic, i + 1,
                              s.sq_norm, s.comp_rate, s.gap, s.mu, s.p_e_ml,
                              s.clamped ? " (clamped)" : "");
            } else {
                std::snprintf(line, sizeof(line),
                              "%-12s %3s %3s %5s  %5s  %3s  %6zu  %-6lld %-9.4g %-9.4g %-9.4g %.4g%s\n",
                              "", "", "", "", "", "", i + 1, s.sq_norm, s.comp_rate, s.gap,
                              s.mu, s.p_e_ml, s.clamped ? " (clamped)" : "");
            }
            out << line;
        }
    }
    return out.str();
}

namespace {

nlohmann::json servers_to_json(const std::vector<ServerError>& servers) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : servers) {
        arr.push_back({{"sq_norm", s.sq_norm},
                       {"comp_rate", s.comp_rate},
                       {"gap", s.gap},
                       {"mu", s.mu},
                       {"p_e_ml", s.p_e_ml},
                       {"clamped", s.clamped}});
    }
    return arr;
}

nlohmann::json artifact_header(const ExperimentConfig& config) {
    return {{"name", "nfvsim"}, {"version", kArtifactVersion}, {"config", config_to_json(config)}};
}

}  // namespace

nlohmann::json analyze_to_json(const ExperimentConfig& config, const AnalyzeReport& report) {
    nlohmann::json j;
    j["artifact"] = artifact_header(config);
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.rows) {
        nlohmann::json r;
        r["scheme"] = row.scheme.name;
        r["K"] = row.scheme.K;
        r["N"] = row.scheme.code.N;
        r["n"] = row.scheme.n;
        r["p_prime"] = row.scheme.code.p_prime;
        r["d_min"] = row.metrics.d_min;
        r["chromatic_number"] = row.metrics.chromatic;
        r["column_sq_norms"] = row.metrics.sq_norms;
        r["servers"] = servers_to_json(row.profile.servers);
        r["pe_asymptotic_approximation"] = true;
        if (row.scheme.nfv_standin) r["nfv_matrix"] = "search-found stand-in";
        rows.push_back(std::move(r));
    }
    j["schemes"] = std::move(rows);
    return j;
}

std::vector<FERCurve> run_curves(const ExperimentConfig& config, bool with_mc, int threads) {
    config.validate();
    if (with_mc && !config.mc)
        throw ConfigError("mc: section required for simulate runs");
    const ChannelParams ch = config.channel();
    const std::vector<double> grid = config.time_grid.materialize();

    std::vector<FERCurve> curves;
    for (const auto& spec : config.schemes) {
        BuiltScheme scheme = build(spec, config.frame);
        SweepInput input{spec.name, scheme.code, scheme.n, scheme.nfv_standin};
        FERCurve curve =
            sweep(input, config.latency, ch, grid, config.ldb_threshold_mu, threads);
        if (with_mc) {
            const CodeMetrics metrics = analyze_code(scheme.code);
            const ServerErrorProfile profile = make_error_profile(ch, metrics.sq_norms, scheme.n);
            McResult mc = run_mc(scheme.code, metrics, profile, ch, config.latency, *config.mc,
                                 grid, threads);
            std::vector<McPoint> points(grid.size());
            for (std::size_t i = 0; i < grid.size(); ++i)
                points[i] = {mc.fer[i], mc.ci_halfwidth[i]};
            curve.mc = std::move(points);
            curve.meta.mc_mode = to_string(config.mc->mode);
            curve.meta.mc_trials = config.mc->trials;
            curve.meta.mc_seed = config.mc->seed;
            curve.meta.mc_noise_dim = mc.noise_dim_used;
            curve.meta.mc_degenerate_ci = mc.degenerate_ci;
        }
        curves.push_back(std::move(curve));
    }
    return curves;
}

namespace {

void append_curve_rows(std::ostringstream& out, const FERCurve& curve) {
    for (std::size_t i = 0; i < curve.time_grid.size(); ++i) {
        out << curve.meta.scheme << ',' << format_double(curve.time_grid[i]) << ','
            << format_double(curve.f[i]) << ',';
        if (curve.ldb[i].usable())
            out << format_double(curve.ldb[i].value) << ",1,";
        else
            out << "nan,0,";
        out << format_double(curve.ub[i]) << ',';
        if (curve.mc)
            out << format_double((*curve.mc)[i].fer) << ','
                << format_double((*curve.mc)[i].ci_halfwidth) << ',';
        else
            out << "nan,nan,";
        out << curve.meta.d_min << ',' << curve.meta.chromatic << ',' << curve.meta.n << '\n';
    }
}

std::string csv_preamble(const ExperimentConfig& config) {
    std::ostringstream out;
    out << "# nfvsim " << kArtifactVersion << "\n";
    out << "# config " << config_to_json(config).dump() << "\n";
    return out.str();
}

constexpr const char* kCsvHeader = "scheme,t,F_t,ldb,ldb_valid,ub,mc_fer,mc_ci,d_min,chi,n\n";

std::string meta_comment(const FERCurve& curve) {
    nlohmann::json j;
    j["scheme"] = curve.meta.scheme;
    j["ldb_threshold_mu"] = curve.meta.ldb_threshold_mu;
    j["ldb_threshold_t"] = curve.meta.ldb_applicable
                               ? nlohmann::json(curve.meta.ldb_threshold_t)
                               : nlohmann::json();
    j["pe_clamped"] = curve.meta.pe_clamped;
    if (curve.meta.nfv_standin) j["nfv_matrix"] = "search-found stand-in";
    if (curve.meta.mc_mode) j["mc_mode"] = *curve.meta.mc_mode;
    if (curve.meta.mc_noise_dim) j["mc_noise_dim"] = *curve.meta.mc_noise_dim;
    return "# meta " + j.dump() + "\n";
}

}  // namespace

std::string curve_to_csv(const ExperimentConfig& config, const FERCurve& curve) {
    std::ostringstream out;
    out << csv_preamble(config) << meta_comment(curve) << kCsvHeader;
    append_curve_rows(out, curve);
    return out.str();
}

std::string curves_to_merged_csv(const ExperimentConfig& config,
                                 const std::vector<FERCurve>& curves) {
    std::ostringstream out;
    out << csv_preamble(config);
    for (const auto& curve : curves) out << meta_comment(curve);
    out << kCsvHeader;
    for (const auto& curve : curves) append_curve_rows(out, curve);
    return out.str();
}

nlohmann::json curve_to_json(const FERCurve& curve) {
    nlohmann::json meta;
    meta["scheme"] = curve.meta.scheme;
    meta["K"] = curve.meta.K;
    meta["N"] = curve.meta.N;
    meta["n"] = curve.meta.n;
    meta["d_min"] = curve.meta.d_min;
    meta["chromatic_number"] = curve.meta.chromatic;
    meta["servers"] = servers_to_json(curve.meta.servers);
    meta["ldb_threshold_mu"] = curve.meta.ldb_threshold_mu;
    meta["ldb_threshold_t"] = curve.meta.ldb_applicable
                                  ? nlohmann::json(curve.meta.ldb_threshold_t)
                                  : nlohmann::json();
    meta["ldb_applicable"] = curve.meta.ldb_applicable;
    meta["pe_clamped"] = curve.meta.pe_clamped;
    meta["pe_asymptotic_approximation"] = curve.meta.pe_asymptotic;
    if (curve.meta.nfv_standin) meta["nfv_matrix"] = "search-found stand-in";
    if (curve.meta.mc_mode) {
        meta["mc"] = {{"mode", *curve.meta.mc_mode},
                      {"trials", *curve.meta.mc_trials},
                      {"seed", *curve.meta.mc_seed},
                      {"noise_dim", *curve.meta.mc_noise_dim},
                      {"degenerate_ci", curve.meta.mc_degenerate_ci}};
    }

    nlohmann::json points = nlohmann::json::array();
    for (std::size_t i = 0; i < curve.time_grid.size(); ++i) {
        nlohmann::json p;
        p["t"] = curve.time_grid[i];
        p["F_t"] = curve.f[i];
        p["ldb"] = curve.ldb[i].usable() ? nlohmann::json(curve.ldb[i].value)
                                         : nlohmann::json();
        p["ldb_status"] = to_string(curve.ldb[i].status);
        p["ub"] = curve.ub[i];
        if (curve.mc) {
            p["mc_fer"] = (*curve.mc)[i].fer;
            p["mc_ci"] = (*curve.mc)[i].ci_halfwidth;
        }
        points.push_back(std::move(p));
    }
    return {{"meta", std::move(meta)}, {"points", std::move(points)}};
}

nlohmann::json curves_to_json(const ExperimentConfig& config,
                              const std::vector<FERCurve>& curves) {
    nlohmann::json j;
    j["artifact"] = artifact_header(config);
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& curve : curves) arr.push_back(curve_to_json(curve));
    j["curves"] = std::move(arr);
    return j;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

std::vector<std::string> write_curves(const ExperimentConfig& config,
                                      const std::vector<FERCurve>& curves) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(config.output.path, ec);
    if (ec) throw IoError("cannot create output directory: " + config.output.path);

    const bool csv = config.output.format == OutputSpec::Format::csv;
    const std::string ext = csv ? ".csv" : ".json";
    std::vector<std::string> written;
    for (const auto& curve : curves) {
        const std::string path =
            (fs::path(config.output.path) / (curve.meta.scheme + ext)).string();
        if (csv) {
            write_text_file(path, curve_to_csv(config, curve));
        } else {
            nlohmann::json j;
            j["artifact"] = artifact_header(config);
            j["curves"] = nlohmann::json::array({curve_to_json(curve)});
            write_text_file(path, j.dump(2) + "\n");
        }
        written.push_back(path);
    }
    const std::string merged =
        (fs::path(config.output.path) / (std::string("comparison") + ext)).string();
    if (csv)
        write_text_file(merged, curves_to_merged_csv(config, curves));
    else
        write_text_file(merged, curves_to_json(config, curves).dump(2) + "\n");
    written.push_back(merged);
    return written;
}

CompareReport run_compare(const ExperimentConfig& config, const std::vector<FERCurve>& curves) {
    (void)config;
    CompareReport report;
    if (curves.empty()) return report;
    const std::size_t points = curves.front().time_grid.size();
    std::vector<int> best(curves.size(), 0);
    for (std::size_t i = 0; i < points; ++i) {
        std::size_t arg = 0;
        bool strict = true;
        for (std::size_t c = 1; c < curves.size(); ++c) {
            if (curves[c].ub[i] < curves[arg].ub[i]) {
                arg = c;
                strict = true;
            } else if (curves[c].ub[i] == curves[arg].ub[i]) {
                strict = false;
            }
        }
        if (strict || curves.size() == 1) ++best[arg];
    }
    for (std::size_t c = 0; c < curves.size(); ++c) {
        CompareRow row;
        row.scheme = curves[c].meta.scheme;
        row.first_t_below_1e3 = std::numeric_limits<double>::quiet_NaN();
        for (std::size_t i = 0; i < points; ++i)
            if (curves[c].ub[i] <= 1e-3) {
                row.first_t_below_1e3 = curves[c].time_grid[i];
                break;
            }
        row.best_at_points = best[c];
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::string render_compare_table(const CompareReport& report) {
    std::ostringstream out;
    out << "scheme        first t with UB<=1e-3   strictly best at (grid points)\n";
    for (const auto& row : report.rows) {
        char line[160];
        if (std::isnan(row.first_t_below_1e3))
            std::snprintf(line, sizeof(line), "%-12s  %-22s  %d\n", row.scheme.c_str(),
                          "never on grid", row.best_at_points);
        else
            std::snprintf(line, sizeof(line), "%-12s  %-22.6g  %d\n", row.scheme.c_str(),
                          row.first_t_below_1e3, row.best_at_points);
        out << line;
    }
    return out.str();
}

std::string compare_to_csv(const ExperimentConfig& config, const CompareReport& report) {
    std::ostringstream out;
    out << csv_preamble(config);
    out << "scheme,first_t_below_1e-3,strictly_best_at_points\n";
    for (const auto& row : report.rows) {
        out << row.scheme << ','
            << (std::isnan(row.first_t_below_1e3) ? std::string("nan")
                                                  : format_double(row.first_t_below_1e3))
            << ',' << row.best_at_points << '\n';
    }
    return out.str();
}

nlohmann::json compare_to_json(const ExperimentConfig& config, const CompareReport& report) {
    nlohmann::json j;
    j["artifact"] = artifact_header(config);
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.rows) {
        nlohmann::json r;
        r["scheme"] = row.scheme;
        r["first_t_below_1e-3"] = std::isnan(row.first_t_below_1e3)
                                      ? nlohmann::json()
                                      : nlohmann::json(row.first_t_below_1e3);
        r["strictly_best_at_points"] = row.best_at_points;
        rows.push_back(std::move(r));
    }
    j["schemes"] = std::move(rows);
    return j;
}

}  // namespace nfvsim
