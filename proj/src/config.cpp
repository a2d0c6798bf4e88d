#include "nfvsim/config.hpp"

#include <cmath>
#include <fstream>

#include "nfvsim/errors.hpp"

namespace nfvsim {

using nlohmann::json;

std::vector<double> TimeGridSpec::materialize() const {
    std::vector<double> grid(points);
    if (spacing == Spacing::log) {
        const double lo = std::log(start), hi = std::log(stop);
        for (int k = 0; k < points; ++k)
            grid[k] = std::exp(lo + (hi - lo) * k / double(points - 1));
        grid.front() = start;
        grid.back() = stop;
    } else {
        for (int k = 0; k < points; ++k)
            grid[k] = start + (stop - start) * k / double(points - 1);
        grid.front() = start;
        grid.back() = stop;
    }
    return grid;
}

ChannelParams ExperimentConfig::channel() const {
    return ChannelParams::from_snr_db(snr_db, frame.R, frame.p);
}

void ExperimentConfig::validate() const {
    if (!(frame.L > 0)) throw ConfigError("frame.L: must be > 0");
    if (!(frame.R > 0)) throw ConfigError("frame.R: must be > 0");
    if (!is_prime(frame.p)) throw ConfigError("frame.p: must be prime");
    if (!std::isfinite(snr_db)) throw ConfigError("channel.snr_db: must be finite");
    if (!(latency.mu1 > 0)) throw ConfigError("latency.mu1: must be > 0");
    if (!(latency.mu2 > 0)) throw ConfigError("latency.mu2: must be > 0");
    if (!(latency.a >= 0)) throw ConfigError("latency.a: must be >= 0");
    if (schemes.empty()) throw ConfigError("schemes: at least one scheme is required");
    for (std::size_t i = 0; i < schemes.size(); ++i) {
        if (schemes[i].name.empty())
            throw ConfigError("schemes[" + std::to_string(i) + "].name: must be non-empty");
        for (std::size_t j = 0; j < i; ++j)
            if (schemes[j].name == schemes[i].name)
                throw ConfigError("schemes[" + std::to_string(i) + "].name: duplicate '" +
                                  schemes[i].name + "'");
    }
    if (!(time_grid.start < time_grid.stop))
        throw ConfigError("time_grid: start must be < stop");
    if (time_grid.points < 2) throw ConfigError("time_grid.points: must be >= 2");
    if (time_grid.spacing == TimeGridSpec::Spacing::log && !(time_grid.start > 0))
        throw ConfigError("time_grid.start: must be > 0 for log spacing");
    if (mc) {
        if (mc->trials < 1) throw ConfigError("mc.trials: must be >= 1");
        if (mc->noise_dim < 0) throw ConfigError("mc.noise_dim: must be >= 0");
    }
    if (output.path.empty()) throw ConfigError("output.path: must be non-empty");
}

namespace {

const json& require(const json& j, const char* key, const std::string& path) {
    auto it = j.find(key);
    if (it == j.end()) throw ConfigError(path + ": missing field '" + key + "'");
    return *it;
}

double number_at(const json& j, const char* key, const std::string& path) {
    const json& v = require(j, key, path);
    if (!v.is_number()) throw ConfigError(path + "." + key + ": expected a number");
    return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
    auto it = j.find(key);
    return it == j.end() ? fallback : it->get<double>();
}

SchemeSpec scheme_from_json(const json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path + ": expected an object");
    SchemeSpec spec;
    spec.name = require(j, "name", path).get<std::string>();
    std::string builder = require(j, "builder", path).get<std::string>();
    // Accept the CLI shorthand "custom:<path>".
    if (builder.rfind("custom:", 0) == 0) {
        spec.custom_path = builder.substr(7);
        builder = "custom";
    }
    try {
        spec.builder = builder_from_string(builder);
    } catch (const ConfigError& e) {
        throw ConfigError(path + ".builder: " + e.what());
    }
    spec.L = number_or(j, "L", 0.0);
    if (auto it = j.find("N"); it != j.end()) spec.N = it->get<int>();
    if (auto it = j.find("scale"); it != j.end()) spec.scale = it->get<int>();
    if (auto it = j.find("p_prime"); it != j.end()) spec.p_prime = it->get<int>();
    if (auto it = j.find("path"); it != j.end()) spec.custom_path = it->get<std::string>();
    if (auto it = j.find("matrix"); it != j.end()) {
        GeneratorMatrix m;
        m.K = require(*it, "K", path + ".matrix").get<int>();
        m.N = require(*it, "N", path + ".matrix").get<int>();
        m.p_prime = require(*it, "p_prime", path + ".matrix").get<int>();
        const json& rows = require(*it, "rows", path + ".matrix");
        if (!rows.is_array() || int(rows.size()) != m.K)
            throw ConfigError(path + ".matrix.rows: expected " + std::to_string(m.K) + " rows");
        for (const auto& row : rows) {
            if (!row.is_array() || int(row.size()) != m.N)
                throw ConfigError(path + ".matrix.rows: each row needs " +
                                  std::to_string(m.N) + " entries");
            for (const auto& e : row) m.entries.push_back(e.get<int>());
        }
        spec.custom_matrix = std::move(m);
    }
    return spec;
}

json scheme_to_json(const SchemeSpec& spec) {
    json j;
    j["name"] = spec.name;
    j["builder"] = to_string(spec.builder);
    if (spec.L > 0) j["L"] = spec.L;
    j["N"] = spec.N;
    if (spec.scale != 1) j["scale"] = spec.scale;
    j["p_prime"] = spec.p_prime;
    if (spec.custom_path) j["path"] = *spec.custom_path;
    if (spec.custom_matrix) {
        json m;
        m["K"] = spec.custom_matrix->K;
        m["N"] = spec.custom_matrix->N;
        m["p_prime"] = spec.custom_matrix->p_prime;
        json rows = json::array();
        for (int r = 0; r < spec.custom_matrix->K; ++r) {
            json row = json::array();
            for (int c = 0; c < spec.custom_matrix->N; ++c)
                row.push_back(spec.custom_matrix->at(r, c));
            rows.push_back(std::move(row));
        }
        m["rows"] = std::move(rows);
        j["matrix"] = std::move(m);
    }
    return j;
}

}  // namespace

ExperimentConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("config: expected a JSON object");
    ExperimentConfig config;

    const json& frame = require(j, "frame", "config");
    config.frame.L = number_at(frame, "L", "frame");
    config.frame.R = number_at(frame, "R", "frame");
    config.frame.p = int(number_at(frame, "p", "frame"));

    const json& channel = require(j, "channel", "config");
    config.snr_db = number_at(channel, "snr_db", "channel");

    const json& latency = require(j, "latency", "config");
    config.latency.mu1 = number_at(latency, "mu1", "latency");
    config.latency.mu2 = number_at(latency, "mu2", "latency");
    config.latency.a = number_at(latency, "a", "latency");
    config.latency.n = 1;

    const json& schemes = require(j, "schemes", "config");
    if (!schemes.is_array()) throw ConfigError("schemes: expected an array");
    for (std::size_t i = 0; i < schemes.size(); ++i)
        config.schemes.push_back(
            scheme_from_json(schemes[i], "schemes[" + std::to_string(i) + "]"));

    const json& grid = require(j, "time_grid", "config");
    config.time_grid.start = number_at(grid, "start", "time_grid");
    config.time_grid.stop = number_at(grid, "stop", "time_grid");
    config.time_grid.points = int(number_at(grid, "points", "time_grid"));
    if (auto it = grid.find("spacing"); it != grid.end()) {
        const std::string s = it->get<std::string>();
        if (s == "linear") config.time_grid.spacing = TimeGridSpec::Spacing::linear;
        else if (s == "log") config.time_grid.spacing = TimeGridSpec::Spacing::log;
        else throw ConfigError("time_grid.spacing: expected linear | log, got '" + s + "'");
    }

    if (auto it = j.find("mc"); it != j.end() && !it->is_null()) {
        McConfig mc;
        mc.trials = std::uint64_t(number_at(*it, "trials", "mc"));
        mc.seed = std::uint64_t(number_or(*it, "seed", 1));
        mc.noise_dim = int(number_or(*it, "noise_dim", 0));
        if (auto m = it->find("mode"); m != it->end())
            mc.mode = mc_mode_from_string(m->get<std::string>());
        config.mc = mc;
    }

    if (auto it = j.find("output"); it != j.end()) {
        if (auto p = it->find("path"); p != it->end()) config.output.path = p->get<std::string>();
        if (auto f = it->find("format"); f != it->end()) {
            const std::string s = f->get<std::string>();
            if (s == "csv") config.output.format = OutputSpec::Format::csv;
            else if (s == "json") config.output.format = OutputSpec::Format::json;
            else throw ConfigError("output.format: expected csv | json, got '" + s + "'");
        }
    }

    if (auto it = j.find("ldb_threshold_mu"); it != j.end())
        config.ldb_threshold_mu = threshold_mu_from_string(it->get<std::string>());

    config.validate();
    return config;
}

json config_to_json(const ExperimentConfig& config) {
    json j;
    j["frame"] = {{"L", config.frame.L}, {"R", config.frame.R}, {"p", config.frame.p}};
    j["channel"] = {{"snr_db", config.snr_db}};
    j["latency"] = {{"mu1", config.latency.mu1},
                    {"mu2", config.latency.mu2},
                    {"a", config.latency.a}};
    json schemes = json::array();
    for (const auto& s : config.schemes) schemes.push_back(scheme_to_json(s));
    j["schemes"] = std::move(schemes);
    j["time_grid"] = {
        {"start", config.time_grid.start},
        {"stop", config.time_grid.stop},
        {"points", config.time_grid.points},
        {"spacing", config.time_grid.spacing == TimeGridSpec::Spacing::log ? "log" : "linear"}};
    if (config.mc) {
        j["mc"] = {{"trials", config.mc->trials},
                   {"seed", config.mc->seed},
                   {"noise_dim", config.mc->noise_dim},
                   {"mode", to_string(config.mc->mode)}};
    }
    j["output"] = {{"path", config.output.path},
                   {"format", config.output.format == OutputSpec::Format::csv ? "csv" : "json"}};
    j["ldb_threshold_mu"] = to_string(config.ldb_threshold_mu);
    return j;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("config " + path + ": " + e.what());
    }
    return config_from_json(j);
}

}  // namespace nfvsim
