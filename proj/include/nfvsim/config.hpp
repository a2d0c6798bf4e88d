// Experiment configuration: parsing, validation and serialization.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nfvsim/bounds.hpp"
#include "nfvsim/schemes.hpp"
#include "nfvsim/simulate.hpp"

namespace nfvsim {

struct TimeGridSpec {
    double start = 1.0;
    double stop = 10.0;
    int points = 2;
    enum class Spacing { linear, log } spacing = Spacing::log;

    std::vector<double> materialize() const;
};

struct OutputSpec {
    std::string path = "out";
    enum class Format { csv, json } format = Format::csv;
};

struct ExperimentConfig {
    FrameParams frame;
    double snr_db = 0.0;
    LatencyParams latency;  // block length is per scheme; the n field is unused here
    std::vector<SchemeSpec> schemes;
    TimeGridSpec time_grid;
    std::optional<McConfig> mc;
    OutputSpec output;
    ThresholdMu ldb_threshold_mu = ThresholdMu::service_rate;

    ChannelParams channel() const;
    void validate() const;  // throws ConfigError with field paths
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig load_config_file(const std::string& path);

}  // namespace nfvsim
