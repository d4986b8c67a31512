#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracid/identify.hpp"
#include "fracid/problems.hpp"

namespace fracid::cli {

// Bad user input: unreadable files, malformed CSV, invalid configuration.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TermConfig {
    OrderKind kind = OrderKind::Known;
    double order = 0.0;
    std::optional<PowerSeries> coefficient;
    double sign = 1.0;
};

struct ModelConfig {
    std::string example = "example1";  // example1 | example2 | custom
    double nu = 0.3;
    double gamma = 0.5;
    bool rho_unknown = true;

    // custom models only
    FdoType fdo_type = FdoType::TypeI;
    std::vector<TermConfig> terms;
    PowerSeries a0;
    PowerSeries b0;
    std::optional<PowerSeries> kernel;
    std::optional<PowerSeries> gbar_series;
    std::vector<double> gbar_t;
    std::vector<double> gbar_values;
    PowerSeries boundary_trace;
    int d = 0;
    double psi0 = 0.0;
    std::optional<PowerSeries> psi_true;
};

struct SimulateConfig {
    std::string source = "analytic";  // analytic | direct
    double step = 1e-4;
    int count = 21;
    int nx = 64;
    int nt = 512;
};

struct IoConfig {
    int precision = 10;
    int plot_points = 400;
};

struct RunConfig {
    ModelConfig model;
    ReconConfig recon;
    NoiseSpec noise;
    bool noise_shape_explicit = false;
    SimulateConfig simulate;
    IoConfig io;
};

PowerSeries series_from_json(const nlohmann::json& j, const std::string& where);
nlohmann::json series_to_json(const PowerSeries& s);

RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
nlohmann::json to_json(const RunConfig& cfg);

// The model used for identification, and the exact observation when known.
ModelSpec build_model(const RunConfig& cfg);
std::optional<PowerSeries> truth_psi(const RunConfig& cfg);
Problem builtin_problem(const RunConfig& cfg);
NoiseSpec effective_noise(const RunConfig& cfg);

}  // namespace fracid::cli
