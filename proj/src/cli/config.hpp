#pragma once

#include "kconc/alignment.hpp"
#include "kconc/experiments.hpp"
#include "kconc/kernel.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace kconc::cli {

using json = nlohmann::ordered_json;

/// "gaussian:SIGMA", "linear", "polynomial:DEGREE:OFFSET" or "custom:NAME:LIPSCHITZ".
KernelSpec parse_kernel(const std::string& text);

/// Named custom profiles: cauchy (1 / (1 + t), distance) and tanh (inner product).
KernelSpec custom_kernel(const std::string& name, double declared_lipschitz);

json kernel_to_json(const KernelSpec& kernel);
KernelSpec kernel_from_json(const json& j);

struct BoundsConfig {
    std::string data;
    bool header = false;
    KernelSpec kernel = KernelSpec::gaussian(1.0);
    GramScaling scaling = GramScaling::one_over_n;
    bool centered = false;
    std::vector<std::string> statistics{"eig:1"};
    std::vector<double> epsilons = default_epsilon_grid();
};

struct AlignConfig {
    std::string data;
    bool header = false;
    std::string labels;     // one-column label file, or
    std::string label_col;  // header name or 0-based column index in the data file
    KernelSpec kernel = KernelSpec::gaussian(1.0);
    GramScaling scaling = GramScaling::one_over_n;
    ThetaMode theta_mode = ThetaMode::drop;
    std::vector<double> epsilons = default_epsilon_grid();
};

struct SimulateConfig {
    std::string preset;  // empty for an inline run
    std::uint64_t seed = 0;
    std::vector<ExperimentConfig> runs;
};

struct AuditConfig {
    std::string preset;
    OracleConfig oracle;
};

json to_json(const BoundsConfig& c);
json to_json(const AlignConfig& c);
json to_json(const SimulateConfig& c);
json to_json(const AuditConfig& c);
json to_json(const ExperimentConfig& c);
json to_json(const OracleConfig& c);

BoundsConfig bounds_from_json(const json& j);
AlignConfig align_from_json(const json& j);
SimulateConfig simulate_from_json(const json& j);
AuditConfig audit_from_json(const json& j);
ExperimentConfig experiment_from_json(const json& j);
OracleConfig oracle_from_json(const json& j);

/// Parses a JSON file; ConfigError on I/O or syntax problems.
json load_json(const std::filesystem::path& path);

/// Seeds are stored as decimal strings so 64-bit values survive any JSON reader.
std::uint64_t parse_seed(const std::string& text);

}  // namespace kconc::cli
