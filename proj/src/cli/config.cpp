#include "cli/config.hpp"

#include "kconc/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace kconc::cli {

namespace {

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, sep)) {
        parts.push_back(part);
    }
    if (!text.empty() && text.back() == sep) {
        parts.emplace_back();
    }
    return parts;
}

double parse_number(const std::string& text, const std::string& what)
{
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
        throw ConfigError("invalid " + what + " '" + text + "'");
    }
    return value;
}

int parse_int(const std::string& text, const std::string& what)
{
    int value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        throw ConfigError("invalid " + what + " '" + text + "'");
    }
    return value;
}

template <class T>
T get(const json& j, const char* key, T fallback)
{
    if (!j.contains(key)) {
        return fallback;
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field '") + key + "': " + e.what());
    }
}

std::uint64_t seed_field(const json& j, std::uint64_t fallback)
{
    if (!j.contains("seed")) {
        return fallback;
    }
    const json& s = j.at("seed");
    if (s.is_string()) {
        return parse_seed(s.get<std::string>());
    }
    if (s.is_number_unsigned()) {
        return s.get<std::uint64_t>();
    }
    throw ConfigError("config field 'seed' must be a non-negative integer");
}

std::vector<Index> indices_field(const json& j, const char* key, std::vector<Index> fallback)
{
    if (!j.contains(key)) {
        return fallback;
    }
    std::vector<Index> out;
    for (const auto& v : j.at(key)) {
        if (!v.is_number_integer()) {
            throw ConfigError(std::string("config field '") + key + "' must hold integers");
        }
        out.push_back(v.get<Index>());
    }
    return out;
}

}  // namespace

std::uint64_t parse_seed(const std::string& text)
{
    std::uint64_t value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc() || ptr != end) {
        throw ConfigError("invalid seed '" + text + "'");
    }
    return value;
}

KernelSpec custom_kernel(const std::string& name, double declared_lipschitz)
{
    if (name == "cauchy") {
        return KernelSpec::custom(name, ProfileKind::distance, [](double t) { return 1.0 / (1.0 + t); },
                                  declared_lipschitz);
    }
    if (name == "tanh") {
        return KernelSpec::custom(name, ProfileKind::inner_product, [](double t) { return std::tanh(t); },
                                  declared_lipschitz);
    }
    throw ConfigError("unknown custom kernel '" + name + "' (available: cauchy, tanh)");
}

KernelSpec parse_kernel(const std::string& text)
{
    const auto parts = split(text, ':');
    if (parts.empty()) {
        throw ConfigError("empty kernel description");
    }
    const std::string& family = parts[0];
    if (family == "gaussian" && parts.size() == 2) {
        return KernelSpec::gaussian(parse_number(parts[1], "gaussian bandwidth"));
    }
    if (family == "linear" && parts.size() == 1) {
        return KernelSpec::linear();
    }
    if (family == "polynomial" && parts.size() == 3) {
        return KernelSpec::polynomial(parse_int(parts[1], "polynomial degree"),
                                      parse_number(parts[2], "polynomial offset"));
    }
    if (family == "custom" && parts.size() == 3) {
        return custom_kernel(parts[1], parse_number(parts[2], "declared Lipschitz constant"));
    }
    throw ConfigError("invalid kernel '" + text +
                      "' (expected gaussian:SIGMA, linear, polynomial:DEGREE:OFFSET or custom:NAME:LIPSCHITZ)");
}

json kernel_to_json(const KernelSpec& kernel)
{
    json j;
    switch (kernel.family()) {
    case KernelFamily::gaussian:
        j["family"] = "gaussian";
        j["sigma"] = kernel.sigma();
        break;
    case KernelFamily::linear:
        j["family"] = "linear";
        break;
    case KernelFamily::polynomial:
        j["family"] = "polynomial";
        j["degree"] = kernel.degree();
        j["offset"] = kernel.offset();
        break;
    case KernelFamily::custom:
        j["family"] = "custom";
        j["name"] = kernel.name();
        j["lipschitz"] = kernel.declared_lipschitz().value_or(0.0);
        break;
    }
    return j;
}

KernelSpec kernel_from_json(const json& j)
{
    if (j.is_string()) {
        return parse_kernel(j.get<std::string>());
    }
    if (!j.is_object() || !j.contains("family")) {
        throw ConfigError("kernel must be a string or an object with a 'family' field");
    }
    const auto family = get<std::string>(j, "family", "");
    if (family == "gaussian") {
        return KernelSpec::gaussian(get<double>(j, "sigma", 1.0));
    }
    if (family == "linear") {
        return KernelSpec::linear();
    }
    if (family == "polynomial") {
        return KernelSpec::polynomial(get<int>(j, "degree", 2), get<double>(j, "offset", 1.0));
    }
    if (family == "custom") {
        if (!j.contains("lipschitz")) {
            throw ConfigError("custom kernels must declare 'lipschitz'");
        }
        return custom_kernel(get<std::string>(j, "name", ""), get<double>(j, "lipschitz", 0.0));
    }
    throw ConfigError("unknown kernel family '" + family + "'");
}

json to_json(const BoundsConfig& c)
{
    json j;
    j["command"] = "bounds";
    j["data"] = c.data;
    j["header"] = c.header;
    j["kernel"] = kernel_to_json(c.kernel);
    j["scaling"] = to_string(c.scaling);
    j["centered"] = c.centered;
    j["statistics"] = c.statistics;
    j["epsilons"] = c.epsilons;
    return j;
}

BoundsConfig bounds_from_json(const json& j)
{
    BoundsConfig c;
    c.data = get<std::string>(j, "data", "");
    c.header = get<bool>(j, "header", false);
    if (j.contains("kernel")) {
        c.kernel = kernel_from_json(j.at("kernel"));
    }
    c.scaling = parse_scaling(get<std::string>(j, "scaling", to_string(c.scaling)));
    c.centered = get<bool>(j, "centered", false);
    c.statistics = get<std::vector<std::string>>(j, "statistics", c.statistics);
    c.epsilons = get<std::vector<double>>(j, "epsilons", c.epsilons);
    return c;
}

json to_json(const AlignConfig& c)
{
    json j;
    j["command"] = "align";
    j["data"] = c.data;
    j["header"] = c.header;
    j["labels"] = c.labels;
    j["label_col"] = c.label_col;
    j["kernel"] = kernel_to_json(c.kernel);
    j["scaling"] = to_string(c.scaling);
    j["theta_mode"] = to_string(c.theta_mode);
    j["epsilons"] = c.epsilons;
    return j;
}

AlignConfig align_from_json(const json& j)
{
    AlignConfig c;
    c.data = get<std::string>(j, "data", "");
    c.header = get<bool>(j, "header", false);
    c.labels = get<std::string>(j, "labels", "");
    c.label_col = get<std::string>(j, "label_col", "");
    if (j.contains("kernel")) {
        c.kernel = kernel_from_json(j.at("kernel"));
    }
    c.scaling = parse_scaling(get<std::string>(j, "scaling", to_string(c.scaling)));
    c.theta_mode = parse_theta_mode(get<std::string>(j, "theta_mode", "drop"));
    c.epsilons = get<std::vector<double>>(j, "epsilons", c.epsilons);
    return c;
}

json to_json(const ExperimentConfig& c)
{
    json j;
    j["label"] = c.label;
    j["generator"] = {{"family", c.generator}, {"p", c.p}};
    j["n"] = c.n;
    j["trials"] = c.trials;
    j["seed"] = std::to_string(c.seed);
    j["kernel"] = kernel_to_json(c.kernel);
    j["scaling"] = to_string(c.scaling);
    j["centered"] = c.centered;
    j["epsilons"] = c.epsilons;
    j["indices"] = c.indices;
    json stats = json::array();
    for (auto s : c.statistics) {
        stats.push_back(to_string(s));
    }
    j["statistics"] = stats;
    json bounds = json::array();
    for (auto t : c.bounds) {
        bounds.push_back(theorem_id(t));
    }
    j["bounds"] = bounds;
    j["identical_trials"] = c.identical_trials;
    return j;
}

ExperimentConfig experiment_from_json(const json& j)
{
    ExperimentConfig c;
    c.label = get<std::string>(j, "label", c.label);
    if (j.contains("generator")) {
        const json& g = j.at("generator");
        c.generator = get<std::string>(g, "family", c.generator);
        c.p = get<Index>(g, "p", c.p);
    }
    c.n = get<Index>(j, "n", c.n);
    c.trials = get<Index>(j, "trials", c.trials);
    c.seed = seed_field(j, c.seed);
    if (j.contains("kernel")) {
        c.kernel = kernel_from_json(j.at("kernel"));
    }
    c.scaling = parse_scaling(get<std::string>(j, "scaling", to_string(c.scaling)));
    c.centered = get<bool>(j, "centered", c.centered);
    c.epsilons = get<std::vector<double>>(j, "epsilons", c.epsilons);
    c.indices = indices_field(j, "indices", c.indices);
    if (j.contains("statistics")) {
        c.statistics.clear();
        for (const auto& s : get<std::vector<std::string>>(j, "statistics", {})) {
            c.statistics.push_back(parse_experiment_statistic(s));
        }
    }
    if (j.contains("bounds")) {
        c.bounds.clear();
        for (const auto& b : get<std::vector<std::string>>(j, "bounds", {})) {
            c.bounds.push_back(parse_theorem(b));
        }
    }
    c.identical_trials = get<bool>(j, "identical_trials", c.identical_trials);
    return c;
}

json to_json(const SimulateConfig& c)
{
    json j;
    j["command"] = "simulate";
    j["preset"] = c.preset;
    j["seed"] = std::to_string(c.seed);
    json runs = json::array();
    for (const auto& r : c.runs) {
        runs.push_back(to_json(r));
    }
    j["runs"] = runs;
    return j;
}

SimulateConfig simulate_from_json(const json& j)
{
    SimulateConfig c;
    c.preset = get<std::string>(j, "preset", "");
    c.seed = seed_field(j, 0);
    if (!j.contains("runs") || !j.at("runs").is_array()) {
        throw ConfigError("simulate config needs a 'runs' array");
    }
    for (const auto& r : j.at("runs")) {
        c.runs.push_back(experiment_from_json(r));
    }
    return c;
}

json to_json(const OracleConfig& c)
{
    json j;
    j["n"] = c.n;
    j["p"] = c.p;
    j["sigma"] = c.sigma;
    j["trials"] = c.trials;
    j["seed"] = std::to_string(c.seed);
    j["centered"] = c.centered;
    j["zero_perturbation"] = c.zero_perturbation;
    j["indices"] = c.indices;
    return j;
}

OracleConfig oracle_from_json(const json& j)
{
    OracleConfig c;
    c.n = get<Index>(j, "n", c.n);
    c.p = get<Index>(j, "p", c.p);
    c.sigma = get<double>(j, "sigma", c.sigma);
    c.trials = get<Index>(j, "trials", c.trials);
    c.seed = seed_field(j, c.seed);
    c.centered = get<bool>(j, "centered", c.centered);
    c.zero_perturbation = get<bool>(j, "zero_perturbation", c.zero_perturbation);
    c.indices = indices_field(j, "indices", c.indices);
    return c;
}

json to_json(const AuditConfig& c)
{
    json j;
    j["command"] = "audit";
    j["preset"] = c.preset;
    j["oracle"] = to_json(c.oracle);
    return j;
}

AuditConfig audit_from_json(const json& j)
{
    AuditConfig c;
    c.preset = get<std::string>(j, "preset", "");
    if (j.contains("oracle")) {
        c.oracle = oracle_from_json(j.at("oracle"));
    }
    return c;
}

json load_json(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path.string() + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("config file '" + path.string() + "': " + e.what());
    }
}

}  // namespace kconc::cli
