#include "cli/commands.hpp"

#include "cli/config.hpp"
#include "cli/report.hpp"
#include "kconc/alignment.hpp"
#include "kconc/bounds.hpp"
#include "kconc/dataset.hpp"
#include "kconc/error.hpp"
#include "kconc/experiments.hpp"
#include "kconc/kernel.hpp"
#include "kconc/spectral.hpp"
#include "kconc/version.hpp"

#include <CLI11.hpp>

#include <charconv>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <set>

namespace fs = std::filesystem;

namespace kconc::cli {

namespace {

struct Common {
    std::string out = "kconc-out";
    std::string config;
    bool no_svg = false;
    unsigned workers = 1;
};

void add_common(CLI::App* sub, Common& c)
{
    sub->add_option("--out", c.out, "Output directory")->capture_default_str();
    sub->add_option("--config", c.config, "Re-run a saved config.json (explicit flags override it)");
    sub->add_flag("--no-svg", c.no_svg, "Skip SVG plots");
    sub->add_option("--workers", c.workers, "Worker threads (results do not depend on it)")
        ->check(CLI::Range(1u, 1024u))
        ->capture_default_str();
}

bool given(const CLI::App* sub, const std::string& name)
{
    return sub->count(name) > 0;
}

json load_config_for(const std::string& path, const std::string& command)
{
    json j = load_json(path);
    if (j.value("command", std::string()) != command) {
        throw ConfigError("config '" + path + "' is not a " + command + " config");
    }
    return j;
}

std::uint64_t fresh_seed()
{
    std::random_device rd;
    const std::uint64_t seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    std::cout << "seed: " << seed << '\n';
    return seed;
}

/// Writes the result files plus config.json and manifest.json into `dir`.
void emit(const Common& common, const std::string& command, const json& config,
          const std::vector<std::pair<std::string, std::string>>& files,
          const std::vector<std::string>& inputs, std::optional<std::uint64_t> seed)
{
    json input_hashes = json::array();
    for (const auto& path : inputs) {
        input_hashes.push_back(json{{"path", path}, {"sha256", sha256_file(path)}});
    }
    const fs::path dir(common.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw ConfigError("cannot create output directory '" + dir.string() + "': " + ec.message());
    }
    json outputs = json::array();
    for (const auto& [name, content] : files) {
        write_text(dir / name, content);
        outputs.push_back(name);
    }
    write_text(dir / "config.json", dump(config));
    outputs.push_back("config.json");

    json manifest;
    manifest["command"] = command;
    manifest["tool"] = "kconc";
    manifest["version"] = kVersion;
    manifest["seed"] = seed ? json(std::to_string(*seed)) : json(nullptr);
    manifest["config"] = config;
    manifest["inputs"] = input_hashes;
    manifest["outputs"] = outputs;
    write_text(dir / "manifest.json", dump(manifest));
    std::cout << "wrote " << outputs.size() + 1 << " files to " << dir.string() << '\n';
}

// ---------------------------------------------------------------- bounds

struct BoundsFlags {
    BoundsConfig cfg;
    std::string kernel = "gaussian:1";
    std::string scaling = "one_over_n";
};

void add_bounds(CLI::App& app, Common& common, BoundsFlags& f)
{
    auto* sub = app.add_subcommand("bounds", "Evaluate concentration bounds for a data set");
    add_common(sub, common);
    sub->add_option("--data", f.cfg.data, "Sample CSV, one row per sample");
    sub->add_flag("--header", f.cfg.header, "The CSV has a header line");
    sub->add_option("--kernel", f.kernel, "gaussian:SIGMA | linear | polynomial:D:C | custom:NAME:LIP")
        ->capture_default_str();
    sub->add_option("--stat", f.cfg.statistics, "eig:i, topk:k, tail:k or vec:i (repeatable)");
    sub->add_option("--eps", f.cfg.epsilons, "Deviation levels (default: 40-point log grid)");
    sub->add_option("--scaling", f.scaling, "raw | one_over_n")->capture_default_str();
    sub->add_flag("--centered", f.cfg.centered, "Centre samples before computing covariance statistics");
}

int cmd_bounds(const CLI::App* sub, const Common& common, BoundsFlags& f)
{
    BoundsConfig cfg = common.config.empty() ? BoundsConfig{} : bounds_from_json(load_config_for(common.config, "bounds"));
    if (common.config.empty() || given(sub, "--data")) cfg.data = f.cfg.data;
    if (common.config.empty() || given(sub, "--header")) cfg.header = f.cfg.header;
    if (common.config.empty() || given(sub, "--kernel")) cfg.kernel = parse_kernel(f.kernel);
    if (common.config.empty() || given(sub, "--scaling")) cfg.scaling = parse_scaling(f.scaling);
    if (common.config.empty() || given(sub, "--centered")) cfg.centered = f.cfg.centered;
    if (given(sub, "--stat")) cfg.statistics = f.cfg.statistics;
    if (given(sub, "--eps")) cfg.epsilons = f.cfg.epsilons;
    if (cfg.data.empty()) {
        throw ConfigError("bounds needs --data");
    }
    std::vector<Statistic> stats;
    for (const auto& s : cfg.statistics) {
        stats.push_back(parse_statistic(s));
    }
    validate_epsilons(cfg.epsilons);

    const SampleSet sample = load_csv(cfg.data, cfg.header);
    const GramMatrix g = gram(sample, cfg.kernel, cfg.scaling);
    BoundInputs in;
    in.n = sample.n();
    in.spectrum = eig_sym(g, false);
    in.scaling = cfg.scaling;
    in.kind = cfg.kernel.kind();
    in.lipschitz = lipschitz(cfg.kernel, sample);
    in.r_squared = diag_sup(sample, cfg.kernel);
    std::vector<std::string> notes;
    try {
        in.cov = covariance_stats(sample, cfg.centered);
    } catch (const DegenerateError& e) {
        notes.push_back(std::string("covariance-based bounds skipped: ") + e.what());
    }
    if (sample.n() < 3) {
        notes.push_back("theta_top skipped: estimating theta needs n >= 3");
    } else {
        try {
            const double th = theta(g.entries, ThetaMode::drop, common.workers);
            if (th > 0.0) {
                in.theta = th;
                in.theta_estimated = true;
            } else {
                notes.push_back("theta_top skipped: estimated theta is 0");
            }
        } catch (const DegenerateError& e) {
            notes.push_back(std::string("theta_top skipped: ") + e.what());
        }
    }
    BoundReport report = evaluate_bounds(in, stats, cfg.epsilons);
    report.notes.insert(report.notes.end(), notes.begin(), notes.end());

    emit(common, "bounds", to_json(cfg),
         {{"bounds.csv", render_csv(bound_rows(report))},
          {"bounds.json", dump(bounds_summary(report, cfg, sample.n(), sample.p()))}},
         {cfg.data}, std::nullopt);
    for (const auto& note : report.notes) {
        std::cout << "note: " << note << '\n';
    }
    return 0;
}

// ---------------------------------------------------------------- simulate

struct SimulateFlags {
    std::string preset;
    std::string seed;
    std::string label;
    Index trials = 0;
    Index n = 0;
    Index p = 0;
    std::string kernel;
    std::string scaling;
    bool centered = false;
    bool identical = false;
    std::vector<Index> indices;
    std::vector<std::string> statistics;
    std::vector<std::string> bounds;
    std::vector<double> epsilons;
};

void add_simulate(CLI::App& app, Common& common, SimulateFlags& f)
{
    auto* sub = app.add_subcommand("simulate", "Monte Carlo concentration experiments");
    add_common(sub, common);
    std::string names;
    for (const auto& p : experiment_preset_names()) {
        names += (names.empty() ? "" : ", ") + p;
    }
    sub->add_option("--preset", f.preset, "Built-in experiment: " + names);
    sub->add_option("--seed", f.seed, "Master seed (generated and printed when omitted)");
    sub->add_option("--label", f.label, "Run label for inline runs");
    sub->add_option("--trials", f.trials, "Number of trials T")->check(CLI::PositiveNumber);
    sub->add_option("--n", f.n, "Samples per trial")->check(CLI::PositiveNumber);
    sub->add_option("--p", f.p, "Dimension of the Gaussian samples")->check(CLI::PositiveNumber);
    sub->add_option("--kernel", f.kernel, "gaussian:SIGMA | linear | polynomial:D:C | custom:NAME:LIP");
    sub->add_option("--scaling", f.scaling, "raw (statistic lambda_i(G)/n) | one_over_n");
    sub->add_flag("--centered", f.centered, "Centre samples in covariance statistics");
    sub->add_flag("--identical-trials", f.identical, "Reuse one subseed for every trial");
    sub->add_option("--indices", f.indices, "1-based eigenvalue orders or k values");
    sub->add_option("--stat", f.statistics, "eigenvalue | topk_sum | tail_sum | kta (repeatable)");
    sub->add_option("--bounds", f.bounds, "Theorem ids to evaluate (repeatable)");
    sub->add_option("--eps", f.epsilons, "Deviation levels (default: 40-point log grid)");
}

void apply_overrides(const CLI::App* sub, const SimulateFlags& f, ExperimentConfig& c)
{
    if (given(sub, "--trials")) c.trials = f.trials;
    if (given(sub, "--n")) c.n = f.n;
    if (given(sub, "--p")) c.p = f.p;
    if (given(sub, "--kernel")) c.kernel = parse_kernel(f.kernel);
    if (given(sub, "--scaling")) c.scaling = parse_scaling(f.scaling);
    if (given(sub, "--centered")) c.centered = f.centered;
    if (given(sub, "--identical-trials")) c.identical_trials = f.identical;
    if (given(sub, "--indices")) c.indices = f.indices;
    if (given(sub, "--eps")) c.epsilons = f.epsilons;
    if (given(sub, "--stat")) {
        c.statistics.clear();
        for (const auto& s : f.statistics) {
            c.statistics.push_back(parse_experiment_statistic(s));
        }
    }
    if (given(sub, "--bounds")) {
        c.bounds.clear();
        for (const auto& b : f.bounds) {
            c.bounds.push_back(parse_theorem(b));
        }
    }
}

int cmd_simulate(const CLI::App* sub, const Common& common, const SimulateFlags& f)
{
    SimulateConfig sc;
    const bool has_seed = given(sub, "--seed");
    if (!common.config.empty()) {
        if (given(sub, "--preset")) {
            throw ConfigError("--preset cannot be combined with --config");
        }
        sc = simulate_from_json(load_config_for(common.config, "simulate"));
        if (has_seed) {
            sc.seed = parse_seed(f.seed);
            for (auto& run : sc.runs) {
                run.seed = sc.seed;
            }
        }
    } else {
        sc.seed = has_seed ? parse_seed(f.seed) : fresh_seed();
        if (!f.preset.empty()) {
            sc.preset = f.preset;
            sc.runs = experiment_preset(f.preset, sc.seed);
        } else {
            ExperimentConfig run;
            run.label = f.label.empty() ? "simulate" : f.label;
            run.seed = sc.seed;
            sc.runs.push_back(run);
        }
    }
    if (given(sub, "--label")) {
        if (sc.runs.size() != 1) {
            throw ConfigError("--label needs a single-run experiment");
        }
        sc.runs[0].label = f.label;
    }
    std::set<std::string> labels;
    for (auto& run : sc.runs) {
        apply_overrides(sub, f, run);
        run.validate();
        if (!labels.insert(run.label).second || run.label.empty() ||
            run.label.find_first_of("/\\") != std::string::npos) {
            throw ConfigError("run labels must be unique file-name-safe strings ('" + run.label + "')");
        }
    }

    std::vector<std::pair<std::string, std::string>> files;
    for (ExperimentConfig run : sc.runs) {
        run.workers = common.workers;
        const ExperimentResult result = run_concentration(run);
        files.emplace_back(run.label + ".csv", render_csv(experiment_rows(result)));
        files.emplace_back(run.label + ".json", dump(experiment_summary(result)));
        if (!common.no_svg) {
            files.emplace_back(run.label + ".svg", experiment_svg(result));
            const std::string box = boxplot_svg(result);
            if (!box.empty()) {
                files.emplace_back(run.label + "_boxplot.svg", box);
            }
        }
        std::cout << run.label << ": T=" << run.trials << " n=" << run.n << " p=" << run.p << " kernel "
                  << run.kernel.describe() << '\n';
        const BoxplotSummary box = summarize_boxplot(result);
        if (box.orders.size() >= 2) {
            std::cout << "  spearman(mean gap, IQR) = " << format_double(box.spearman_gap_iqr) << '\n';
        }
    }
    emit(common, "simulate", to_json(sc), files, {}, sc.seed);
    return 0;
}

// ---------------------------------------------------------------- align

struct AlignFlags {
    AlignConfig cfg;
    std::string kernel = "gaussian:1";
    std::string scaling = "one_over_n";
    std::string theta_mode = "drop";
};

void add_align(CLI::App& app, Common& common, AlignFlags& f)
{
    auto* sub = app.add_subcommand("align", "Kernel target alignment and its concentration bounds");
    add_common(sub, common);
    sub->add_option("--data", f.cfg.data, "Sample CSV, one row per sample");
    sub->add_flag("--header", f.cfg.header, "The CSV has a header line");
    sub->add_option("--labels", f.cfg.labels, "One-column CSV of +-1 labels");
    sub->add_option("--label-col", f.cfg.label_col, "Label column in the data CSV (name or 0-based index)");
    sub->add_option("--kernel", f.kernel, "gaussian:SIGMA | linear | polynomial:D:C | custom:NAME:LIP")
        ->capture_default_str();
    sub->add_option("--scaling", f.scaling, "raw | one_over_n")->capture_default_str();
    sub->add_option("--theta-mode", f.theta_mode, "drop | zero")->capture_default_str();
    sub->add_option("--eps", f.cfg.epsilons, "Deviation levels (default: 40-point log grid)");
}

Index label_column(const CsvTable& table, const std::string& spec)
{
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        if (table.header[c] == spec) {
            return static_cast<Index>(c);
        }
    }
    Index col = -1;
    const auto [ptr, ec] = std::from_chars(spec.data(), spec.data() + spec.size(), col);
    if (ec != std::errc() || ptr != spec.data() + spec.size() || col < 0 || col >= table.values.cols()) {
        throw DataError("label column '" + spec + "' not found");
    }
    return col;
}

int cmd_align(const CLI::App* sub, const Common& common, AlignFlags& f)
{
    AlignConfig cfg = common.config.empty() ? AlignConfig{} : align_from_json(load_config_for(common.config, "align"));
    const bool fresh = common.config.empty();
    if (fresh || given(sub, "--data")) cfg.data = f.cfg.data;
    if (fresh || given(sub, "--header")) cfg.header = f.cfg.header;
    if (fresh || given(sub, "--labels")) cfg.labels = f.cfg.labels;
    if (fresh || given(sub, "--label-col")) cfg.label_col = f.cfg.label_col;
    if (fresh || given(sub, "--kernel")) cfg.kernel = parse_kernel(f.kernel);
    if (fresh || given(sub, "--scaling")) cfg.scaling = parse_scaling(f.scaling);
    if (fresh || given(sub, "--theta-mode")) cfg.theta_mode = parse_theta_mode(f.theta_mode);
    if (given(sub, "--eps")) cfg.epsilons = f.cfg.epsilons;
    if (cfg.data.empty()) {
        throw ConfigError("align needs --data");
    }
    validate_epsilons(cfg.epsilons);
    if (cfg.labels.empty() && cfg.label_col.empty()) {
        throw DataError("no labels given: use --labels FILE or --label-col COLUMN");
    }
    if (!cfg.labels.empty() && !cfg.label_col.empty()) {
        throw ConfigError("--labels and --label-col are mutually exclusive");
    }

    const CsvTable table = read_csv_table(cfg.data, cfg.header);
    std::vector<std::string> inputs{cfg.data};
    Eigen::MatrixXd features = table.values;
    std::optional<LabelVector> labels;
    if (!cfg.labels.empty()) {
        labels = load_labels(cfg.labels);
        inputs.push_back(cfg.labels);
    } else {
        const Index col = label_column(table, cfg.label_col);
        labels = LabelVector::from_values(table.values.col(col));
        features.resize(table.values.rows(), table.values.cols() - 1);
        for (Index c = 0, k = 0; c < table.values.cols(); ++c) {
            if (c != col) {
                features.col(k++) = table.values.col(c);
            }
        }
    }
    if (features.cols() == 0) {
        throw DataError("no feature columns left after removing the labels");
    }
    const SampleSet sample(std::move(features), Provenance{cfg.data, std::nullopt});
    if (labels->size() != sample.n()) {
        throw DataError("found " + std::to_string(labels->size()) + " labels for " + std::to_string(sample.n()) +
                        " samples");
    }
    const GramMatrix g = gram(sample, cfg.kernel, cfg.scaling);
    const AlignmentReport report = alignment_report(g.entries, *labels, cfg.epsilons, cfg.theta_mode, common.workers);

    emit(common, "align", to_json(cfg),
         {{"align.csv", render_csv(alignment_rows(report))}, {"align.json", dump(alignment_summary(report))}},
         inputs, std::nullopt);
    std::cout << "A(K) = " << format_double(report.a_kn) << '\n';
    for (const auto& note : {report.theta_note, report.l_note}) {
        if (!note.empty()) {
            std::cout << "note: " << note << '\n';
        }
    }
    return 0;
}

// ---------------------------------------------------------------- audit

struct AuditFlags {
    std::string preset = "gaussian-p5";
    std::string seed;
    Index trials = 0;
    Index n = 0;
    Index p = 0;
    double sigma = 1.0;
    bool zero = false;
    bool centered = false;
    std::vector<Index> indices;
};

void add_audit(CLI::App& app, Common& common, AuditFlags& f)
{
    auto* sub = app.add_subcommand("audit", "Replace-one perturbation oracles");
    add_common(sub, common);
    sub->add_option("--preset", f.preset, "gaussian-p5 | gaussian-p2")->capture_default_str();
    sub->add_option("--seed", f.seed, "Master seed (generated and printed when omitted)");
    sub->add_option("--oracle-trials", f.trials, "Trials (>= 100)");
    sub->add_option("--n", f.n, "Samples per trial")->check(CLI::PositiveNumber);
    sub->add_option("--p", f.p, "Dimension")->check(CLI::PositiveNumber);
    sub->add_option("--sigma", f.sigma, "Gaussian kernel bandwidth");
    sub->add_flag("--zero-perturbation", f.zero, "Replace each sample by itself");
    sub->add_flag("--centered", f.centered, "Centre samples in covariance statistics");
    sub->add_option("--indices", f.indices, "1-based eigen-indices for the expansion checks");
}

int cmd_audit(const CLI::App* sub, const Common& common, const AuditFlags& f)
{
    AuditConfig ac;
    if (!common.config.empty()) {
        ac = audit_from_json(load_config_for(common.config, "audit"));
        if (given(sub, "--seed")) ac.oracle.seed = parse_seed(f.seed);
    } else {
        ac.preset = f.preset;
        const std::uint64_t seed = given(sub, "--seed") ? parse_seed(f.seed) : fresh_seed();
        ac.oracle = oracle_preset(f.preset, seed);
    }
    OracleConfig& c = ac.oracle;
    if (given(sub, "--oracle-trials")) c.trials = f.trials;
    if (given(sub, "--n")) c.n = f.n;
    if (given(sub, "--p")) c.p = f.p;
    if (given(sub, "--sigma")) c.sigma = f.sigma;
    if (given(sub, "--zero-perturbation")) c.zero_perturbation = f.zero;
    if (given(sub, "--centered")) c.centered = f.centered;
    if (given(sub, "--indices")) c.indices = f.indices;
    c.validate();

    OracleConfig run = c;
    run.workers = common.workers;
    const auto rows = run_oracles(run);
    emit(common, "audit", to_json(ac),
         {{"audit.csv", audit_csv(rows)}, {"audit.json", dump(audit_summary(rows, c))}}, {}, c.seed);
    for (const auto& r : rows) {
        std::printf("%-30s %6zu trials %6zu violations  max excess %.3g\n", r.inequality.c_str(), r.trials,
                    r.violations, r.max_violation);
    }
    std::fflush(stdout);
    return 0;
}

}  // namespace

int run_cli(int argc, char** argv)
{
    CLI::App app{"kconc: concentration bounds for kernel matrix spectra and alignment"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    Common common;
    BoundsFlags bounds;
    SimulateFlags simulate;
    AlignFlags align;
    AuditFlags audit;
    add_bounds(app, common, bounds);
    add_simulate(app, common, simulate);
    add_align(app, common, align);
    add_audit(app, common, audit);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const CLI::App* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        if (name == "bounds") return cmd_bounds(sub, common, bounds);
        if (name == "simulate") return cmd_simulate(sub, common, simulate);
        if (name == "align") return cmd_align(sub, common, align);
        return cmd_audit(sub, common, audit);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const DegenerateError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

int run_cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "kconc");
    std::vector<char*> argv;
    for (auto& a : args) {
        argv.push_back(a.data());
    }
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace kconc::cli
