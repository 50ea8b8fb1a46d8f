#include "cli/report.hpp"

#include "kconc/error.hpp"
#include "kconc/svg.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <memory>

namespace kconc::cli {

namespace {

json number_or_null(double v)
{
    return std::isfinite(v) ? json(v) : json(nullptr);
}

json numbers(const std::vector<double>& values)
{
    json out = json::array();
    for (double v : values) {
        out.push_back(number_or_null(v));
    }
    return out;
}

std::string join_flags(const std::vector<std::string>& flags)
{
    std::string out;
    for (const auto& f : flags) {
        if (!out.empty()) {
            out += ';';
        }
        out += f;
    }
    return out;
}

json box_json(const FiveNumber& b)
{
    return json{{"min", b.min}, {"q1", b.q1}, {"median", b.median}, {"q3", b.q3}, {"max", b.max}, {"iqr", b.iqr()}};
}

}  // namespace

std::string format_double(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string render_csv(const std::vector<CsvRow>& rows)
{
    std::string out = "statistic,index,epsilon,theorem,kind,value,stderr,flags\n";
    for (const auto& r : rows) {
        out += r.statistic + ',' + std::to_string(r.index) + ',' + format_double(r.epsilon) + ',' + r.theorem +
               ',' + r.kind + ',' + format_double(r.value) + ',' +
               (r.std_error ? format_double(*r.std_error) : std::string()) + ',' + r.flags + '\n';
    }
    return out;
}

std::vector<CsvRow> bound_rows(const BoundReport& report)
{
    std::vector<CsvRow> rows;
    for (const auto& e : report.entries) {
        const std::string tag = to_string(e.statistic);
        CsvRow row;
        row.statistic = tag.substr(0, tag.find(':'));
        row.index = e.statistic.order;
        row.epsilon = e.epsilon;
        row.theorem = e.theorem;
        row.kind = "bound";
        row.value = e.raw;
        row.flags = e.vacuous() ? "vacuous" : "";
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<CsvRow> experiment_rows(const ExperimentResult& result)
{
    std::vector<CsvRow> rows;
    const auto& eps = result.config.epsilons;
    for (const auto& series : result.series) {
        for (std::size_t e = 0; e < eps.size(); ++e) {
            rows.push_back(CsvRow{series.name(), series.order, eps[e], "empirical", "empirical_freq",
                                  series.empirical_freq[e], series.freq_stderr[e], ""});
        }
        for (const auto& curve : series.curves) {
            std::vector<std::string> base_flags;
            if (curve.flagged > 0) {
                base_flags.push_back("flagged=" + std::to_string(curve.flagged));
            }
            const std::string id = theorem_id(curve.theorem);
            for (std::size_t e = 0; e < eps.size(); ++e) {
                auto flags = base_flags;
                if (curve.mean[e] >= 1.0) {
                    flags.push_back("vacuous");
                }
                rows.push_back(CsvRow{series.name(), series.order, eps[e], id, "bound_mean", curve.mean[e],
                                      curve.std_error[e], join_flags(flags)});
            }
            for (std::size_t e = 0; e < eps.size(); ++e) {
                auto flags = base_flags;
                if (curve.p10[e] >= 1.0) {
                    flags.push_back("vacuous");
                }
                rows.push_back(CsvRow{series.name(), series.order, eps[e], id, "bound_p10", curve.p10[e],
                                      std::nullopt, join_flags(flags)});
            }
        }
    }
    return rows;
}

std::vector<CsvRow> alignment_rows(const AlignmentReport& report)
{
    std::vector<CsvRow> rows;
    auto add = [&](double eps, const char* theorem, const std::optional<double>& value) {
        if (value) {
            rows.push_back(CsvRow{"kta", 0, eps, theorem, "bound", *value, std::nullopt,
                                  *value >= 1.0 ? "vacuous" : ""});
        }
    };
    for (const auto& e : report.entries) {
        add(e.epsilon, "kta_jl", e.jl);
        add(e.epsilon, "kta_new", e.new_printed);
        add(e.epsilon, "kta_new_bdiff", e.new_bdiff);
        add(e.epsilon, "kta_new_approx", e.new_printed_approx);
        add(e.epsilon, "kta_new_bdiff_approx", e.new_bdiff_approx);
    }
    return rows;
}

json bounds_summary(const BoundReport& report, const BoundsConfig& cfg, Index n, Index p)
{
    json j;
    j["n"] = n;
    j["p"] = p;
    j["kernel"] = cfg.kernel.describe();
    j["scaling"] = to_string(cfg.scaling);
    j["centered"] = cfg.centered;
    json meta = json::object();
    for (const auto& [key, value] : report.metadata) {
        meta[key] = number_or_null(value);
    }
    j["inputs"] = meta;
    json entries = json::array();
    for (const auto& e : report.entries) {
        entries.push_back(json{{"statistic", to_string(e.statistic)},
                               {"epsilon", e.epsilon},
                               {"theorem", e.theorem},
                               {"raw", number_or_null(e.raw)},
                               {"clipped", number_or_null(e.clipped())},
                               {"vacuous", e.vacuous()}});
    }
    j["entries"] = entries;
    j["notes"] = report.notes;
    return j;
}

json experiment_summary(const ExperimentResult& result)
{
    const auto& cfg = result.config;
    json j;
    j["config"] = to_json(cfg);
    j["statistic_convention"] = cfg.scaling == GramScaling::raw ? "lambda_i(G)/n with G the unscaled Gram matrix"
                                                                : "lambda_i(G/n)/n with G the unscaled Gram matrix";
    j["epsilon_grid"] = cfg.epsilons;
    json seeds = json::array();
    for (auto s : result.subseeds) {
        seeds.push_back(std::to_string(s));
    }
    j["subseeds"] = seeds;
    json series = json::array();
    for (const auto& s : result.series) {
        json item;
        item["statistic"] = s.name();
        item["index"] = s.order;
        item["mc_mean"] = s.mc_mean;
        item["mc_stderr"] = s.mc_stderr;
        item["box"] = box_json(s.box);
        if (s.statistic == ExperimentStatistic::eigenvalue) {
            item["mean_gap"] = number_or_null(s.mean_gap);
        }
        item["empirical_freq"] = numbers(s.empirical_freq);
        json curves = json::array();
        for (const auto& c : s.curves) {
            curves.push_back(json{{"theorem", theorem_id(c.theorem)},
                                  {"eps_factor", c.eps_factor},
                                  {"flagged_trials", c.flagged},
                                  {"mean", numbers(c.mean)},
                                  {"p10", numbers(c.p10)},
                                  {"stderr", numbers(c.std_error)}});
        }
        item["bounds"] = curves;
        series.push_back(std::move(item));
    }
    j["series"] = series;
    const BoxplotSummary box = summarize_boxplot(result);
    if (box.orders.size() >= 2) {
        j["spearman_gap_iqr"] = box.spearman_gap_iqr;
    }
    return j;
}

json alignment_summary(const AlignmentReport& r)
{
    json j;
    j["n"] = r.n;
    j["alignment"] = r.a_kn;
    j["frobenius_norm"] = r.frob;
    j["middle_eigen_norm"] = r.l;
    j["ratio"] = number_or_null(r.ratio);
    j["ratio_approx"] = number_or_null(r.ratio_approx);
    j["theta"] = r.theta ? json(*r.theta) : json(nullptr);
    j["c_theta"] = r.c_theta ? json(*r.c_theta) : json(nullptr);
    if (!r.theta_note.empty()) {
        j["theta_note"] = r.theta_note;
    }
    j["m"] = r.m;
    if (!r.l_note.empty()) {
        j["l_note"] = r.l_note;
    }
    auto opt = [](const std::optional<double>& v) { return v ? number_or_null(*v) : json(nullptr); };
    j["d_exact"] = opt(r.d_exact);
    j["d_approx"] = opt(r.d_approx);
    json entries = json::array();
    for (const auto& e : r.entries) {
        entries.push_back(json{{"epsilon", e.epsilon},
                               {"kta_jl", opt(e.jl)},
                               {"kta_new", opt(e.new_printed)},
                               {"kta_new_bdiff", opt(e.new_bdiff)},
                               {"kta_new_approx", opt(e.new_printed_approx)},
                               {"kta_new_bdiff_approx", opt(e.new_bdiff_approx)}});
    }
    j["entries"] = entries;
    return j;
}

json audit_summary(const std::vector<OracleRow>& rows, const OracleConfig& cfg)
{
    json j;
    j["config"] = to_json(cfg);
    json table = json::array();
    for (const auto& r : rows) {
        const double rate = r.trials ? static_cast<double>(r.violations) / static_cast<double>(r.trials) : 0.0;
        table.push_back(json{{"inequality", r.inequality},
                             {"trials", r.trials},
                             {"violations", r.violations},
                             {"violation_rate", rate},
                             {"max_violation", r.max_violation}});
    }
    j["rows"] = table;
    j["notes"] = json::array(
        {"error_norm_printed uses lambda_1(Sigma) - lambda_p(Sigma) as printed; this factor vanishes for an "
         "isotropic covariance, so the printed form cannot bound |E| in general",
         "error_norm_conservative uses lambda_1(Sigma) with twice the printed constant",
         "M is the largest whitened norm over the sample and the replacement point"});
    return j;
}

std::string audit_csv(const std::vector<OracleRow>& rows)
{
    std::string out = "inequality,trials,violations,violation_rate,max_violation\n";
    for (const auto& r : rows) {
        const double rate = r.trials ? static_cast<double>(r.violations) / static_cast<double>(r.trials) : 0.0;
        out += r.inequality + ',' + std::to_string(r.trials) + ',' + std::to_string(r.violations) + ',' +
               format_double(rate) + ',' + format_double(r.max_violation) + '\n';
    }
    return out;
}

std::string experiment_svg(const ExperimentResult& result)
{
    svg::LinePlot plot;
    plot.title = result.config.label + ": deviation frequency vs. mean bound";
    plot.x_label = "epsilon";
    plot.y_label = "probability";
    const auto& eps = result.config.epsilons;
    static const char* dashes[] = {"6,3", "2,3", "8,3,2,3", "1,2", "10,4"};
    for (std::size_t s = 0; s < result.series.size(); ++s) {
        const auto& series = result.series[s];
        const std::string tag = series.name() + (series.order > 0 ? " " + std::to_string(series.order) : "");
        svg::LineSeries freq{tag + " empirical", eps, series.empirical_freq, svg::palette(s), ""};
        plot.series.push_back(std::move(freq));
        for (std::size_t c = 0; c < series.curves.size(); ++c) {
            const auto& curve = series.curves[c];
            plot.series.push_back(svg::LineSeries{tag + " " + theorem_id(curve.theorem), eps, curve.mean,
                                                  svg::palette(s), dashes[c % 5]});
        }
    }
    return svg::render(plot);
}

std::string boxplot_svg(const ExperimentResult& result)
{
    svg::BoxPlot plot;
    plot.title = result.config.label + ": eigenvalue spread";
    plot.x_label = "eigenvalue index";
    plot.y_label = "lambda_i / n";
    for (const auto& s : result.series) {
        if (s.statistic == ExperimentStatistic::eigenvalue) {
            plot.labels.push_back(std::to_string(s.order));
            plot.boxes.push_back(s.box);
        }
    }
    if (plot.boxes.empty()) {
        return {};
    }
    return svg::render(plot);
}

std::string sha256_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot read '" + path.string() + "'");
    }
    const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), digest, &length) != 1) {
        throw Error("SHA-256 computation failed");
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < length; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xF];
    }
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot write '" + path.string() + "'");
    }
    out << content;
    if (!out) {
        throw ConfigError("failed writing '" + path.string() + "'");
    }
}

std::string dump(const json& j)
{
    return j.dump(2) + "\n";
}

}  // namespace kconc::cli
