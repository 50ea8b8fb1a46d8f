#pragma once

#include "cli/config.hpp"
#include "kconc/alignment.hpp"
#include "kconc/bounds.hpp"
#include "kconc/experiments.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace kconc::cli {

/// printf %.17g, with nan and inf spelled out.
std::string format_double(double v);

/// One line of the `statistic,index,epsilon,theorem,kind,value,stderr,flags` table.
struct CsvRow {
    std::string statistic;
    Index index = 0;
    double epsilon = 0.0;
    std::string theorem;
    std::string kind;
    double value = 0.0;
    std::optional<double> std_error;
    std::string flags;  // ';'-separated
};

std::string render_csv(const std::vector<CsvRow>& rows);

std::vector<CsvRow> bound_rows(const BoundReport& report);
std::vector<CsvRow> experiment_rows(const ExperimentResult& result);
std::vector<CsvRow> alignment_rows(const AlignmentReport& report);

json bounds_summary(const BoundReport& report, const BoundsConfig& cfg, Index n, Index p);
json experiment_summary(const ExperimentResult& result);
json alignment_summary(const AlignmentReport& report);
json audit_summary(const std::vector<OracleRow>& rows, const OracleConfig& cfg);

/// inequality,trials,violations,violation_rate,max_violation
std::string audit_csv(const std::vector<OracleRow>& rows);

/// Line plot of empirical frequencies against mean bound curves.
std::string experiment_svg(const ExperimentResult& result);
/// Boxplot of the eigenvalue series; empty when the run has none.
std::string boxplot_svg(const ExperimentResult& result);

/// Lowercase hex SHA-256 of a file's bytes; DataError when unreadable.
std::string sha256_file(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& content);

/// JSON text with a trailing newline, stable across runs.
std::string dump(const json& j);

}  // namespace kconc::cli
