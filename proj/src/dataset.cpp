#include "kconc/dataset.hpp"

#include "kconc/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace kconc {

namespace {

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_fields(const std::string& line)
{
    std::vector<std::string> fields;
    if (line.find(',') != std::string::npos) {
        std::string_view rest(line);
        while (true) {
            const auto comma = rest.find(',');
            fields.push_back(trim(rest.substr(0, comma)));
            if (comma == std::string_view::npos) {
                break;
            }
            rest.remove_prefix(comma + 1);
        }
    } else {
        std::istringstream in(line);
        std::string tok;
        while (in >> tok) {
            fields.push_back(tok);
        }
    }
    return fields;
}

double parse_number(const std::string& token, std::size_t line_no)
{
    double value = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    if (!token.empty() && *begin == '+') {
        ++begin;
    }
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (token.empty() || ec != std::errc() || ptr != end) {
        throw DataError("line " + std::to_string(line_no) + ": non-numeric token '" + token + "'");
    }
    if (!std::isfinite(value)) {
        throw DataError("line " + std::to_string(line_no) + ": non-finite value '" + token + "'");
    }
    return value;
}

}  // namespace

SampleSet::SampleSet(Eigen::MatrixXd rows, Provenance provenance)
    : rows_(std::move(rows)), provenance_(std::move(provenance))
{
    if (rows_.rows() < 2) {
        throw DataError("sample set needs n >= 2 rows, got " + std::to_string(rows_.rows()) + " (n < 2)");
    }
    if (rows_.cols() < 1) {
        throw DataError("sample set needs p >= 1 columns");
    }
    if (!rows_.allFinite()) {
        throw DataError("sample set contains non-finite entries");
    }
}

SampleSet SampleSet::with_row(Index index, const Eigen::VectorXd& replacement) const
{
    if (index < 0 || index >= n()) {
        throw ConfigError("row index " + std::to_string(index) + " out of range");
    }
    if (replacement.size() != p()) {
        throw ConfigError("replacement has dimension " + std::to_string(replacement.size()) +
                          ", expected " + std::to_string(p()));
    }
    Eigen::MatrixXd rows = rows_;
    rows.row(index) = replacement.transpose();
    return SampleSet(std::move(rows), provenance_);
}

CsvTable read_csv_table(const std::filesystem::path& path, bool header)
{
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open data file '" + path.string() + "'");
    }
    CsvTable table;
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    bool header_pending = header;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        auto fields = split_fields(line);
        if (header_pending) {
            table.header = std::move(fields);
            header_pending = false;
            continue;
        }
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& f : fields) {
            row.push_back(parse_number(f, line_no));
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw DataError("line " + std::to_string(line_no) + ": expected " +
                            std::to_string(rows.front().size()) + " values, found " +
                            std::to_string(row.size()) + " (ragged rows)");
        }
        rows.push_back(std::move(row));
    }
    const Index n = static_cast<Index>(rows.size());
    const Index c = rows.empty() ? 0 : static_cast<Index>(rows.front().size());
    table.values.resize(n, c);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < c; ++j) {
            table.values(i, j) = rows[i][j];
        }
    }
    return table;
}

SampleSet load_csv(const std::filesystem::path& path, bool header)
{
    auto table = read_csv_table(path, header);
    if (table.values.rows() < 2) {
        throw DataError("'" + path.string() + "': found " + std::to_string(table.values.rows()) +
                        " samples, n < 2");
    }
    return SampleSet(std::move(table.values), Provenance{path.string(), std::nullopt});
}

SampleSet gen_gaussian(Index n, Index p, std::uint64_t seed)
{
    if (n < 2 || p < 1) {
        throw ConfigError("gaussian generator needs n >= 2 and p >= 1");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd rows(n, p);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < p; ++j) {
            rows(i, j) = normal(rng);
        }
    }
    return SampleSet(std::move(rows), Provenance{"gaussian(p=" + std::to_string(p) + ")", seed});
}

double CovarianceStats::whitened_norm(const Eigen::VectorXd& x) const
{
    return (inv_sqrt * (x - mean)).norm();
}

CovarianceStats covariance_stats(const SampleSet& samples, bool centered)
{
    const Index n = samples.n();
    const Index p = samples.p();
    CovarianceStats stats;
    stats.centered = centered;
    stats.mean = centered ? Eigen::VectorXd(samples.rows().colwise().mean().transpose())
                          : Eigen::VectorXd::Zero(p);
    const Eigen::MatrixXd x = samples.rows().rowwise() - stats.mean.transpose();

    Eigen::MatrixXd sigma = (x.transpose() * x) / static_cast<double>(n);
    stats.sigma = 0.5 * (sigma + sigma.transpose());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(stats.sigma);
    if (solver.info() != Eigen::Success) {
        throw DegenerateError("covariance eigendecomposition did not converge");
    }
    stats.eigs_sigma = solver.eigenvalues().reverse();
    const double lambda_1 = stats.eigs_sigma(0);
    const double lambda_p = stats.eigs_sigma(p - 1);
    const double tol = kSingularTolerance * lambda_1;
    if (!(lambda_p > tol)) {
        std::ostringstream msg;
        msg << "singular sample covariance: lambda_p = " << lambda_p << " <= " << tol
            << " (1e-10 * lambda_1)";
        throw DegenerateError(msg.str());
    }
    stats.gap_1p = std::max(0.0, lambda_1 - lambda_p);

    const Eigen::VectorXd inv_root =
        solver.eigenvalues().cwiseMax(tol).cwiseSqrt().cwiseInverse();
    stats.inv_sqrt = solver.eigenvectors() * inv_root.asDiagonal() * solver.eigenvectors().transpose();

    const Eigen::MatrixXd whitened = x * stats.inv_sqrt;
    stats.whitened_radius = whitened.rowwise().norm().maxCoeff();
    return stats;
}

}  // namespace kconc
