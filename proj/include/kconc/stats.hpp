#pragma once

#include <span>
#include <vector>

namespace kconc {

/// Type-7 quantile (linear interpolation between order statistics) of an
/// ascending-sorted sample, p in [0, 1].
double quantile_sorted(std::span<const double> sorted, double p);

/// Type-7 quantile of an unsorted sample.
double quantile(std::span<const double> values, double p);

struct FiveNumber {
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;

    double iqr() const { return q3 - q1; }
};

FiveNumber five_number(std::span<const double> values);

double mean(std::span<const double> values);

/// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double stddev(std::span<const double> values);

/// stddev / sqrt(n).
double standard_error(std::span<const double> values);

/// Ranks 1..n with ties sharing their average rank.
std::vector<double> average_ranks(std::span<const double> values);

/// Spearman rank correlation (Pearson correlation of average ranks).
/// Returns 0 when either side is constant.
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace kconc
