#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "initpop/matrix.hpp"

namespace initpop {

struct RunResult;

/// Best / Mean / Var / Dist over repeated runs of one configuration.
struct SummaryStats {
    double best = 0.0;
    double mean = 0.0;
    double var = 0.0;   ///< sample variance (n - 1 denominator)
    double dist = 0.0;  ///< mean L1 distance of the found solutions from x_opt
    std::size_t tn = 0;
};

SummaryStats summarize_runs(std::span<const RunResult> results, std::span<const double> x_opt);

/// Same summary from raw values; positions are row-wise found solutions.
SummaryStats summarize_values(std::span<const double> best_values, const Matrix& positions,
                              std::span<const double> x_opt);

/// Mean over rows of the L1 distance between each row and x_opt.
double initial_mean_distance(const Matrix& positions, std::span<const double> x_opt);

enum class RankDirection { Minimize, Maximize };

/// Ranks 1..k with the best value ranked 1; tied values share the mean of the
/// ranks they span.
std::vector<double> average_ranks(std::span<const double> values,
                                  RankDirection direction = RankDirection::Minimize);

/// Distinct sorted values map to 1, 2, 3, ...; equal values share an output.
std::vector<int> dense_rank(std::span<const double> mean_ranks);

struct FriedmanResult {
    double statistic = 0.0;
    double p_value = 1.0;
    std::size_t blocks = 0;
    std::size_t treatments = 0;
    [[nodiscard]] std::size_t df() const noexcept { return treatments - 1; }
};

/// Tie-corrected Friedman chi-square over a blocks x treatments matrix.
/// Rows are ranked (smaller is better) unless `already_ranked` is set.
FriedmanResult friedman_test(const Matrix& data, bool already_ranked = false);

/// Column means of the within-row ranks.
std::vector<double> mean_ranks(const Matrix& ranks);

/// Rank every row of `data` (smaller is better).
Matrix rank_rows(const Matrix& data);

enum class OutlierFilter { None, Iqr };

struct CorrelationResult {
    double r = 0.0;
    double p_value = 1.0;
    std::size_t n = 0;
    std::size_t outliers_removed = 0;
};

/// Pearson correlation with a two-sided t-test p-value. The IQR filter drops
/// points whose x or y lies more than 3 IQR outside the quartiles.
CorrelationResult pearson_test(std::span<const double> x, std::span<const double> y,
                               OutlierFilter filter = OutlierFilter::None);

/// Linear-interpolation quantile (type 7) of a sample.
double quantile(std::vector<double> values, double q);

}  // namespace initpop
