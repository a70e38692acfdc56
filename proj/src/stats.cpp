#include "initpop/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "initpop/errors.hpp"
#include "initpop/optimizers.hpp"
#include "initpop/special.hpp"

namespace initpop {

SummaryStats summarize_values(std::span<const double> best_values, const Matrix& positions,
                              std::span<const double> x_opt)
{
    const std::size_t n = best_values.size();
    if (n < 2) {
        throw std::invalid_argument("summarize: at least two runs are required");
    }
    if (positions.rows() != n || positions.cols() != x_opt.size()) {
        throw ShapeError("summarize: found positions must be " + std::to_string(n) + " x " +
                         std::to_string(x_opt.size()));
    }
    SummaryStats s;
    s.tn = n;
    s.best = *std::min_element(best_values.begin(), best_values.end());
    s.mean = std::accumulate(best_values.begin(), best_values.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (double v : best_values) {
        ss += (v - s.mean) * (v - s.mean);
    }
    s.var = ss / static_cast<double>(n - 1);
    s.dist = initial_mean_distance(positions, x_opt);
    return s;
}

SummaryStats summarize_runs(std::span<const RunResult> results, std::span<const double> x_opt)
{
    if (results.empty()) {
        throw std::invalid_argument("summarize_runs: no results");
    }
    std::vector<double> values;
    Matrix positions(results.size(), x_opt.size());
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        if (r.best_position.size() != x_opt.size()) {
            throw ShapeError("summarize_runs: run " + std::to_string(i) +
                             " has a position of the wrong length");
        }
        values.push_back(r.best_value);
        std::copy(r.best_position.begin(), r.best_position.end(), positions.row(i).begin());
    }
    return summarize_values(values, positions, x_opt);
}

double initial_mean_distance(const Matrix& positions, std::span<const double> x_opt)
{
    if (positions.rows() == 0 || positions.cols() != x_opt.size()) {
        throw ShapeError("initial_mean_distance: population has " +
                         std::to_string(positions.cols()) + " columns, optimum has length " +
                         std::to_string(x_opt.size()));
    }
    double total = 0.0;
    for (std::size_t i = 0; i < positions.rows(); ++i) {
        for (std::size_t j = 0; j < positions.cols(); ++j) {
            total += std::abs(positions(i, j) - x_opt[j]);
        }
    }
    return total / static_cast<double>(positions.rows());
}

std::vector<double> average_ranks(std::span<const double> values, RankDirection direction)
{
    const std::size_t k = values.size();
    for (double v : values) {
        if (std::isnan(v)) {
            throw std::invalid_argument("average_ranks: NaN in input");
        }
    }
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto better = [&](std::size_t a, std::size_t b) {
        return direction == RankDirection::Minimize ? values[a] < values[b]
                                                    : values[a] > values[b];
    };
    std::stable_sort(order.begin(), order.end(), better);

    std::vector<double> ranks(k);
    std::size_t start = 0;
    while (start < k) {
        std::size_t end = start + 1;
        while (end < k && values[order[end]] == values[order[start]]) {
            ++end;
        }
        // Positions start..end-1 hold ranks start+1..end; their mean:
        const double shared = (static_cast<double>(start + 1) + static_cast<double>(end)) / 2.0;
        for (std::size_t p = start; p < end; ++p) {
            ranks[order[p]] = shared;
        }
        start = end;
    }
    return ranks;
}

std::vector<int> dense_rank(std::span<const double> mean_ranks)
{
    std::vector<double> distinct(mean_ranks.begin(), mean_ranks.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<int> out;
    out.reserve(mean_ranks.size());
    for (double v : mean_ranks) {
        const auto it = std::lower_bound(distinct.begin(), distinct.end(), v);
        out.push_back(static_cast<int>(it - distinct.begin()) + 1);
    }
    return out;
}

Matrix rank_rows(const Matrix& data)
{
    Matrix ranks(data.rows(), data.cols());
    for (std::size_t b = 0; b < data.rows(); ++b) {
        const auto r = average_ranks(data.row(b));
        std::copy(r.begin(), r.end(), ranks.row(b).begin());
    }
    return ranks;
}

std::vector<double> mean_ranks(const Matrix& ranks)
{
    std::vector<double> means(ranks.cols(), 0.0);
    for (std::size_t b = 0; b < ranks.rows(); ++b) {
        for (std::size_t j = 0; j < ranks.cols(); ++j) {
            means[j] += ranks(b, j);
        }
    }
    for (double& m : means) {
        m /= static_cast<double>(ranks.rows());
    }
    return means;
}

FriedmanResult friedman_test(const Matrix& data, bool already_ranked)
{
    const std::size_t b = data.rows();
    const std::size_t k = data.cols();
    if (b < 2 || k < 2) {
        throw std::invalid_argument("friedman_test: need at least 2 blocks and 2 treatments");
    }
    const Matrix ranks = already_ranked ? data : rank_rows(data);

    FriedmanResult result;
    result.blocks = b;
    result.treatments = k;

    const auto kd = static_cast<double>(k);
    const auto bd = static_cast<double>(b);
    const auto means = mean_ranks(ranks);
    double spread = 0.0;
    for (double m : means) {
        spread += (m - (kd + 1.0) / 2.0) * (m - (kd + 1.0) / 2.0);
    }
    const double raw = 12.0 * bd / (kd * (kd + 1.0)) * spread;

    // Tie groups are read off the ranks: equal ranks within a row are ties.
    double tie_sum = 0.0;
    for (std::size_t r = 0; r < b; ++r) {
        std::vector<double> row(ranks.row(r).begin(), ranks.row(r).end());
        std::sort(row.begin(), row.end());
        std::size_t start = 0;
        while (start < k) {
            std::size_t end = start + 1;
            while (end < k && row[end] == row[start]) {
                ++end;
            }
            const auto t = static_cast<double>(end - start);
            tie_sum += t * t * t - t;
            start = end;
        }
    }
    const double correction = 1.0 - tie_sum / (bd * kd * (kd * kd - 1.0));
    if (correction <= 1e-12) {
        // Every block fully tied: no evidence against equal effects.
        result.statistic = 0.0;
        result.p_value = 1.0;
        return result;
    }
    result.statistic = std::max(0.0, raw / correction);
    result.p_value = special::chi2_sf(result.statistic, kd - 1.0);
    return result;
}

double quantile(std::vector<double> values, double q)
{
    if (values.empty()) {
        throw std::invalid_argument("quantile: empty sample");
    }
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

CorrelationResult pearson_test(std::span<const double> x, std::span<const double> y,
                               OutlierFilter filter)
{
    if (x.size() != y.size()) {
        throw ShapeError("pearson_test: x and y differ in length");
    }
    std::vector<double> xs(x.begin(), x.end());
    std::vector<double> ys(y.begin(), y.end());
    CorrelationResult result;
    if (filter == OutlierFilter::Iqr && xs.size() >= 4) {
        const auto fences = [](const std::vector<double>& v) {
            const double q1 = quantile(v, 0.25);
            const double q3 = quantile(v, 0.75);
            const double iqr = q3 - q1;
            return std::pair{q1 - 3.0 * iqr, q3 + 3.0 * iqr};
        };
        const auto [xlo, xhi] = fences(xs);
        const auto [ylo, yhi] = fences(ys);
        std::vector<double> fx;
        std::vector<double> fy;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (xs[i] >= xlo && xs[i] <= xhi && ys[i] >= ylo && ys[i] <= yhi) {
                fx.push_back(xs[i]);
                fy.push_back(ys[i]);
            }
        }
        result.outliers_removed = xs.size() - fx.size();
        xs = std::move(fx);
        ys = std::move(fy);
    }
    const std::size_t n = xs.size();
    if (n < 3) {
        throw std::invalid_argument("pearson_test: need at least 3 points after filtering");
    }
    result.n = n;
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(n);
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(n);
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (!(sxx > 0.0) || !(syy > 0.0)) {
        throw StatisticsError("pearson_test: correlation undefined for a constant sample");
    }
    result.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    const double df = static_cast<double>(n - 2);
    const double one_minus = 1.0 - result.r * result.r;
    if (one_minus <= 0.0) {
        result.p_value = 0.0;
    } else {
        const double t = result.r * std::sqrt(df / one_minus);
        result.p_value = special::student_t_two_sided(t, df);
    }
    return result;
}

}  // namespace initpop
