#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <set>
#include <tuple>

#include "initpop/benchmarks.hpp"
#include "initpop/errors.hpp"
#include "initpop/experiment.hpp"
#include "initpop/format.hpp"
#include "initpop/initializers.hpp"

namespace initpop {
namespace {

using GroupKey = std::pair<std::string, std::size_t>;  // (algorithm, np)

// Catalog methods first in catalog order, then any others alphabetically.
std::vector<std::string> ordered_methods(const std::set<std::string>& present)
{
    std::vector<std::string> out;
    for (const auto& m : init_catalog()) {
        if (present.contains(m.name)) {
            out.push_back(m.name);
        }
    }
    for (const auto& name : present) {
        if (std::find(out.begin(), out.end(), name) == out.end()) {
            out.push_back(name);
        }
    }
    return out;
}

std::vector<std::string> ordered_functions(const std::set<std::string>& present)
{
    std::vector<std::string> out;
    for (const auto& name : benchmark_names()) {
        if (present.contains(name)) {
            out.push_back(name);
        }
    }
    for (const auto& name : present) {
        if (std::find(out.begin(), out.end(), name) == out.end()) {
            out.push_back(name);
        }
    }
    return out;
}

struct Cell {
    std::vector<const RunRecord*> runs;
};

// (algorithm, np) -> function -> method -> runs
using Grouped = std::map<GroupKey, std::map<std::string, std::map<std::string, Cell>>>;

Grouped group_records(const ResultStore& store)
{
    Grouped g;
    for (const auto& r : store.records) {
        g[{r.algorithm, r.np}][r.function][r.init_method].runs.push_back(&r);
    }
    return g;
}

SummaryStats summarize_cell(const Cell& cell, const std::string& function)
{
    const std::size_t d = cell.runs.front()->best_position.size();
    const auto opt = optimum(function, d);
    std::vector<double> values;
    Matrix positions(cell.runs.size(), d);
    for (std::size_t i = 0; i < cell.runs.size(); ++i) {
        const auto* r = cell.runs[i];
        if (r->best_position.size() != d) {
            throw ShapeError("summary: inconsistent position lengths for " + function);
        }
        values.push_back(r->best_value);
        std::copy(r->best_position.begin(), r->best_position.end(), positions.row(i).begin());
    }
    return summarize_values(values, positions, opt.x);
}

double mean_delta(const Cell& cell)
{
    double total = 0.0;
    for (const auto* r : cell.runs) {
        total += r->initial_delta;
    }
    return total / static_cast<double>(cell.runs.size());
}

std::string group_label(const std::string& alg, std::size_t np)
{
    return alg + " (NP=" + std::to_string(np) + ")";
}

void write_csv_text(std::ostream& out, const std::string& text)
{
    if (text.find_first_of(",\"") == std::string::npos) {
        out << text;
        return;
    }
    out << '"';
    for (char c : text) {
        if (c == '"') {
            out << '"';
        }
        out << c;
    }
    out << '"';
}

// Half-way ranks such as 18.625 round up, the way rank tables are usually printed.
std::string rank_text(double r) { return format_fixed(std::round(r * 100.0) / 100.0, 2); }

}  // namespace

std::vector<CellSummary> summarize_store(const ResultStore& store)
{
    std::vector<CellSummary> out;
    for (const auto& [key, functions] : group_records(store)) {
        std::set<std::string> fn_names;
        for (const auto& [fn, methods] : functions) {
            fn_names.insert(fn);
        }
        for (const auto& fn : ordered_functions(fn_names)) {
            const auto& methods = functions.at(fn);
            std::set<std::string> names;
            for (const auto& [m, cell] : methods) {
                names.insert(m);
            }
            for (const auto& m : ordered_methods(names)) {
                const Cell& cell = methods.at(m);
                out.push_back({key.first, key.second, fn, m, summarize_cell(cell, fn),
                               mean_delta(cell)});
            }
        }
    }
    return out;
}

RankReport build_rank_report(const ResultStore& store, RankOptions options)
{
    if (store.records.empty()) {
        throw ConfigError("rank report: the result store is empty");
    }
    const Grouped grouped = group_records(store);

    std::set<std::string> all_methods;
    std::set<std::string> all_functions;
    for (const auto& r : store.records) {
        all_methods.insert(r.init_method);
        all_functions.insert(r.function);
    }
    RankReport report;
    report.methods = ordered_methods(all_methods);
    const auto functions = ordered_functions(all_functions);
    if (report.methods.size() < 2) {
        throw ConfigError("rank report: at least two init methods are required");
    }

    std::vector<std::string> missing;
    for (const auto& [key, by_fn] : grouped) {
        for (const auto& fn : functions) {
            for (const auto& m : report.methods) {
                const auto f_it = by_fn.find(fn);
                const Cell* cell = nullptr;
                if (f_it != by_fn.end()) {
                    const auto m_it = f_it->second.find(m);
                    if (m_it != f_it->second.end()) {
                        cell = &m_it->second;
                    }
                }
                if (cell == nullptr || cell->runs.size() < 2) {
                    missing.push_back(key.first + "/NP=" + std::to_string(key.second) + "/" + fn +
                                      "/" + m + " (" +
                                      std::to_string(cell ? cell->runs.size() : 0) + " runs)");
                }
            }
        }
    }
    if (!missing.empty()) {
        std::string msg = "rank report: incomplete coverage (need >= 2 runs per cell):";
        for (const auto& m : missing) {
            msg += "\n  " + m;
        }
        throw ConfigError(msg);
    }

    std::vector<std::string> indicators = {"Best", "Mean", "Var", "Dist"};
    if (!options.use_dist) {
        indicators.pop_back();
    }
    const std::size_t k = report.methods.size();

    for (const auto& [key, by_fn] : grouped) {
        AggregateRanking agg;
        agg.algorithm = key.first;
        agg.np = key.second;
        agg.functions = functions;
        Matrix dense_blocks(functions.size(), k);

        for (std::size_t fi = 0; fi < functions.size(); ++fi) {
            const auto& fn = functions[fi];
            Matrix values(indicators.size(), k);
            for (std::size_t m = 0; m < k; ++m) {
                const auto s = summarize_cell(by_fn.at(fn).at(report.methods[m]), fn);
                values(0, m) = s.best;
                values(1, m) = s.mean;
                values(2, m) = s.var;
                if (options.use_dist) {
                    values(3, m) = s.dist;
                }
            }
            FunctionRanking fr;
            fr.algorithm = key.first;
            fr.np = key.second;
            fr.function = fn;
            fr.indicators = indicators;
            fr.block_ranks = rank_rows(values);
            fr.mean_rank = mean_ranks(fr.block_ranks);
            fr.dense = dense_rank(fr.mean_rank);
            fr.friedman = friedman_test(fr.block_ranks, true);
            for (std::size_t m = 0; m < k; ++m) {
                dense_blocks(fi, m) = fr.dense[m];
            }
            report.per_function.push_back(std::move(fr));
        }

        if (functions.size() >= 2) {
            agg.block_ranks = rank_rows(dense_blocks);
            agg.mean_rank = mean_ranks(agg.block_ranks);
            agg.dense = dense_rank(agg.mean_rank);
            agg.friedman = friedman_test(agg.block_ranks, true);
        } else {
            // A single function gives one block; the aggregate is that block.
            agg.block_ranks = rank_rows(dense_blocks);
            agg.mean_rank = mean_ranks(agg.block_ranks);
            agg.dense = dense_rank(agg.mean_rank);
            agg.friedman = FriedmanResult{0.0, 1.0, 1, k};
        }
        report.cross_function.push_back(std::move(agg));
    }
    return report;
}

void write_rank_csv(const RankReport& report, RankScope scope, std::ostream& out)
{
    if (scope == RankScope::PerFunction) {
        out << "algorithm,np,function,method";
        const auto& indicators = report.per_function.empty()
                                     ? std::vector<std::string>{}
                                     : report.per_function.front().indicators;
        for (const auto& ind : indicators) {
            out << ',' << ind;
        }
        out << ",mean_rank,dense_rank\n";
        for (const auto& fr : report.per_function) {
            for (std::size_t m = 0; m < report.methods.size(); ++m) {
                out << fr.algorithm << ',' << fr.np << ',' << fr.function << ',';
                write_csv_text(out, report.methods[m]);
                for (std::size_t b = 0; b < fr.block_ranks.rows(); ++b) {
                    out << ',' << format_double(fr.block_ranks(b, m));
                }
                out << ',' << format_double(fr.mean_rank[m]) << ',' << fr.dense[m] << '\n';
            }
        }
        return;
    }
    out << "algorithm,np,method";
    const auto& functions = report.cross_function.empty()
                                ? std::vector<std::string>{}
                                : report.cross_function.front().functions;
    for (const auto& fn : functions) {
        out << ',' << fn;
    }
    out << ",mean_rank,dense_rank\n";
    for (const auto& agg : report.cross_function) {
        for (std::size_t m = 0; m < report.methods.size(); ++m) {
            out << agg.algorithm << ',' << agg.np << ',';
            write_csv_text(out, report.methods[m]);
            for (std::size_t b = 0; b < agg.block_ranks.rows(); ++b) {
                out << ',' << format_double(agg.block_ranks(b, m));
            }
            out << ',' << format_double(agg.mean_rank[m]) << ',' << agg.dense[m] << '\n';
        }
    }
}

void write_friedman_csv(const RankReport& report, RankScope scope, std::ostream& out)
{
    out << "scope,statistic,df,p_value\n";
    if (scope == RankScope::PerFunction) {
        for (const auto& fr : report.per_function) {
            out << fr.algorithm << '/' << fr.np << '/' << fr.function << ','
                << format_double(fr.friedman.statistic) << ',' << fr.friedman.df() << ','
                << format_double(fr.friedman.p_value) << '\n';
        }
        return;
    }
    for (const auto& agg : report.cross_function) {
        out << agg.algorithm << '/' << agg.np << "/all," << format_double(agg.friedman.statistic)
            << ',' << agg.friedman.df() << ',' << format_double(agg.friedman.p_value) << '\n';
    }
}

void write_rank_markdown(const RankReport& report, RankScope scope, std::ostream& out)
{
    const auto header = [&](const std::string& first) {
        out << "| " << first << " |";
        for (const auto& m : report.methods) {
            out << ' ' << m << " |";
        }
        out << "\n|---|";
        for (std::size_t m = 0; m < report.methods.size(); ++m) {
            out << "---|";
        }
        out << '\n';
    };
    const auto row = [&](const std::string& label, const auto& cells) {
        out << "| " << label << " |";
        for (const auto& c : cells) {
            out << ' ' << c << " |";
        }
        out << '\n';
    };

    if (scope == RankScope::PerFunction) {
        std::string current;
        for (const auto& fr : report.per_function) {
            const auto label = group_label(fr.algorithm, fr.np);
            if (label != current) {
                out << "# Per-function ranks: " << label << "\n\n";
                current = label;
            }
            out << "## " << fr.function << " (Friedman chi2 = " << format_fixed(fr.friedman.statistic, 3)
                << ", df = " << fr.friedman.df() << ", p = " << format_fixed(fr.friedman.p_value, 4)
                << ")\n\n";
            header("Rank");
            for (std::size_t b = 0; b < fr.indicators.size(); ++b) {
                std::vector<std::string> cells;
                for (std::size_t m = 0; m < report.methods.size(); ++m) {
                    cells.push_back(rank_text(fr.block_ranks(b, m)));
                }
                row(fr.indicators[b], cells);
            }
            std::vector<std::string> means;
            std::vector<std::string> dense;
            for (std::size_t m = 0; m < report.methods.size(); ++m) {
                means.push_back(rank_text(fr.mean_rank[m]));
                dense.push_back(std::to_string(fr.dense[m]));
            }
            row("mean", means);
            row("order", dense);
            out << '\n';
        }
        return;
    }

    for (const auto& agg : report.cross_function) {
        out << "# Cross-function ranks: " << group_label(agg.algorithm, agg.np)
            << " (Friedman chi2 = " << format_fixed(agg.friedman.statistic, 3)
            << ", df = " << agg.friedman.df() << ", p = " << format_fixed(agg.friedman.p_value, 4)
            << ")\n\n";
        header("Function");
        for (std::size_t b = 0; b < agg.block_ranks.rows(); ++b) {
            std::vector<std::string> cells;
            for (std::size_t m = 0; m < report.methods.size(); ++m) {
                cells.push_back(rank_text(agg.block_ranks(b, m)));
            }
            row(agg.functions[b], cells);
        }
        std::vector<std::string> means;
        std::vector<std::string> dense;
        for (std::size_t m = 0; m < report.methods.size(); ++m) {
            means.push_back(rank_text(agg.mean_rank[m]));
            dense.push_back(std::to_string(agg.dense[m]));
        }
        row("mean", means);
        row("order", dense);
        out << '\n';
    }
}

std::vector<CorrelationRow> correlation_report(const ResultStore& store, OutlierFilter filter)
{
    std::vector<CorrelationRow> rows;
    for (const auto& [key, by_fn] : group_records(store)) {
        std::set<std::string> fn_names;
        for (const auto& [fn, methods] : by_fn) {
            fn_names.insert(fn);
        }
        for (const auto& fn : ordered_functions(fn_names)) {
            std::vector<double> deltas;
            std::vector<double> dists;
            for (const auto& [method, cell] : by_fn.at(fn)) {
                deltas.push_back(mean_delta(cell));
                dists.push_back(summarize_cell(cell, fn).dist);
            }
            CorrelationRow row;
            row.algorithm = key.first;
            row.np = key.second;
            row.function = fn;
            try {
                row.result = pearson_test(deltas, dists, filter);
            } catch (const StatisticsError&) {
                row.defined = false;
                row.result.n = deltas.size();
                row.result.r = std::nan("");
                row.result.p_value = std::nan("");
            }
            rows.push_back(row);
        }
    }
    return rows;
}

void write_correlation_csv(const std::vector<CorrelationRow>& rows, std::ostream& out)
{
    out << "algorithm,np,function,n,outliers_removed,r,p_value\n";
    for (const auto& row : rows) {
        out << row.algorithm << ',' << row.np << ',' << row.function << ',' << row.result.n << ','
            << row.result.outliers_removed << ',' << format_double(row.result.r) << ','
            << format_double(row.result.p_value) << '\n';
    }
}

void write_summary_csv(const std::vector<CellSummary>& rows, std::ostream& out)
{
    out << "algorithm,np,function,init_method,best,mean,var,dist,mean_initial_delta,runs\n";
    for (const auto& r : rows) {
        out << r.algorithm << ',' << r.np << ',' << r.function << ',';
        write_csv_text(out, r.init_method);
        out << ',' << format_double(r.stats.best) << ',' << format_double(r.stats.mean) << ','
            << format_double(r.stats.var) << ',' << format_double(r.stats.dist) << ','
            << format_double(r.mean_initial_delta) << ',' << r.stats.tn << '\n';
    }
}

void write_summary_markdown(const std::vector<CellSummary>& rows, std::ostream& out)
{
    std::tuple<std::string, std::size_t, std::string> current;
    bool first = true;
    for (const auto& r : rows) {
        const auto key = std::tie(r.algorithm, r.np, r.function);
        if (first || key != current) {
            out << (first ? "" : "\n") << "## " << group_label(r.algorithm, r.np) << ": "
                << r.function << "\n\n"
                << "| Init | Best | Mean | Var | Dist | mean initial distance |\n"
                << "|---|---|---|---|---|---|\n";
            current = key;
            first = false;
        }
        const auto sci = [](double v) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.4g", v);
            return std::string(buf);
        };
        out << "| " << r.init_method << " | " << sci(r.stats.best) << " | " << sci(r.stats.mean)
            << " | " << sci(r.stats.var) << " | " << sci(r.stats.dist) << " | "
            << sci(r.mean_initial_delta) << " |\n";
    }
}

}  // namespace initpop
