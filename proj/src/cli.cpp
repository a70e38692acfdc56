#include "initpop/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "initpop/benchmarks.hpp"
#include "initpop/experiment.hpp"
#include "initpop/format.hpp"
#include "initpop/initializers.hpp"

namespace initpop {
namespace {

namespace fs = std::filesystem;

// Writes through a sibling temporary file so a failure never leaves a
// partially written artifact behind.
template <typename Writer>
void write_file(const fs::path& path, Writer&& writer)
{
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) {
            throw std::runtime_error("cannot write " + path.string());
        }
        writer(out);
        out.flush();
        if (!out) {
            throw std::runtime_error("failed while writing " + path.string());
        }
    }
    fs::rename(tmp, path);
}

void ensure_directory(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (!fs::is_directory(dir)) {
        throw std::runtime_error("cannot create directory " + dir.string());
    }
}

void print_catalogs(std::ostream& out, bool functions_only)
{
    if (!functions_only) {
        out << "algorithms:\n";
        for (const auto& id : algorithm_ids()) {
            out << "  " << id << '\n';
        }
        out << "init methods:\n";
        for (const auto& m : init_catalog()) {
            out << "  " << m.name << '\n';
        }
        out << "functions:\n";
    }
    for (const auto& name : benchmark_names()) {
        out << (functions_only ? "" : "  ") << name << '\n';
    }
}

void sample_check(const std::string& name, std::size_t n, std::uint64_t seed, std::ostream& out)
{
    const auto& method = find_init_method(name);
    if (n < 2) {
        throw std::invalid_argument("--n must be at least 2");
    }
    auto stream = derive_stream(seed, {"sample-check", method.name});
    std::vector<double> draws(n);
    if (method.family == InitFamily::LHS) {
        const Matrix unit = lhs_unit_matrix(n, 1, stream);
        std::copy(unit.values().begin(), unit.values().end(), draws.begin());
    } else {
        for (auto& x : draws) {
            x = draw_unclipped(method, stream);
        }
    }
    double mean = 0.0;
    for (double x : draws) {
        mean += x;
    }
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double x : draws) {
        ss += (x - mean) * (x - mean);
    }
    const double var = ss / static_cast<double>(n - 1);
    const auto analytic = analytic_moments(method);
    out << "method: " << method.name << "\nn: " << n << "\nseed: " << seed << '\n'
        << "          empirical     analytic\n";
    char line[128];
    std::snprintf(line, sizeof line, "mean      %-13.6g %-13.6g\n", mean, analytic.mean);
    out << line;
    std::snprintf(line, sizeof line, "variance  %-13.6g %-13.6g\n", var, analytic.variance);
    out << line;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Population initialization study for metaheuristic optimizers", "bench"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "Print the algorithm, init method and function catalogs");
    auto* list_functions = app.add_subcommand("list-functions", "Print the benchmark function names");

    std::string plan_path;
    std::optional<std::uint64_t> seed;
    std::size_t jobs = 1;
    std::string out_path;
    auto* run_cmd = app.add_subcommand("run", "Execute an experiment plan");
    run_cmd->add_option("--plan", plan_path, "JSON plan file")->required();
    run_cmd->add_option("--seed", seed, "Master seed (overrides the plan's seed)");
    run_cmd->add_option("--jobs", jobs, "Number of runs executed in parallel")
        ->check(CLI::PositiveNumber);
    run_cmd->add_option("--out", out_path, "Result CSV")->required();

    std::string in_path;
    std::string scope_text;
    bool without_dist = false;
    auto* rank_cmd = app.add_subcommand("rank", "Rank init methods with Friedman tests");
    rank_cmd->add_option("--in", in_path, "Result CSV")->required();
    rank_cmd->add_option("--scope", scope_text, "per-function or cross-function")
        ->required()
        ->check(CLI::IsMember({"per-function", "cross-function"}));
    rank_cmd->add_option("--out", out_path, "Output directory")->required();
    rank_cmd->add_flag("--without-dist", without_dist, "Rank on Best, Mean and Var only");

    std::string filter_text = "none";
    auto* corr_cmd =
        app.add_subcommand("correlate", "Correlate mean initial distance with Dist per function");
    corr_cmd->add_option("--in", in_path, "Result CSV")->required();
    corr_cmd->add_option("--outlier-filter", filter_text, "none or iqr")
        ->check(CLI::IsMember({"none", "iqr"}));
    corr_cmd->add_option("--out", out_path, "Output CSV")->required();

    auto* report_cmd = app.add_subcommand("report", "Write Best/Mean/Var/Dist summary tables");
    report_cmd->add_option("--in", in_path, "Result CSV")->required();
    report_cmd->add_option("--out", out_path, "Output directory")->required();

    std::string method_name;
    std::size_t sample_n = 100000;
    std::uint64_t sample_seed = 0;
    auto* sample_cmd =
        app.add_subcommand("sample-check", "Compare empirical and analytic sampler moments");
    sample_cmd->add_option("--method", method_name, "Init method name, e.g. Be(3,2)")->required();
    sample_cmd->add_option("--n", sample_n, "Number of draws");
    sample_cmd->add_option("--seed", sample_seed, "Seed for the draws");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (list->parsed()) {
            print_catalogs(out, false);
        } else if (list_functions->parsed()) {
            print_catalogs(out, true);
        } else if (run_cmd->parsed()) {
            auto plan = ExperimentPlan::from_file(plan_path);
            if (seed) {
                plan.master_seed = *seed;
            }
            plan.validate();
            out << plan.describe() << "jobs: " << jobs << '\n';
            const auto store = run_plan(plan, jobs);
            write_file(out_path, [&](std::ostream& f) { export_csv(store, f); });
            out << "wrote " << store.records.size() << " runs to " << out_path << '\n';
        } else if (rank_cmd->parsed()) {
            const auto store = import_csv(fs::path(in_path));
            const auto scope =
                scope_text == "per-function" ? RankScope::PerFunction : RankScope::CrossFunction;
            const auto report = build_rank_report(store, RankOptions{!without_dist});
            const fs::path dir(out_path);
            ensure_directory(dir);
            const std::string stem = scope_text;
            write_file(dir / ("ranks_" + stem + ".csv"),
                       [&](std::ostream& f) { write_rank_csv(report, scope, f); });
            write_file(dir / ("friedman_" + stem + ".csv"),
                       [&](std::ostream& f) { write_friedman_csv(report, scope, f); });
            write_file(dir / ("ranks_" + stem + ".md"),
                       [&](std::ostream& f) { write_rank_markdown(report, scope, f); });
            write_friedman_csv(report, scope, out);
        } else if (corr_cmd->parsed()) {
            const auto store = import_csv(fs::path(in_path));
            const auto rows = correlation_report(
                store, filter_text == "iqr" ? OutlierFilter::Iqr : OutlierFilter::None);
            write_file(out_path, [&](std::ostream& f) { write_correlation_csv(rows, f); });
            write_correlation_csv(rows, out);
        } else if (report_cmd->parsed()) {
            const auto store = import_csv(fs::path(in_path));
            const auto rows = summarize_store(store);
            const fs::path dir(out_path);
            ensure_directory(dir);
            write_file(dir / "summary.csv", [&](std::ostream& f) { write_summary_csv(rows, f); });
            write_file(dir / "summary.md",
                       [&](std::ostream& f) { write_summary_markdown(rows, f); });
            out << "wrote " << rows.size() << " summary rows to " << dir.string() << '\n';
        } else if (sample_cmd->parsed()) {
            sample_check(method_name, sample_n, sample_seed, out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace initpop
