#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "initpop/optimizers.hpp"
#include "initpop/stats.hpp"

namespace initpop {

/// One population-size / generation-count setting. An unset T means the run
/// is limited by the FE budget alone.
struct NpT {
    std::size_t np = 0;
    std::optional<std::size_t> t;
};

struct AlgorithmEntry {
    AlgorithmConfig config;     ///< np inside is overridden by each setting
    std::vector<NpT> settings;  ///< at least one
    std::optional<std::size_t> budget_fes;  ///< overrides the plan budget
};

/// The default NP/T for an algorithm: DE-a 100/6000, PSO-w 3000/200,
/// CS 30/10000, ABC 50/budget-limited, GA 3000/100.
NpT default_np_t(Algorithm alg);

struct ExperimentPlan {
    std::uint64_t master_seed = 0;
    std::size_t dimension = 30;
    std::size_t budget_fes = 600000;
    std::size_t runs_per_cell = 20;
    std::vector<AlgorithmEntry> algorithms;
    std::vector<std::string> init_methods;
    std::vector<std::string> functions;

    /// Throws LookupError for unknown names and ConfigError for infeasible
    /// settings. Nothing is run before validation passes.
    void validate() const;

    /// Parses the JSON plan document. Missing keys take their defaults;
    /// "init_methods": "all" and "functions": "basic" expand to the catalogs.
    static ExperimentPlan from_json_text(const std::string& text);
    static ExperimentPlan from_file(const std::filesystem::path& path);

    /// Number of runs the plan executes (one result row each).
    [[nodiscard]] std::size_t run_count() const;

    /// Human-readable summary of every setting, used as a provenance header.
    [[nodiscard]] std::string describe() const;
};

struct RunRecord {
    std::string algorithm;
    std::string init_method;
    std::string function;
    std::size_t np = 0;
    std::size_t t = 0;
    std::size_t run_index = 0;
    std::string lineage;
    double best_value = 0.0;
    std::size_t fe_used = 0;
    double initial_delta = 0.0;
    std::vector<double> best_position;

    bool operator==(const RunRecord&) const = default;
};

struct ResultStore {
    std::vector<RunRecord> records;

    /// Orders records by (algorithm, init_method, function, np, run_index).
    void sort();
    /// Throws ConfigError naming the first duplicated key.
    void check_unique() const;

    bool operator==(const ResultStore&) const = default;
};

/// Executes every (algorithm, setting, init, function, run) once, on up to
/// `parallelism` threads. The result does not depend on the thread count.
ResultStore run_plan(const ExperimentPlan& plan, std::size_t parallelism = 1);

/// Executes a single run of a plan cell with its lineage-derived stream.
RunRecord run_cell(const ExperimentPlan& plan, const AlgorithmEntry& entry, const NpT& setting,
                   const std::string& init_method, const std::string& function,
                   std::size_t run_index);

inline constexpr const char* results_csv_header =
    "algorithm,init_method,function,np,t,run_index,best_value,fe_used,initial_delta,best_position";

/// Writes the store sorted by key; numbers use shortest round-trip text.
void export_csv(const ResultStore& store, std::ostream& out);
void export_csv(const ResultStore& store, const std::filesystem::path& path);

/// Throws ParseError with the line number (and column name when one is missing).
ResultStore import_csv(std::istream& in);
ResultStore import_csv(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Reports

struct CellSummary {
    std::string algorithm;
    std::size_t np = 0;
    std::string function;
    std::string init_method;
    SummaryStats stats;
    double mean_initial_delta = 0.0;
};

/// Summary per (algorithm, np, function, init method), in store order.
std::vector<CellSummary> summarize_store(const ResultStore& store);

struct FunctionRanking {
    std::string algorithm;
    std::size_t np = 0;
    std::string function;
    std::vector<std::string> indicators;
    Matrix block_ranks;  ///< indicators x methods
    std::vector<double> mean_rank;
    std::vector<int> dense;
    FriedmanResult friedman;
};

struct AggregateRanking {
    std::string algorithm;
    std::size_t np = 0;
    std::vector<std::string> functions;
    Matrix block_ranks;  ///< functions x methods, ranks of the per-function dense ranks
    std::vector<double> mean_rank;
    std::vector<int> dense;
    FriedmanResult friedman;
};

struct RankReport {
    std::vector<std::string> methods;
    std::vector<FunctionRanking> per_function;
    std::vector<AggregateRanking> cross_function;
};

enum class RankScope { PerFunction, CrossFunction };

struct RankOptions {
    /// Drop the Dist indicator (three blocks per function instead of four).
    bool use_dist = true;
};

/// Ranks init methods per (algorithm, np, function) over the Best/Mean/Var/Dist
/// blocks, then across functions using the per-function dense ranks as blocks.
/// Every (algorithm, np, function) must cover the same methods with >= 2 runs.
RankReport build_rank_report(const ResultStore& store, RankOptions options = {});

void write_rank_csv(const RankReport& report, RankScope scope, std::ostream& out);
void write_friedman_csv(const RankReport& report, RankScope scope, std::ostream& out);
void write_rank_markdown(const RankReport& report, RankScope scope, std::ostream& out);

struct CorrelationRow {
    std::string algorithm;
    std::size_t np = 0;
    std::string function;
    CorrelationResult result;
    bool defined = true;  ///< false when either sample is constant
};

/// Pearson correlation between mean initial distance and Dist across init
/// methods, one row per (algorithm, np, function).
std::vector<CorrelationRow> correlation_report(const ResultStore& store, OutlierFilter filter);

void write_correlation_csv(const std::vector<CorrelationRow>& rows, std::ostream& out);
void write_summary_csv(const std::vector<CellSummary>& rows, std::ostream& out);
void write_summary_markdown(const std::vector<CellSummary>& rows, std::ostream& out);

}  // namespace initpop
