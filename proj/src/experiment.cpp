#include "initpop/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "initpop/benchmarks.hpp"
#include "initpop/errors.hpp"
#include "initpop/format.hpp"
#include "initpop/initializers.hpp"

namespace initpop {
namespace {

using nlohmann::json;

DeStrategy parse_strategy(const std::string& name)
{
    for (auto s : {DeStrategy::Rand1, DeStrategy::Best1, DeStrategy::CurrentToBest1,
                   DeStrategy::Best2, DeStrategy::Rand2}) {
        if (strategy_name(s) == name) {
            return s;
        }
    }
    throw LookupError("unknown DE strategy: " + name);
}

template <typename T>
void read_key(const json& obj, const char* key, T& out)
{
    if (obj.contains(key)) {
        out = obj.at(key).get<T>();
    }
}

template <typename T>
void read_key(const json& obj, const char* key, std::optional<T>& out)
{
    if (obj.contains(key) && !obj.at(key).is_null()) {
        out = obj.at(key).get<T>();
    }
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where)
{
    for (const auto& [key, value] : obj.items()) {
        if (std::find_if(allowed.begin(), allowed.end(),
                         [&](const char* a) { return key == a; }) == allowed.end()) {
            throw ParseError(where + ": unknown key '" + key + "'");
        }
    }
}

std::vector<NpT> parse_settings(const json& value, const std::string& where)
{
    std::vector<NpT> out;
    for (const auto& pair : value) {
        if (!pair.is_array() || pair.empty() || pair.size() > 2) {
            throw ParseError(where + ": each setting must be [np] or [np, t]");
        }
        NpT s;
        s.np = pair.at(0).get<std::size_t>();
        if (pair.size() == 2 && !pair.at(1).is_null()) {
            s.t = pair.at(1).get<std::size_t>();
        }
        out.push_back(s);
    }
    return out;
}

AlgorithmEntry parse_algorithm_entry(const json& item)
{
    if (item.is_string()) {
        const Algorithm alg = parse_algorithm(item.get<std::string>());
        return {default_config(alg), {default_np_t(alg)}, std::nullopt};
    }
    if (!item.is_object() || !item.contains("id")) {
        throw ParseError("algorithms: each entry must be an id or an object with an \"id\"");
    }
    const auto id = item.at("id").get<std::string>();
    const Algorithm alg = parse_algorithm(id);
    AlgorithmEntry entry{default_config(alg), {default_np_t(alg)}, std::nullopt};
    const std::string where = "algorithm " + id;

    std::optional<std::size_t> np;
    std::optional<std::size_t> t;
    read_key(item, "np", np);
    read_key(item, "t", t);
    if (item.contains("budget_fes")) {
        entry.budget_fes = item.at("budget_fes").get<std::size_t>();
    }

    switch (alg) {
    case Algorithm::DEa: {
        reject_unknown_keys(item, {"id", "np", "t", "np_t", "budget_fes", "cr_pool", "f_pool",
                                   "strategy_pool"},
                            where);
        auto& c = std::get<DEaConfig>(entry.config);
        read_key(item, "cr_pool", c.cr_pool);
        read_key(item, "f_pool", c.f_pool);
        if (item.contains("strategy_pool")) {
            c.strategy_pool.clear();
            for (const auto& s : item.at("strategy_pool")) {
                c.strategy_pool.push_back(parse_strategy(s.get<std::string>()));
            }
        }
        break;
    }
    case Algorithm::PSOw: {
        reject_unknown_keys(item, {"id", "np", "t", "np_t", "budget_fes", "c1", "c2", "w",
                                   "w_mode", "w_max", "w_min", "per_dimension_r",
                                   "velocity_clamp"},
                            where);
        auto& c = std::get<PSOwConfig>(entry.config);
        read_key(item, "c1", c.c1);
        read_key(item, "c2", c.c2);
        read_key(item, "w", c.w);
        read_key(item, "w_max", c.w_max);
        read_key(item, "w_min", c.w_min);
        read_key(item, "per_dimension_r", c.per_dimension_r);
        read_key(item, "velocity_clamp", c.velocity_clamp);
        if (item.contains("w_mode")) {
            const auto mode = item.at("w_mode").get<std::string>();
            if (mode == "fixed") {
                c.inertia_mode = InertiaMode::Fixed;
            } else if (mode == "linear") {
                c.inertia_mode = InertiaMode::Linear;
            } else {
                throw ParseError(where + ": w_mode must be \"fixed\" or \"linear\"");
            }
        }
        break;
    }
    case Algorithm::CS: {
        reject_unknown_keys(item, {"id", "np", "t", "np_t", "budget_fes", "pa", "levy_lambda",
                                   "alpha"},
                            where);
        auto& c = std::get<CSConfig>(entry.config);
        read_key(item, "pa", c.pa);
        read_key(item, "levy_lambda", c.levy_lambda);
        read_key(item, "alpha", c.alpha);
        break;
    }
    case Algorithm::ABC: {
        reject_unknown_keys(item, {"id", "np", "t", "np_t", "budget_fes", "limit"}, where);
        auto& c = std::get<ABCConfig>(entry.config);
        read_key(item, "limit", c.limit);
        break;
    }
    case Algorithm::GA: {
        reject_unknown_keys(item, {"id", "np", "t", "np_t", "budget_fes", "mutation_prob",
                                   "tournament_size"},
                            where);
        auto& c = std::get<GAConfig>(entry.config);
        read_key(item, "mutation_prob", c.mutation_prob);
        read_key(item, "tournament_size", c.tournament_size);
        break;
    }
    }

    if (item.contains("np_t")) {
        if (np || t) {
            throw ParseError(where + ": give either np/t or np_t, not both");
        }
        entry.settings = parse_settings(item.at("np_t"), where);
    } else if (np || t) {
        // Overriding either half drops the default T: an unpaired NP is budget-limited.
        NpT s = default_np_t(alg);
        s.np = np.value_or(s.np);
        s.t = t;
        entry.settings = {s};
    }
    return entry;
}

AlgorithmConfig with_np(AlgorithmConfig cfg, std::size_t np)
{
    std::visit([np](auto& c) { c.np = np; }, cfg);
    return cfg;
}

}  // namespace

NpT default_np_t(Algorithm alg)
{
    switch (alg) {
    case Algorithm::DEa:
        return {100, 6000};
    case Algorithm::PSOw:
        return {3000, 200};
    case Algorithm::CS:
        return {30, 10000};
    case Algorithm::ABC:
        return {50, std::nullopt};
    case Algorithm::GA:
        return {3000, 100};
    }
    return {};
}

void ExperimentPlan::validate() const
{
    if (dimension == 0) {
        throw ConfigError("plan: dimension must be positive");
    }
    if (runs_per_cell == 0) {
        throw ConfigError("plan: runs must be positive");
    }
    if (algorithms.empty() || init_methods.empty() || functions.empty()) {
        throw ConfigError("plan: algorithms, init_methods and functions must be non-empty");
    }
    for (const auto& name : init_methods) {
        (void)find_init_method(name);
    }
    for (const auto& name : functions) {
        (void)make_benchmark(name, dimension);
    }
    std::set<std::pair<std::string, std::size_t>> seen;
    for (const auto& entry : algorithms) {
        const Algorithm alg = algorithm_of(entry.config);
        const std::string id(algorithm_id(alg));
        const std::size_t budget = entry.budget_fes.value_or(budget_fes);
        if (entry.settings.empty()) {
            throw ConfigError("plan: " + id + " has no NP/T setting");
        }
        for (const auto& s : entry.settings) {
            std::visit([](const auto& c) { c.validate(); }, with_np(entry.config, s.np));
            if (!seen.emplace(id, s.np).second) {
                throw ConfigError("plan: " + id + " lists NP=" + std::to_string(s.np) + " twice");
            }
            if (budget < s.np) {
                throw ConfigError("plan: " + id + " budget " + std::to_string(budget) +
                                  " is below NP=" + std::to_string(s.np));
            }
            if (s.t) {
                const double needed = static_cast<double>(s.np) * static_cast<double>(*s.t) *
                                      fes_per_individual(alg);
                if (needed > static_cast<double>(budget)) {
                    throw ConfigError("plan: " + id + " NP=" + std::to_string(s.np) +
                                      ", T=" + std::to_string(*s.t) + " needs " +
                                      format_double(needed) + " FEs, budget is " +
                                      std::to_string(budget));
                }
            }
        }
    }
}

ExperimentPlan ExperimentPlan::from_json_text(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("plan: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError("plan: top level must be an object");
    }
    try {
        reject_unknown_keys(doc, {"seed", "dimension", "budget_fes", "runs", "algorithms",
                                  "init_methods", "functions", "np_t_grid"},
                            "plan");
        ExperimentPlan plan;
        read_key(doc, "seed", plan.master_seed);
        read_key(doc, "dimension", plan.dimension);
        read_key(doc, "budget_fes", plan.budget_fes);
        read_key(doc, "runs", plan.runs_per_cell);

        if (doc.contains("algorithms")) {
            for (const auto& item : doc.at("algorithms")) {
                plan.algorithms.push_back(parse_algorithm_entry(item));
            }
        } else {
            for (const auto& id : {"de-a", "pso-w", "cs"}) {
                plan.algorithms.push_back(parse_algorithm_entry(json(id)));
            }
        }
        if (doc.contains("np_t_grid")) {
            for (const auto& [id, settings] : doc.at("np_t_grid").items()) {
                const Algorithm alg = parse_algorithm(id);
                auto it = std::find_if(plan.algorithms.begin(), plan.algorithms.end(),
                                       [&](const auto& e) { return algorithm_of(e.config) == alg; });
                if (it == plan.algorithms.end()) {
                    throw ParseError("np_t_grid: " + id + " is not among the plan's algorithms");
                }
                it->settings = parse_settings(settings, "np_t_grid." + id);
            }
        }

        const auto names = [](const json& v, const std::vector<std::string>& all,
                              const char* all_word) {
            if (v.is_string() && v.get<std::string>() == all_word) {
                return all;
            }
            return v.get<std::vector<std::string>>();
        };
        std::vector<std::string> init_names;
        for (const auto& m : init_catalog()) {
            init_names.push_back(m.name);
        }
        plan.init_methods = doc.contains("init_methods")
                                ? names(doc.at("init_methods"), init_names, "all")
                                : init_names;
        plan.functions = doc.contains("functions")
                             ? names(doc.at("functions"), basic_benchmark_names(), "basic")
                             : basic_benchmark_names();
        return plan;
    } catch (const json::exception& e) {
        throw ParseError(std::string("plan: ") + e.what());
    }
}

ExperimentPlan ExperimentPlan::from_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open plan file " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return from_json_text(buffer.str());
}

std::string ExperimentPlan::describe() const
{
    std::ostringstream out;
    out << "seed=" << master_seed << " dimension=" << dimension << " budget_fes=" << budget_fes
        << " runs=" << runs_per_cell << "\n";
    for (const auto& entry : algorithms) {
        const Algorithm alg = algorithm_of(entry.config);
        out << algorithm_id(alg) << ":";
        for (const auto& s : entry.settings) {
            out << " NP=" << s.np << "/T=" << (s.t ? std::to_string(*s.t) : std::string("budget"));
        }
        if (entry.budget_fes) {
            out << " budget_fes=" << *entry.budget_fes;
        }
        std::visit(
            [&out](const auto& c) {
                using C = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<C, DEaConfig>) {
                    out << " cr_pool=[";
                    for (std::size_t i = 0; i < c.cr_pool.size(); ++i) {
                        out << (i ? "," : "") << format_double(c.cr_pool[i]);
                    }
                    out << "] f_pool=[";
                    for (std::size_t i = 0; i < c.f_pool.size(); ++i) {
                        out << (i ? "," : "") << format_double(c.f_pool[i]);
                    }
                    out << "] strategies=" << c.strategy_pool.size();
                } else if constexpr (std::is_same_v<C, PSOwConfig>) {
                    out << " c1=" << format_double(c.c1) << " c2=" << format_double(c.c2);
                    if (c.inertia_mode == InertiaMode::Fixed) {
                        out << " w=" << format_double(c.w);
                    } else {
                        out << " w=linear(" << format_double(c.w_max) << ","
                            << format_double(c.w_min) << ")";
                    }
                    out << " vclamp=" << format_double(c.velocity_clamp)
                        << " per_dimension_r=" << (c.per_dimension_r ? "true" : "false");
                } else if constexpr (std::is_same_v<C, CSConfig>) {
                    out << " pa=" << format_double(c.pa) << " lambda=" << format_double(c.levy_lambda)
                        << " alpha=" << format_double(c.alpha);
                } else if constexpr (std::is_same_v<C, ABCConfig>) {
                    out << " limit=" << (c.limit ? std::to_string(*c.limit) : std::string("D*NP"));
                } else {
                    out << " mutation_prob=" << format_double(c.mutation_prob)
                        << " tournament=" << c.tournament_size;
                }
            },
            entry.config);
        out << "\n";
    }
    out << "init_methods=" << init_methods.size() << " functions=" << functions.size() << "\n";
    return out.str();
}

std::size_t ExperimentPlan::run_count() const
{
    std::size_t settings = 0;
    for (const auto& entry : algorithms) {
        settings += entry.settings.size();
    }
    return settings * init_methods.size() * functions.size() * runs_per_cell;
}

void ResultStore::sort()
{
    std::sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
        return std::tie(a.algorithm, a.init_method, a.function, a.np, a.run_index) <
               std::tie(b.algorithm, b.init_method, b.function, b.np, b.run_index);
    });
}

void ResultStore::check_unique() const
{
    std::set<std::tuple<std::string, std::string, std::string, std::size_t, std::size_t>> keys;
    for (const auto& r : records) {
        if (!keys.emplace(r.algorithm, r.init_method, r.function, r.np, r.run_index).second) {
            throw ConfigError("duplicate result key: " + r.algorithm + "/" + r.init_method + "/" +
                              r.function + "/np=" + std::to_string(r.np) +
                              "/run=" + std::to_string(r.run_index));
        }
    }
}

RunRecord run_cell(const ExperimentPlan& plan, const AlgorithmEntry& entry, const NpT& setting,
                   const std::string& init_method, const std::string& function,
                   std::size_t run_index)
{
    const AlgorithmConfig cfg = with_np(entry.config, setting.np);
    const std::string alg(algorithm_id(algorithm_of(cfg)));
    const BenchmarkFn fn = make_benchmark(function, plan.dimension);
    const InitMethod& method = find_init_method(init_method);

    const Lineage lineage{alg, init_method, function, static_cast<std::int64_t>(setting.np),
                          static_cast<std::int64_t>(run_index)};
    const RngStream root = derive_stream(plan.master_seed, lineage);
    RngStream init_stream = root.child(std::string("init"));
    RngStream search_stream = root.child(std::string("search"));

    const Matrix init = initial_population(method, setting.np, fn.space, init_stream);
    RunOptions options;
    options.budget_fes = entry.budget_fes.value_or(plan.budget_fes);
    options.max_generations = setting.t;
    const RunResult result = run(cfg, fn, init, options, search_stream);

    RunRecord record;
    record.algorithm = alg;
    record.init_method = init_method;
    record.function = function;
    record.np = setting.np;
    record.t = setting.t.value_or(result.generations);
    record.run_index = run_index;
    record.lineage = to_string(lineage);
    record.best_value = result.best_value;
    record.fe_used = result.fe_used;
    record.initial_delta = result.initial_delta;
    record.best_position = result.best_position;
    return record;
}

ResultStore run_plan(const ExperimentPlan& plan, std::size_t parallelism)
{
    plan.validate();

    struct Task {
        const AlgorithmEntry* entry;
        NpT setting;
        const std::string* init;
        const std::string* function;
        std::size_t run;
    };
    std::vector<Task> tasks;
    for (const auto& entry : plan.algorithms) {
        for (const auto& setting : entry.settings) {
            for (const auto& init : plan.init_methods) {
                for (const auto& fn : plan.functions) {
                    for (std::size_t r = 0; r < plan.runs_per_cell; ++r) {
                        tasks.push_back({&entry, setting, &init, &fn, r});
                    }
                }
            }
        }
    }

    std::vector<RunRecord> records(tasks.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) {
                return;
            }
            try {
                const Task& t = tasks[i];
                records[i] = run_cell(plan, *t.entry, t.setting, *t.init, *t.function, t.run);
            } catch (...) {
                const std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next.store(tasks.size());
                return;
            }
        }
    };

    const std::size_t threads = std::max<std::size_t>(1, std::min(parallelism, tasks.size()));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < threads; ++i) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    ResultStore store{std::move(records)};
    store.sort();
    store.check_unique();
    return store;
}

}  // namespace initpop
