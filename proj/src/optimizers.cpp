#include "initpop/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "initpop/errors.hpp"
#include "initpop/special.hpp"
#include "initpop/stats.hpp"

namespace initpop {
namespace {

template <typename T>
const T& pick(const std::vector<T>& pool, RngStream& stream)
{
    return pool[stream.next_index(pool.size())];
}

std::size_t argmin(std::span<const double> values) noexcept
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] < values[best]) {
            best = i;
        }
    }
    return best;
}

void copy_row(std::span<const double> from, std::span<double> to)
{
    std::copy(from.begin(), from.end(), to.begin());
}

}  // namespace

std::string_view algorithm_id(Algorithm alg)
{
    switch (alg) {
    case Algorithm::DEa:
        return "de-a";
    case Algorithm::PSOw:
        return "pso-w";
    case Algorithm::CS:
        return "cs";
    case Algorithm::ABC:
        return "abc";
    case Algorithm::GA:
        return "ga";
    }
    return "?";
}

const std::vector<std::string>& algorithm_ids()
{
    static const std::vector<std::string> ids = {"de-a", "pso-w", "cs", "abc", "ga"};
    return ids;
}

Algorithm parse_algorithm(std::string_view id)
{
    for (auto alg : {Algorithm::DEa, Algorithm::PSOw, Algorithm::CS, Algorithm::ABC, Algorithm::GA}) {
        if (algorithm_id(alg) == id) {
            return alg;
        }
    }
    throw LookupError("unknown algorithm: " + std::string(id));
}

Population Population::evaluate_initial(const Matrix& init, const BenchmarkFn& fn)
{
    if (init.rows() == 0 || init.cols() != fn.dim()) {
        throw ShapeError("initial population must be non-empty with " + std::to_string(fn.dim()) +
                         " columns");
    }
    Population pop;
    pop.positions = init;
    pop.fitness.resize(init.rows());
    for (std::size_t i = 0; i < init.rows(); ++i) {
        pop.fitness[i] = evaluate_candidate(pop, fn, pop.positions.row(i));
    }
    pop.refresh_best();
    return pop;
}

void Population::refresh_best() noexcept { best_index = argmin(fitness); }

double evaluate_candidate(Population& pop, const BenchmarkFn& fn, std::span<double> x)
{
    fn.space.clamp(x);
    const double value = fn.evaluate(x);
    ++pop.fe_count;
    if (value < pop.best_ever) {
        pop.best_ever = value;
        pop.best_ever_position.assign(x.begin(), x.end());
    }
    return value;
}

// ---------------------------------------------------------------------------
// DE-a

std::string_view strategy_name(DeStrategy s)
{
    switch (s) {
    case DeStrategy::Rand1:
        return "DE/rand/1";
    case DeStrategy::Best1:
        return "DE/best/1";
    case DeStrategy::CurrentToBest1:
        return "DE/current-to-best/1";
    case DeStrategy::Best2:
        return "DE/best/2";
    case DeStrategy::Rand2:
        return "DE/rand/2";
    }
    return "?";
}

void DEaConfig::validate() const
{
    if (np < 6) {
        throw ConfigError("de-a: np must be at least 6 (DE/rand/2 needs five donors)");
    }
    if (cr_pool.empty() || f_pool.empty() || strategy_pool.empty()) {
        throw ConfigError("de-a: parameter pools must be non-empty");
    }
    for (double cr : cr_pool) {
        if (!(cr >= 0.0 && cr <= 1.0)) {
            throw ConfigError("de-a: CR values must lie in [0, 1]");
        }
    }
    for (double f : f_pool) {
        if (!(f >= 0.0 && f <= 2.0)) {
            throw ConfigError("de-a: F values must lie in [0, 2]");
        }
    }
}

DeIndividualState draw_de_state(const DEaConfig& cfg, RngStream& stream)
{
    DeIndividualState s;
    s.strategy = pick(cfg.strategy_pool, stream);
    s.f = pick(cfg.f_pool, stream);
    s.cr = pick(cfg.cr_pool, stream);
    return s;
}

std::vector<DeIndividualState> initial_de_states(const DEaConfig& cfg, RngStream& stream)
{
    std::vector<DeIndividualState> states(cfg.np);
    for (auto& s : states) {
        s = draw_de_state(cfg, stream);
    }
    return states;
}

std::array<std::size_t, 5> distinct_indices(std::size_t np, std::size_t exclude,
                                            RngStream& stream)
{
    if (np < 6) {
        throw ConfigError("distinct_indices: need at least 6 individuals");
    }
    std::array<std::size_t, 5> r{};
    for (std::size_t k = 0; k < r.size(); ++k) {
        std::size_t candidate = 0;
        do {
            candidate = stream.next_index(np);
        } while (candidate == exclude ||
                 std::find(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(k), candidate) !=
                     r.begin() + static_cast<std::ptrdiff_t>(k));
        r[k] = candidate;
    }
    return r;
}

void de_mutant(DeStrategy strategy, const Matrix& positions, std::size_t i, std::size_t best,
               const std::array<std::size_t, 5>& r, double f, std::span<double> out)
{
    const auto x = [&](std::size_t row, std::size_t j) { return positions(row, j); };
    for (std::size_t j = 0; j < out.size(); ++j) {
        switch (strategy) {
        case DeStrategy::Rand1:
            out[j] = x(r[0], j) + f * (x(r[1], j) - x(r[2], j));
            break;
        case DeStrategy::Best1:
            out[j] = x(best, j) + f * (x(r[0], j) - x(r[1], j));
            break;
        case DeStrategy::CurrentToBest1:
            out[j] = x(i, j) + f * (x(best, j) - x(i, j)) + f * (x(r[1], j) - x(r[2], j));
            break;
        case DeStrategy::Best2:
            out[j] = x(best, j) + f * (x(r[0], j) - x(r[1], j)) + f * (x(r[2], j) - x(r[3], j));
            break;
        case DeStrategy::Rand2:
            out[j] = x(r[0], j) + f * (x(r[1], j) - x(r[2], j)) + f * (x(r[3], j) - x(r[4], j));
            break;
        }
    }
}

void binomial_crossover(std::span<const double> target, std::span<const double> mutant, double cr,
                        std::size_t j_rand, RngStream& stream, std::span<double> out)
{
    for (std::size_t j = 0; j < out.size(); ++j) {
        const bool from_mutant = stream.next_unit() < cr || j == j_rand;
        out[j] = from_mutant ? mutant[j] : target[j];
    }
}

void de_a_generation(Population& pop, std::vector<DeIndividualState>& states,
                     const DEaConfig& cfg, const BenchmarkFn& fn, RngStream& stream)
{
    const std::size_t np = pop.size();
    const std::size_t d = pop.dim();
    if (np < 6) {
        throw ConfigError("de-a: np must be at least 6");
    }
    if (states.size() != np) {
        throw ShapeError("de-a: one strategy state per individual required");
    }

    // Trials are built from the population as it stood at the start of the
    // generation; selection happens afterwards.
    const std::size_t best = pop.best_index;
    Matrix trials(np, d);
    std::vector<double> trial_fitness(np);
    std::vector<double> mutant(d);
    for (std::size_t i = 0; i < np; ++i) {
        const auto r = distinct_indices(np, i, stream);
        de_mutant(states[i].strategy, pop.positions, i, best, r, states[i].f, mutant);
        const std::size_t j_rand = stream.next_index(d);
        binomial_crossover(pop.positions.row(i), mutant, states[i].cr, j_rand, stream,
                           trials.row(i));
        trial_fitness[i] = evaluate_candidate(pop, fn, trials.row(i));
    }
    for (std::size_t i = 0; i < np; ++i) {
        if (trial_fitness[i] < pop.fitness[i]) {
            copy_row(trials.row(i), pop.positions.row(i));
            pop.fitness[i] = trial_fitness[i];
        } else {
            states[i] = draw_de_state(cfg, stream);
        }
    }
    pop.refresh_best();
}

// ---------------------------------------------------------------------------
// PSO-w

void PSOwConfig::validate() const
{
    if (np < 1) {
        throw ConfigError("pso-w: np must be positive");
    }
    if (c1 < 0.0 || c2 < 0.0) {
        throw ConfigError("pso-w: learning factors must be non-negative");
    }
    if (inertia_mode == InertiaMode::Fixed) {
        if (!(w >= 0.0 && w < 2.0)) {
            throw ConfigError("pso-w: w must lie in [0, 2)");
        }
    } else {
        if (!(w_min > 0.0 && w_max < 2.0 && w_min < w_max)) {
            throw ConfigError("pso-w: require 0 < w_min < w_max < 2");
        }
    }
    if (!(velocity_clamp > 0.0)) {
        throw ConfigError("pso-w: velocity clamp fraction must be positive");
    }
}

double PSOwConfig::inertia(std::size_t t, std::size_t t_max) const
{
    if (inertia_mode == InertiaMode::Fixed || t_max == 0) {
        return inertia_mode == InertiaMode::Fixed ? w : w_max;
    }
    return w_max - (w_max - w_min) * static_cast<double>(t) / static_cast<double>(t_max);
}

PsoState PsoState::from_population(const Population& pop)
{
    PsoState s;
    s.velocities = Matrix(pop.size(), pop.dim(), 0.0);
    s.personal_best = pop.positions;
    s.personal_best_fitness = pop.fitness;
    s.global_best = argmin(s.personal_best_fitness);
    return s;
}

double pso_velocity(double v, double x, double p_i, double p_g, double w, double c1, double c2,
                    double r1, double r2) noexcept
{
    return w * v + c1 * r1 * (p_i - x) + c2 * r2 * (p_g - x);
}

void pso_w_generation(Population& pop, PsoState& state, const PSOwConfig& cfg, std::size_t t,
                      std::size_t t_max, const BenchmarkFn& fn, RngStream& stream)
{
    const std::size_t np = pop.size();
    const std::size_t d = pop.dim();
    const double w = cfg.inertia(t, t_max);
    const std::size_t g = state.global_best;
    // Snapshot so every particle in this iteration follows the same p_g.
    const std::vector<double> p_g(state.personal_best.row(g).begin(),
                                  state.personal_best.row(g).end());
    for (std::size_t i = 0; i < np; ++i) {
        auto x = pop.positions.row(i);
        auto v = state.velocities.row(i);
        const auto p_i = state.personal_best.row(i);
        double r1 = stream.next_unit();
        double r2 = stream.next_unit();
        for (std::size_t j = 0; j < d; ++j) {
            if (cfg.per_dimension_r && j > 0) {
                r1 = stream.next_unit();
                r2 = stream.next_unit();
            }
            const double vmax = cfg.velocity_clamp * (fn.space.upper[j] - fn.space.lower[j]);
            v[j] = std::clamp(pso_velocity(v[j], x[j], p_i[j], p_g[j], w, cfg.c1, cfg.c2, r1, r2),
                              -vmax, vmax);
            x[j] += v[j];
        }
        pop.fitness[i] = evaluate_candidate(pop, fn, x);
        if (pop.fitness[i] < state.personal_best_fitness[i]) {
            state.personal_best_fitness[i] = pop.fitness[i];
            copy_row(x, state.personal_best.row(i));
        }
    }
    state.global_best = argmin(state.personal_best_fitness);
    pop.refresh_best();
}

// ---------------------------------------------------------------------------
// Cuckoo search

void CSConfig::validate() const
{
    if (np < 3) {
        throw ConfigError("cs: np must be at least 3 (local walk needs two other nests)");
    }
    if (!(pa > 0.0 && pa < 1.0)) {
        throw ConfigError("cs: pa must lie in (0, 1)");
    }
    if (!(levy_lambda > 1.0 && levy_lambda <= 3.0)) {
        throw ConfigError("cs: levy exponent must satisfy 1 < lambda <= 3");
    }
    if (!(alpha > 0.0)) {
        throw ConfigError("cs: alpha must be positive");
    }
}

double mantegna_sigma_u(double beta)
{
    const double num = special::gamma(1.0 + beta) * std::sin(std::numbers::pi * beta / 2.0);
    const double den =
        special::gamma((1.0 + beta) / 2.0) * beta * std::pow(2.0, (beta - 1.0) / 2.0);
    return std::pow(num / den, 1.0 / beta);
}

double mantegna_step(double u, double v, double beta) noexcept
{
    return u / std::pow(std::abs(v), 1.0 / beta);
}

std::vector<double> levy_step(std::size_t d, double lambda, RngStream& stream)
{
    if (!(lambda > 1.0 && lambda <= 3.0)) {
        throw ParameterError("levy_step: lambda must satisfy 1 < lambda <= 3");
    }
    // Mantegna's stable-law construction is only defined for indices up to 2;
    // larger exponents use the Gaussian limit.
    const double beta = std::min(lambda, 2.0);
    const double sigma_u = mantegna_sigma_u(beta);
    std::vector<double> step(d);
    for (auto& s : step) {
        const double u = sigma_u * stream.next_normal();
        const double v = stream.next_normal();
        s = mantegna_step(u, v, beta);
    }
    return step;
}

void cs_global_proposal(std::span<const double> x, std::span<const double> best,
                        std::span<const double> levy, double alpha, std::span<double> out)
{
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] = x[j] + alpha * levy[j] * (x[j] - best[j]);
    }
}

void cs_local_proposal(std::span<const double> x, std::span<const double> xj,
                       std::span<const double> xk, double step, std::span<const double> eps,
                       double pa, std::span<double> out)
{
    for (std::size_t c = 0; c < out.size(); ++c) {
        const double heaviside = pa - eps[c] > 0.0 ? 1.0 : 0.0;
        out[c] = x[c] + step * heaviside * (xj[c] - xk[c]);
    }
}

void cs_generation(Population& pop, const CSConfig& cfg, const BenchmarkFn& fn,
                   RngStream& stream)
{
    const std::size_t np = pop.size();
    const std::size_t d = pop.dim();
    if (np < 3) {
        throw ConfigError("cs: np must be at least 3");
    }
    std::vector<double> proposal(d);

    // Global walk around the current best.
    const std::vector<double> best(pop.positions.row(pop.best_index).begin(),
                                   pop.positions.row(pop.best_index).end());
    for (std::size_t i = 0; i < np; ++i) {
        const auto levy = levy_step(d, cfg.levy_lambda, stream);
        cs_global_proposal(pop.positions.row(i), best, levy, cfg.alpha, proposal);
        const double f = evaluate_candidate(pop, fn, proposal);
        if (f < pop.fitness[i]) {
            copy_row(proposal, pop.positions.row(i));
            pop.fitness[i] = f;
        }
    }

    // Local walk: partial abandonment towards differences of two other nests.
    const Matrix snapshot = pop.positions;
    std::vector<double> eps(d);
    for (std::size_t i = 0; i < np; ++i) {
        std::size_t j = 0;
        std::size_t k = 0;
        do {
            j = stream.next_index(np);
        } while (j == i);
        do {
            k = stream.next_index(np);
        } while (k == i || k == j);
        const double step = stream.next_unit();
        for (auto& e : eps) {
            e = stream.next_unit();
        }
        cs_local_proposal(snapshot.row(i), snapshot.row(j), snapshot.row(k), step, eps, cfg.pa,
                          proposal);
        const double f = evaluate_candidate(pop, fn, proposal);
        if (f < pop.fitness[i]) {
            copy_row(proposal, pop.positions.row(i));
            pop.fitness[i] = f;
        }
    }
    pop.refresh_best();
}

// ---------------------------------------------------------------------------
// ABC

void ABCConfig::validate() const
{
    if (np < 2) {
        throw ConfigError("abc: np must be at least 2");
    }
    if (limit && *limit < 1) {
        throw ConfigError("abc: limit must be at least 1");
    }
}

std::size_t ABCConfig::limit_for(std::size_t d) const { return limit ? *limit : d * np; }

double abc_neighbor(double x, double partner, double phi) noexcept
{
    return x + phi * (x - partner);
}

double abc_fitness(double f) noexcept { return f >= 0.0 ? 1.0 / (1.0 + f) : 1.0 + std::abs(f); }

namespace {

void abc_try_neighbor(Population& pop, std::vector<std::size_t>& trials, std::size_t i,
                      const BenchmarkFn& fn, RngStream& stream, std::vector<double>& candidate)
{
    const std::size_t np = pop.size();
    std::size_t partner = 0;
    do {
        partner = stream.next_index(np);
    } while (partner == i);
    const std::size_t j = stream.next_index(pop.dim());
    const double phi = 2.0 * stream.next_unit() - 1.0;
    const auto x = pop.positions.row(i);
    std::copy(x.begin(), x.end(), candidate.begin());
    candidate[j] = abc_neighbor(x[j], pop.positions(partner, j), phi);
    const double f = evaluate_candidate(pop, fn, candidate);
    if (f < pop.fitness[i]) {
        copy_row(candidate, pop.positions.row(i));
        pop.fitness[i] = f;
        trials[i] = 0;
    } else {
        ++trials[i];
    }
}

}  // namespace

void abc_generation(Population& pop, std::vector<std::size_t>& trials, const ABCConfig& cfg,
                    const BenchmarkFn& fn, RngStream& stream, std::size_t fe_limit)
{
    const std::size_t np = pop.size();
    const std::size_t d = pop.dim();
    if (np < 2) {
        throw ConfigError("abc: np must be at least 2");
    }
    if (trials.size() != np) {
        throw ShapeError("abc: one trial counter per food source required");
    }
    std::vector<double> candidate(d);

    for (std::size_t i = 0; i < np; ++i) {
        abc_try_neighbor(pop, trials, i, fn, stream, candidate);
    }

    std::vector<double> weights(np);
    for (std::size_t onlooker = 0; onlooker < np; ++onlooker) {
        double total = 0.0;
        for (std::size_t i = 0; i < np; ++i) {
            weights[i] = abc_fitness(pop.fitness[i]);
            total += weights[i];
        }
        double target = stream.next_unit() * total;
        std::size_t chosen = np - 1;
        for (std::size_t i = 0; i < np; ++i) {
            target -= weights[i];
            if (target < 0.0) {
                chosen = i;
                break;
            }
        }
        abc_try_neighbor(pop, trials, chosen, fn, stream, candidate);
    }

    const std::size_t limit = cfg.limit_for(d);
    for (std::size_t i = 0; i < np; ++i) {
        if (trials[i] <= limit || pop.fe_count >= fe_limit) {
            continue;
        }
        auto x = pop.positions.row(i);
        for (std::size_t j = 0; j < d; ++j) {
            x[j] = fn.space.lower[j] + stream.next_unit() * (fn.space.upper[j] - fn.space.lower[j]);
        }
        pop.fitness[i] = evaluate_candidate(pop, fn, x);
        trials[i] = 0;
    }
    pop.refresh_best();
}

// ---------------------------------------------------------------------------
// GA

void GAConfig::validate() const
{
    if (np < 4 || np % 2 != 0) {
        throw ConfigError("ga: np must be even and at least 4");
    }
    if (!(mutation_prob >= 0.0 && mutation_prob <= 1.0)) {
        throw ConfigError("ga: mutation probability must lie in [0, 1]");
    }
    if (tournament_size < 1) {
        throw ConfigError("ga: tournament size must be positive");
    }
}

void blend(std::span<const double> a, std::span<const double> b, double w,
           std::span<double> out) noexcept
{
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] = w * a[j] + (1.0 - w) * b[j];
    }
}

void ga_generation(Population& pop, const GAConfig& cfg, const BenchmarkFn& fn,
                   RngStream& stream)
{
    const std::size_t np = pop.size();
    const std::size_t d = pop.dim();
    if (np < 4 || np % 2 != 0) {
        throw ConfigError("ga: np must be even and at least 4");
    }
    std::vector<std::size_t> order(np);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return pop.fitness[a] < pop.fitness[b]; });

    const std::size_t elite = np / 2;
    Matrix next(np, d);
    std::vector<double> next_fitness(np);
    for (std::size_t r = 0; r < elite; ++r) {
        copy_row(pop.positions.row(order[r]), next.row(r));
        next_fitness[r] = pop.fitness[order[r]];
    }

    // Survivors occupy ranks 0..elite-1, so a lower rank is a fitter parent.
    const auto tournament = [&] {
        std::size_t winner = stream.next_index(elite);
        for (std::size_t t = 1; t < cfg.tournament_size; ++t) {
            winner = std::min(winner, stream.next_index(elite));
        }
        return winner;
    };
    for (std::size_t r = elite; r < np; ++r) {
        const std::size_t a = tournament();
        std::size_t b = tournament();
        while (b == a) {
            b = tournament();
        }
        auto child = next.row(r);
        blend(next.row(a), next.row(b), stream.next_unit(), child);
        for (std::size_t j = 0; j < d; ++j) {
            if (stream.next_unit() < cfg.mutation_prob) {
                child[j] =
                    fn.space.lower[j] + stream.next_unit() * (fn.space.upper[j] - fn.space.lower[j]);
            }
        }
        next_fitness[r] = evaluate_candidate(pop, fn, child);
    }
    pop.positions = std::move(next);
    pop.fitness = std::move(next_fitness);
    pop.refresh_best();
}

// ---------------------------------------------------------------------------
// Run loop

Algorithm algorithm_of(const AlgorithmConfig& cfg)
{
    return static_cast<Algorithm>(cfg.index());
}

std::size_t population_size(const AlgorithmConfig& cfg)
{
    return std::visit([](const auto& c) { return c.np; }, cfg);
}

AlgorithmConfig default_config(Algorithm alg)
{
    switch (alg) {
    case Algorithm::DEa:
        return DEaConfig{};
    case Algorithm::PSOw:
        return PSOwConfig{};
    case Algorithm::CS:
        return CSConfig{};
    case Algorithm::ABC:
        return ABCConfig{};
    case Algorithm::GA:
        return GAConfig{};
    }
    throw LookupError("unknown algorithm");
}

double fes_per_individual(Algorithm alg)
{
    switch (alg) {
    case Algorithm::DEa:
    case Algorithm::PSOw:
        return 1.0;
    case Algorithm::CS:
    case Algorithm::ABC:
        return 2.0;
    case Algorithm::GA:
        return 0.5;
    }
    return 1.0;
}

namespace {

std::size_t generation_cost(Algorithm alg, std::size_t np)
{
    switch (alg) {
    case Algorithm::DEa:
    case Algorithm::PSOw:
        return np;
    case Algorithm::CS:
    case Algorithm::ABC:
        return 2 * np;
    case Algorithm::GA:
        return np / 2;
    }
    return np;
}

}  // namespace

RunResult run(const AlgorithmConfig& cfg, const BenchmarkFn& fn, const Matrix& init,
              const RunOptions& options, RngStream& stream)
{
    std::visit([](const auto& c) { c.validate(); }, cfg);
    const Algorithm alg = algorithm_of(cfg);
    const std::size_t np = population_size(cfg);
    if (init.rows() != np || init.cols() != fn.dim()) {
        throw ShapeError("run: initial population must be " + std::to_string(np) + " x " +
                         std::to_string(fn.dim()));
    }
    for (std::size_t i = 0; i < np; ++i) {
        if (!fn.space.contains(init.row(i))) {
            throw ConfigError("run: initial population lies outside the search domain");
        }
    }
    if (options.budget_fes < np) {
        throw ConfigError("run: budget of " + std::to_string(options.budget_fes) +
                          " FEs cannot cover the initial population of " + std::to_string(np));
    }

    RunResult result;
    result.initial_delta = initial_mean_distance(init, fn.x_opt);
    Population pop = Population::evaluate_initial(init, fn);

    const std::size_t cost = generation_cost(alg, np);
    const std::size_t gen_cap = options.max_generations.value_or(
        std::numeric_limits<std::size_t>::max());
    const std::size_t t_max = options.max_generations.value_or((options.budget_fes - np) / cost);

    std::vector<DeIndividualState> de_states;
    PsoState pso_state;
    std::vector<std::size_t> abc_trials;
    switch (alg) {
    case Algorithm::DEa:
        de_states = initial_de_states(std::get<DEaConfig>(cfg), stream);
        break;
    case Algorithm::PSOw:
        pso_state = PsoState::from_population(pop);
        break;
    case Algorithm::ABC:
        abc_trials.assign(np, 0);
        break;
    default:
        break;
    }

    std::size_t gen = 0;
    while (gen < gen_cap && pop.fe_count + cost <= options.budget_fes) {
        switch (alg) {
        case Algorithm::DEa:
            de_a_generation(pop, de_states, std::get<DEaConfig>(cfg), fn, stream);
            break;
        case Algorithm::PSOw:
            pso_w_generation(pop, pso_state, std::get<PSOwConfig>(cfg), gen, t_max, fn, stream);
            break;
        case Algorithm::CS:
            cs_generation(pop, std::get<CSConfig>(cfg), fn, stream);
            break;
        case Algorithm::ABC:
            abc_generation(pop, abc_trials, std::get<ABCConfig>(cfg), fn, stream,
                           options.budget_fes);
            break;
        case Algorithm::GA:
            ga_generation(pop, std::get<GAConfig>(cfg), fn, stream);
            break;
        }
        ++gen;
        if (options.record_history) {
            result.history.push_back(pop.best_ever);
        }
    }

    result.best_value = pop.best_ever;
    result.best_position = pop.best_ever_position;
    result.fe_used = pop.fe_count;
    result.generations = gen;
    return result;
}

}  // namespace initpop
