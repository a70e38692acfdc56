#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "initpop/benchmarks.hpp"
#include "initpop/matrix.hpp"
#include "initpop/rng.hpp"

namespace initpop {

enum class Algorithm { DEa, PSOw, CS, ABC, GA };

std::string_view algorithm_id(Algorithm alg);
Algorithm parse_algorithm(std::string_view id);
const std::vector<std::string>& algorithm_ids();

/// Current population plus the best point evaluated so far.
///
/// Every evaluation goes through evaluate_candidate(), which clamps the point
/// to the domain, counts one FE and updates the best-ever record.
struct Population {
    Matrix positions;
    std::vector<double> fitness;
    std::size_t best_index = 0;
    std::size_t fe_count = 0;
    double best_ever = std::numeric_limits<double>::infinity();
    std::vector<double> best_ever_position;

    /// Evaluates every row of `init` (np FEs).
    static Population evaluate_initial(const Matrix& init, const BenchmarkFn& fn);

    [[nodiscard]] std::size_t size() const noexcept { return positions.rows(); }
    [[nodiscard]] std::size_t dim() const noexcept { return positions.cols(); }
    void refresh_best() noexcept;
};

/// Clamps `x` to the function's bounds in place, evaluates it and records the FE.
double evaluate_candidate(Population& pop, const BenchmarkFn& fn, std::span<double> x);

// ---------------------------------------------------------------------------
// DE-a: differential evolution with a per-individual strategy/F/CR triple that
// is redrawn from fixed pools whenever the individual's trial fails.

enum class DeStrategy { Rand1, Best1, CurrentToBest1, Best2, Rand2 };

std::string_view strategy_name(DeStrategy s);

struct DEaConfig {
    std::size_t np = 100;
    std::vector<double> cr_pool{0.4, 0.5, 0.6, 0.7, 0.8};
    std::vector<double> f_pool{0.5, 0.6, 0.7, 0.8, 0.9};
    std::vector<DeStrategy> strategy_pool{DeStrategy::Rand1, DeStrategy::Best1,
                                          DeStrategy::CurrentToBest1, DeStrategy::Best2,
                                          DeStrategy::Rand2};
    void validate() const;
};

struct DeIndividualState {
    DeStrategy strategy = DeStrategy::Rand1;
    double f = 0.5;
    double cr = 0.5;
};

DeIndividualState draw_de_state(const DEaConfig& cfg, RngStream& stream);
std::vector<DeIndividualState> initial_de_states(const DEaConfig& cfg, RngStream& stream);

/// Five pairwise distinct indices in [0, np), all different from `exclude`.
std::array<std::size_t, 5> distinct_indices(std::size_t np, std::size_t exclude,
                                            RngStream& stream);

/// Mutant vector for target `i`. `r` holds the random donor indices r1..r5.
void de_mutant(DeStrategy strategy, const Matrix& positions, std::size_t i, std::size_t best,
               const std::array<std::size_t, 5>& r, double f, std::span<double> out);

/// Binomial crossover: coordinate j comes from the mutant when rand < cr or
/// j == j_rand.
void binomial_crossover(std::span<const double> target, std::span<const double> mutant, double cr,
                        std::size_t j_rand, RngStream& stream, std::span<double> out);

void de_a_generation(Population& pop, std::vector<DeIndividualState>& states,
                     const DEaConfig& cfg, const BenchmarkFn& fn, RngStream& stream);

// ---------------------------------------------------------------------------
// PSO-w

enum class InertiaMode { Fixed, Linear };

struct PSOwConfig {
    std::size_t np = 3000;
    double c1 = 1.5;
    double c2 = 1.5;
    InertiaMode inertia_mode = InertiaMode::Fixed;
    double w = 0.8;
    double w_max = 0.9;
    double w_min = 0.4;
    /// Draw r1, r2 per coordinate instead of once per particle.
    bool per_dimension_r = false;
    /// |v_j| is limited to this fraction of the range of dimension j.
    double velocity_clamp = 0.2;

    void validate() const;
    /// Inertia weight at iteration t of t_max.
    [[nodiscard]] double inertia(std::size_t t, std::size_t t_max) const;
};

struct PsoState {
    Matrix velocities;
    Matrix personal_best;
    std::vector<double> personal_best_fitness;
    std::size_t global_best = 0;

    /// Zero velocities; personal bests equal the evaluated population.
    static PsoState from_population(const Population& pop);
};

/// One coordinate of the velocity update
/// w*v + c1*r1*(p_i - x) + c2*r2*(p_g - x).
double pso_velocity(double v, double x, double p_i, double p_g, double w, double c1, double c2,
                    double r1, double r2) noexcept;

void pso_w_generation(Population& pop, PsoState& state, const PSOwConfig& cfg, std::size_t t,
                      std::size_t t_max, const BenchmarkFn& fn, RngStream& stream);

// ---------------------------------------------------------------------------
// Cuckoo search

struct CSConfig {
    std::size_t np = 30;
    double pa = 0.25;
    double levy_lambda = 1.5;
    double alpha = 0.01;
    void validate() const;
};

/// Scale of the numerator variate in Mantegna's construction.
double mantegna_sigma_u(double beta);

/// Mantegna step u / |v|^(1/beta).
double mantegna_step(double u, double v, double beta) noexcept;

/// Heavy-tailed step vector with tail index lambda (1 < lambda <= 3).
std::vector<double> levy_step(std::size_t d, double lambda, RngStream& stream);

/// Global walk: x + alpha * levy (elementwise) * (x - best).
void cs_global_proposal(std::span<const double> x, std::span<const double> best,
                        std::span<const double> levy, double alpha, std::span<double> out);

/// Local walk: x + step * H(pa - eps_j) * (x_j - x_k), coordinate by coordinate.
void cs_local_proposal(std::span<const double> x, std::span<const double> xj,
                       std::span<const double> xk, double step, std::span<const double> eps,
                       double pa, std::span<double> out);

void cs_generation(Population& pop, const CSConfig& cfg, const BenchmarkFn& fn,
                   RngStream& stream);

// ---------------------------------------------------------------------------
// Artificial bee colony

struct ABCConfig {
    std::size_t np = 50;
    /// Abandonment threshold; D * NP when unset.
    std::optional<std::size_t> limit;
    void validate() const;
    [[nodiscard]] std::size_t limit_for(std::size_t d) const;
};

/// Neighbour coordinate x + phi * (x - partner).
double abc_neighbor(double x, double partner, double phi) noexcept;

/// Selection weight: 1/(1+f) for f >= 0, 1+|f| otherwise.
double abc_fitness(double f) noexcept;

/// Employed, onlooker and scout phases. Scouts that would push fe_count past
/// `fe_limit` are postponed to a later generation.
void abc_generation(Population& pop, std::vector<std::size_t>& trials, const ABCConfig& cfg,
                    const BenchmarkFn& fn, RngStream& stream,
                    std::size_t fe_limit = std::numeric_limits<std::size_t>::max());

// ---------------------------------------------------------------------------
// Genetic algorithm: the better half survives, the worse half is replaced by
// blend-crossover offspring of tournament-selected survivors.

struct GAConfig {
    std::size_t np = 3000;
    double mutation_prob = 0.1;
    std::size_t tournament_size = 2;
    void validate() const;
};

/// w * a + (1 - w) * b.
void blend(std::span<const double> a, std::span<const double> b, double w,
           std::span<double> out) noexcept;

void ga_generation(Population& pop, const GAConfig& cfg, const BenchmarkFn& fn,
                   RngStream& stream);

// ---------------------------------------------------------------------------
// Run loop

using AlgorithmConfig = std::variant<DEaConfig, PSOwConfig, CSConfig, ABCConfig, GAConfig>;

Algorithm algorithm_of(const AlgorithmConfig& cfg);
std::size_t population_size(const AlgorithmConfig& cfg);
AlgorithmConfig default_config(Algorithm alg);

/// Nominal FEs per generation divided by NP (ABC scouts excluded).
double fes_per_individual(Algorithm alg);

struct RunOptions {
    std::size_t budget_fes = 600000;
    /// Optional cap on generations (the T of an NP/T setting).
    std::optional<std::size_t> max_generations;
    bool record_history = false;
};

struct RunResult {
    double best_value = 0.0;
    std::vector<double> best_position;
    std::size_t fe_used = 0;
    double initial_delta = 0.0;
    std::size_t generations = 0;
    /// Best-ever value after each generation (only when requested).
    std::vector<double> history;
};

/// Evaluates `init`, then runs whole generations while the next one fits in
/// the budget.
RunResult run(const AlgorithmConfig& cfg, const BenchmarkFn& fn, const Matrix& init,
              const RunOptions& options, RngStream& stream);

}  // namespace initpop
