#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "initpop/matrix.hpp"
#include "initpop/rng.hpp"

namespace initpop {

enum class InitFamily {
    Beta,         ///< Be(a, b): shape parameters a, b
    Uniform,      ///< U(a, b): interval limits
    Normal,       ///< N(mu, sigma)
    Lognormal,    ///< logn(mu, sigma): log of the variate is N(mu, sigma)
    Exponential,  ///< E(lambda): rate lambda, mean 1/lambda
    Rayleigh,     ///< Rayl(sigma)
    Weibull,      ///< Weib(lambda, k): scale lambda, shape k
    PseudoRandom, ///< "random": plain i.i.d. U(0,1)
    LHS,          ///< Latin hypercube design
};

/// An initialization strategy: a distribution family and its parameters.
struct InitMethod {
    std::string name;
    InitFamily family = InitFamily::PseudoRandom;
    double p1 = 0.0;
    double p2 = 0.0;

    static InitMethod beta(double a, double b);
    static InitMethod uniform(double a, double b);
    static InitMethod normal(double mu, double sigma);
    static InitMethod lognormal(double mu, double sigma, std::string name = {});
    static InitMethod exponential(double lambda);
    static InitMethod rayleigh(double sigma);
    static InitMethod weibull(double scale, double shape);
    static InitMethod pseudo_random();
    static InitMethod lhs();

    /// Throws ParameterError when a shape or scale parameter is not positive.
    void validate() const;

    bool operator==(const InitMethod&) const = default;
};

/// The 22 methods in their canonical order.
const std::vector<InitMethod>& init_catalog();

/// Catalog lookup by exact name, e.g. "Be(3,2)" or "logn(0,2/3)".
const InitMethod& find_init_method(std::string_view name);

/// Box-constrained search domain.
struct SearchSpace {
    std::vector<double> lower;
    std::vector<double> upper;

    static SearchSpace cube(std::size_t d, double lo, double hi);

    [[nodiscard]] std::size_t dim() const noexcept { return lower.size(); }

    /// Throws ParameterError unless sizes agree, d >= 1 and lower < upper.
    void validate() const;

    [[nodiscard]] bool contains(std::span<const double> x) const noexcept;
    void clamp(std::span<double> x) const noexcept;
};

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

/// Closed-form mean and variance of the unclipped distribution. LHS and
/// PseudoRandom report the U(0,1) moments.
Moments analytic_moments(const InitMethod& method);

/// One unclipped draw from the method's distribution. Not defined for LHS.
double draw_unclipped(const InitMethod& method, RngStream& stream);

/// NP x D i.i.d. draws clipped to [0, 1], consumed in row-major order.
Matrix sample_unit_matrix(const InitMethod& method, std::size_t np, std::size_t d,
                          RngStream& stream);

/// Latin hypercube: each column holds exactly one value per stratum
/// [k/np, (k+1)/np), with an independent random stratum order per column.
Matrix lhs_unit_matrix(std::size_t np, std::size_t d, RngStream& stream);

/// Dispatches to lhs_unit_matrix or sample_unit_matrix.
Matrix unit_matrix(const InitMethod& method, std::size_t np, std::size_t d, RngStream& stream);

/// Affine map of a unit matrix onto the bounds of `space`.
Matrix scale_to_bounds(const Matrix& unit, const SearchSpace& space);

/// unit_matrix followed by scale_to_bounds.
Matrix initial_population(const InitMethod& method, std::size_t np, const SearchSpace& space,
                          RngStream& stream);

}  // namespace initpop
