#include "initpop/initializers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "initpop/errors.hpp"
#include "initpop/format.hpp"
#include "initpop/special.hpp"

namespace initpop {
namespace {

std::string call_name(std::string_view prefix, double a)
{
    return std::string(prefix) + "(" + format_double(a) + ")";
}

std::string call_name(std::string_view prefix, double a, double b)
{
    return std::string(prefix) + "(" + format_double(a) + "," + format_double(b) + ")";
}

// Marsaglia-Tsang; valid for shape > 0.
double draw_gamma(double shape, RngStream& stream)
{
    if (shape < 1.0) {
        const double u = stream.next_open_unit();
        return draw_gamma(shape + 1.0, stream) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    while (true) {
        double x = 0.0;
        double v = 0.0;
        do {
            x = stream.next_normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = stream.next_open_unit();
        if (u < 1.0 - 0.0331 * x * x * x * x) {
            return d * v;
        }
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
            return d * v;
        }
    }
}

void require_positive(double value, const char* what, const std::string& method)
{
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ParameterError(method + ": " + what + " must be positive");
    }
}

}  // namespace

InitMethod InitMethod::beta(double a, double b)
{
    return {call_name("Be", a, b), InitFamily::Beta, a, b};
}

InitMethod InitMethod::uniform(double a, double b)
{
    return {call_name("U", a, b), InitFamily::Uniform, a, b};
}

InitMethod InitMethod::normal(double mu, double sigma)
{
    return {call_name("N", mu, sigma), InitFamily::Normal, mu, sigma};
}

InitMethod InitMethod::lognormal(double mu, double sigma, std::string name)
{
    if (name.empty()) {
        name = call_name("logn", mu, sigma);
    }
    return {std::move(name), InitFamily::Lognormal, mu, sigma};
}

InitMethod InitMethod::exponential(double lambda)
{
    return {call_name("E", lambda), InitFamily::Exponential, lambda, 0.0};
}

InitMethod InitMethod::rayleigh(double sigma)
{
    return {call_name("Rayl", sigma), InitFamily::Rayleigh, sigma, 0.0};
}

InitMethod InitMethod::weibull(double scale, double shape)
{
    return {call_name("Weib", scale, shape), InitFamily::Weibull, scale, shape};
}

InitMethod InitMethod::pseudo_random() { return {"random", InitFamily::PseudoRandom, 0.0, 1.0}; }

InitMethod InitMethod::lhs() { return {"LHS", InitFamily::LHS, 0.0, 1.0}; }

void InitMethod::validate() const
{
    switch (family) {
    case InitFamily::Beta:
        require_positive(p1, "shape a", name);
        require_positive(p2, "shape b", name);
        break;
    case InitFamily::Uniform:
        if (!(p1 < p2)) {
            throw ParameterError(name + ": requires a < b");
        }
        break;
    case InitFamily::Normal:
    case InitFamily::Lognormal:
        if (!std::isfinite(p1)) {
            throw ParameterError(name + ": mu must be finite");
        }
        require_positive(p2, "sigma", name);
        break;
    case InitFamily::Exponential:
        require_positive(p1, "lambda", name);
        break;
    case InitFamily::Rayleigh:
        require_positive(p1, "sigma", name);
        break;
    case InitFamily::Weibull:
        require_positive(p1, "scale lambda", name);
        require_positive(p2, "shape k", name);
        break;
    case InitFamily::PseudoRandom:
    case InitFamily::LHS:
        break;
    }
}

const std::vector<InitMethod>& init_catalog()
{
    static const std::vector<InitMethod> catalog = {
        InitMethod::beta(3, 2),
        InitMethod::beta(2.5, 2.5),
        InitMethod::beta(2, 3),
        InitMethod::uniform(0, 1),
        InitMethod::normal(0, 1),
        InitMethod::normal(0.5, 1),
        InitMethod::normal(0.5, 0.5),
        InitMethod::lognormal(0, 1),
        InitMethod::lognormal(0.69, 0.25),
        InitMethod::lognormal(0, 0.5),
        InitMethod::lognormal(0, 2.0 / 3.0, "logn(0,2/3)"),
        InitMethod::exponential(0.5),
        InitMethod::exponential(0.1),
        InitMethod::exponential(0.8),
        InitMethod::rayleigh(0.4),
        InitMethod::rayleigh(0.8),
        InitMethod::rayleigh(0.1),
        InitMethod::weibull(1, 1.5),
        InitMethod::weibull(1.5, 1),
        InitMethod::weibull(1, 1),
        InitMethod::pseudo_random(),
        InitMethod::lhs(),
    };
    return catalog;
}

const InitMethod& find_init_method(std::string_view name)
{
    for (const auto& method : init_catalog()) {
        if (method.name == name) {
            return method;
        }
    }
    throw LookupError("unknown init method: " + std::string(name));
}

SearchSpace SearchSpace::cube(std::size_t d, double lo, double hi)
{
    return {std::vector<double>(d, lo), std::vector<double>(d, hi)};
}

void SearchSpace::validate() const
{
    if (lower.empty() || lower.size() != upper.size()) {
        throw ParameterError("search space: bounds must be non-empty and of equal length");
    }
    for (std::size_t j = 0; j < lower.size(); ++j) {
        if (!(lower[j] < upper[j])) {
            throw ParameterError("search space: lower bound must be below upper bound in dimension " +
                                 std::to_string(j));
        }
    }
}

bool SearchSpace::contains(std::span<const double> x) const noexcept
{
    if (x.size() != lower.size()) {
        return false;
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (!(x[j] >= lower[j] && x[j] <= upper[j])) {
            return false;
        }
    }
    return true;
}

void SearchSpace::clamp(std::span<double> x) const noexcept
{
    for (std::size_t j = 0; j < x.size(); ++j) {
        x[j] = std::clamp(x[j], lower[j], upper[j]);
    }
}

Moments analytic_moments(const InitMethod& method)
{
    method.validate();
    const double a = method.p1;
    const double b = method.p2;
    switch (method.family) {
    case InitFamily::Beta:
        return {a / (a + b), a * b / ((a + b) * (a + b) * (a + b + 1.0))};
    case InitFamily::Uniform:
        return {(a + b) / 2.0, (b - a) * (b - a) / 12.0};
    case InitFamily::Normal:
        return {a, b * b};
    case InitFamily::Lognormal:
        return {std::exp(a + b * b / 2.0), std::expm1(b * b) * std::exp(2.0 * a + b * b)};
    case InitFamily::Exponential:
        return {1.0 / a, 1.0 / (a * a)};
    case InitFamily::Rayleigh:
        return {a * std::sqrt(std::numbers::pi / 2.0), (4.0 - std::numbers::pi) / 2.0 * a * a};
    case InitFamily::Weibull: {
        const double g1 = special::gamma(1.0 + 1.0 / b);
        const double g2 = special::gamma(1.0 + 2.0 / b);
        return {a * g1, a * a * (g2 - g1 * g1)};
    }
    case InitFamily::PseudoRandom:
    case InitFamily::LHS:
        break;
    }
    return {0.5, 1.0 / 12.0};
}

double draw_unclipped(const InitMethod& method, RngStream& stream)
{
    const double a = method.p1;
    const double b = method.p2;
    switch (method.family) {
    case InitFamily::Beta: {
        const double x = draw_gamma(a, stream);
        const double y = draw_gamma(b, stream);
        return x / (x + y);
    }
    case InitFamily::Uniform:
        return a + (b - a) * stream.next_unit();
    case InitFamily::Normal:
        return a + b * stream.next_normal();
    case InitFamily::Lognormal:
        return std::exp(a + b * stream.next_normal());
    case InitFamily::Exponential:
        return -std::log(stream.next_open_unit()) / a;
    case InitFamily::Rayleigh:
        return a * std::sqrt(-2.0 * std::log(stream.next_open_unit()));
    case InitFamily::Weibull:
        return a * std::pow(-std::log(stream.next_open_unit()), 1.0 / b);
    case InitFamily::PseudoRandom:
        return stream.next_unit();
    case InitFamily::LHS:
        break;
    }
    throw ParameterError("LHS has no per-entry distribution; use lhs_unit_matrix");
}

Matrix sample_unit_matrix(const InitMethod& method, std::size_t np, std::size_t d,
                          RngStream& stream)
{
    if (method.family == InitFamily::LHS) {
        throw ParameterError("sample_unit_matrix: LHS must use lhs_unit_matrix");
    }
    if (np == 0 || d == 0) {
        throw ShapeError("sample_unit_matrix: np and d must be positive");
    }
    method.validate();
    Matrix unit(np, d);
    for (double& v : unit.values()) {
        v = std::clamp(draw_unclipped(method, stream), 0.0, 1.0);
    }
    return unit;
}

Matrix lhs_unit_matrix(std::size_t np, std::size_t d, RngStream& stream)
{
    if (np == 0 || d == 0) {
        throw ShapeError("lhs_unit_matrix: np and d must be positive");
    }
    Matrix unit(np, d);
    std::vector<std::size_t> strata(np);
    const auto n = static_cast<double>(np);
    for (std::size_t j = 0; j < d; ++j) {
        std::iota(strata.begin(), strata.end(), std::size_t{0});
        for (std::size_t i = np; i > 1; --i) {
            std::swap(strata[i - 1], strata[stream.next_index(i)]);
        }
        for (std::size_t i = 0; i < np; ++i) {
            const auto k = static_cast<double>(strata[i]);
            double v = (k + stream.next_unit()) / n;
            // Rounding may push v onto the next stratum's lower edge.
            while (v * n >= k + 1.0) {
                v = std::nextafter(v, 0.0);
            }
            unit(i, j) = v;
        }
    }
    return unit;
}

Matrix unit_matrix(const InitMethod& method, std::size_t np, std::size_t d, RngStream& stream)
{
    if (method.family == InitFamily::LHS) {
        return lhs_unit_matrix(np, d, stream);
    }
    return sample_unit_matrix(method, np, d, stream);
}

Matrix scale_to_bounds(const Matrix& unit, const SearchSpace& space)
{
    if (unit.cols() != space.dim()) {
        throw ShapeError("scale_to_bounds: unit matrix has " + std::to_string(unit.cols()) +
                         " columns but the search space has dimension " +
                         std::to_string(space.dim()));
    }
    Matrix out(unit.rows(), unit.cols());
    for (std::size_t i = 0; i < unit.rows(); ++i) {
        for (std::size_t j = 0; j < unit.cols(); ++j) {
            const double width = space.upper[j] - space.lower[j];
            out(i, j) = std::clamp(space.lower[j] + unit(i, j) * width, space.lower[j],
                                   space.upper[j]);
        }
    }
    return out;
}

Matrix initial_population(const InitMethod& method, std::size_t np, const SearchSpace& space,
                          RngStream& stream)
{
    return scale_to_bounds(unit_matrix(method, np, space.dim(), stream), space);
}

}  // namespace initpop
