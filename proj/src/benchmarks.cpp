#include "initpop/benchmarks.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "initpop/errors.hpp"
#include "initpop/rng.hpp"

namespace initpop {
namespace {

using std::numbers::pi;

double rosenbrock(std::span<const double> x)
{
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double a = x[i + 1] - x[i] * x[i];
        const double b = x[i] - 1.0;
        sum += 100.0 * a * a + b * b;
    }
    return sum;
}

double ackley(std::span<const double> x)
{
    const auto n = static_cast<double>(x.size());
    double squares = 0.0;
    double cosines = 0.0;
    for (double v : x) {
        squares += v * v;
        cosines += std::cos(2.0 * pi * v);
    }
    return -20.0 * std::exp(-0.2 * std::sqrt(squares / n)) - std::exp(cosines / n) + 20.0 +
           std::numbers::e;
}

double sphere(std::span<const double> x)
{
    double sum = 0.0;
    for (double v : x) {
        sum += v * v;
    }
    return sum;
}

double rastrigin(std::span<const double> x)
{
    double sum = 0.0;
    for (double v : x) {
        sum += v * v - 10.0 * std::cos(2.0 * pi * v) + 10.0;
    }
    return sum;
}

double griewank(std::span<const double> x)
{
    double sum = 0.0;
    double product = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += x[i] * x[i];
        product *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
    }
    return sum / 4000.0 - product + 1.0;
}

double zakharov(std::span<const double> x)
{
    double squares = 0.0;
    double weighted = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        squares += x[i] * x[i];
        weighted += 0.5 * static_cast<double>(i + 1) * x[i];
    }
    const double w2 = weighted * weighted;
    return squares + w2 + w2 * w2;
}

double alpine(std::span<const double> x)
{
    double sum = 0.0;
    for (double v : x) {
        sum += std::abs(v * std::sin(v) + 0.1 * v);
    }
    return sum;
}

// D-dimensional product form: -(prod cos x_i) * exp(-sum (x_i - pi)^2).
double easom(std::span<const double> x)
{
    double product = 1.0;
    double sum = 0.0;
    for (double v : x) {
        product *= std::cos(v);
        sum += (v - pi) * (v - pi);
    }
    return -product * std::exp(-sum);
}

constexpr double schwefel_constant = 418.98288727243369;

double schwefel(std::span<const double> x)
{
    double sum = 0.0;
    for (double v : x) {
        sum += v * std::sin(std::sqrt(std::abs(v)));
    }
    return schwefel_constant * static_cast<double>(x.size()) - sum;
}

double bukin_n6(std::span<const double> x)
{
    return 100.0 * std::sqrt(std::abs(x[1] - 0.01 * x[0] * x[0])) + 0.01 * std::abs(x[0] + 10.0);
}

constexpr int michalewicz_m = 10;

double michalewicz(std::span<const double> x)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double s = std::sin(static_cast<double>(i + 1) * x[i] * x[i] / pi);
        sum += std::sin(x[i]) * std::pow(s, 2 * michalewicz_m);
    }
    return -sum;
}

struct CatalogEntry {
    std::string_view id;
    double lo;
    double hi;
    double (*fn)(std::span<const double>);
};

constexpr CatalogEntry basic_entries[] = {
    {"Rosenbrock", -5.0, 5.0, rosenbrock},   {"Ackley", -10.0, 10.0, ackley},
    {"Sphere", -5.0, 5.0, sphere},           {"Rastrigin", -5.12, 5.12, rastrigin},
    {"Griewank", -600.0, 600.0, griewank},   {"Zakharov", -100.0, 100.0, zakharov},
    {"Alpine", -10.0, 10.0, alpine},         {"Easom", -100.0, 100.0, easom},
    {"Schwefel", -500.0, 500.0, schwefel},
};

void require_2d(std::string_view id, std::size_t d)
{
    if (d != 2) {
        throw ParameterError(std::string(id) + " is defined for d = 2 only");
    }
}

}  // namespace

double BenchmarkFn::evaluate(std::span<const double> x) const
{
    if (x.size() != dim()) {
        throw ShapeError(id + ": expected a vector of length " + std::to_string(dim()) + ", got " +
                         std::to_string(x.size()));
    }
    return evaluator(x);
}

const std::vector<std::string>& basic_benchmark_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& e : basic_entries) {
            out.emplace_back(e.id);
        }
        return out;
    }();
    return names;
}

const std::vector<std::string>& benchmark_names()
{
    static const std::vector<std::string> names = [] {
        auto out = basic_benchmark_names();
        out.emplace_back("BukinN6");
        out.emplace_back("Michalewicz");
        return out;
    }();
    return names;
}

Optimum optimum(std::string_view id, std::size_t d)
{
    if (d == 0) {
        throw ParameterError("optimum: dimension must be positive");
    }
    if (id == "Rosenbrock") {
        return {std::vector<double>(d, 1.0), 0.0};
    }
    if (id == "Easom") {
        if (d % 2 != 0) {
            throw ParameterError("Easom: the product form attains -1 at (pi,...,pi) only for even d");
        }
        return {std::vector<double>(d, pi), -1.0};
    }
    if (id == "Schwefel") {
        return {std::vector<double>(d, 420.96857), 0.0};
    }
    if (id == "BukinN6") {
        require_2d(id, d);
        return {{-10.0, 1.0}, 0.0};
    }
    if (id == "Michalewicz") {
        require_2d(id, d);
        return {{2.20319, 1.57049}, -1.801};
    }
    for (const auto& e : basic_entries) {
        if (e.id == id) {
            return {std::vector<double>(d, 0.0), 0.0};
        }
    }
    throw LookupError("unknown benchmark function: " + std::string(id));
}

BenchmarkFn make_benchmark(std::string_view id, std::size_t d)
{
    auto opt = optimum(id, d);
    if (id == "BukinN6") {
        return {"BukinN6", SearchSpace{{-15.0, -6.0}, {-5.0, 3.0}}, std::move(opt.x), opt.value,
                bukin_n6};
    }
    if (id == "Michalewicz") {
        return {"Michalewicz", SearchSpace::cube(2, 0.0, pi), std::move(opt.x), opt.value,
                michalewicz};
    }
    for (const auto& e : basic_entries) {
        if (e.id == id) {
            return {std::string(e.id), SearchSpace::cube(d, e.lo, e.hi), std::move(opt.x),
                    opt.value, e.fn};
        }
    }
    throw LookupError("unknown benchmark function: " + std::string(id));
}

Matrix random_rotation(std::size_t d, std::uint64_t seed)
{
    RngStream stream(seed, {std::string("rotation"), static_cast<std::int64_t>(d)});
    Eigen::MatrixXd gaussian(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            gaussian(i, j) = stream.next_normal();
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    Matrix out(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        const double sign = r(j, j) < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < d; ++i) {
            out(i, j) = q(i, j) * sign;
        }
    }
    return out;
}

BenchmarkFn make_transformed(const BenchmarkFn& base, std::span<const double> shift,
                             std::optional<std::uint64_t> rotation_seed)
{
    const std::size_t d = base.dim();
    if (shift.size() != d) {
        throw ShapeError("make_transformed: shift has length " + std::to_string(shift.size()) +
                         ", function dimension is " + std::to_string(d));
    }
    std::optional<Matrix> rotation;
    if (rotation_seed) {
        rotation = random_rotation(d, *rotation_seed);
    }

    std::vector<double> x_opt(d);
    for (std::size_t i = 0; i < d; ++i) {
        double moved = base.x_opt[i];
        if (rotation) {
            moved = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                moved += (*rotation)(k, i) * base.x_opt[k];
            }
        }
        x_opt[i] = shift[i] + moved;
    }
    if (!base.space.contains(x_opt)) {
        throw ParameterError("make_transformed: relocated optimum of " + base.id +
                             " falls outside the search domain");
    }

    std::vector<double> offset(shift.begin(), shift.end());
    auto base_eval = base.evaluator;
    std::function<double(std::span<const double>)> evaluator;
    if (rotation) {
        evaluator = [base_eval, offset, r = *rotation](std::span<const double> x) {
            const std::size_t n = offset.size();
            std::vector<double> diff(n);
            std::vector<double> z(n, 0.0);
            for (std::size_t k = 0; k < n; ++k) {
                diff[k] = x[k] - offset[k];
            }
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t k = 0; k < n; ++k) {
                    z[i] += r(i, k) * diff[k];
                }
            }
            return base_eval(z);
        };
    } else {
        evaluator = [base_eval, offset](std::span<const double> x) {
            std::vector<double> z(offset.size());
            for (std::size_t k = 0; k < z.size(); ++k) {
                z[k] = x[k] - offset[k];
            }
            return base_eval(z);
        };
    }
    std::string id = base.id + (rotation ? "-shifted-rotated" : "-shifted");
    return {std::move(id), base.space, std::move(x_opt), base.f_opt, std::move(evaluator)};
}

}  // namespace initpop
