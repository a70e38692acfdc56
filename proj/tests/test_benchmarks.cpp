#include <doctest.h>

#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "initpop/benchmarks.hpp"
#include "initpop/errors.hpp"

using namespace initpop;

namespace {

constexpr double pi = std::numbers::pi;

// Straight transcriptions of the function table, used as oracles.
using Formula = std::function<double(const std::vector<double>&)>;

std::map<std::string, Formula> formulas()
{
    std::map<std::string, Formula> f;
    f["Rosenbrock"] = [](const std::vector<double>& x) {
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < x.size(); ++i) {
            s += 100.0 * std::pow(x[i + 1] - x[i] * x[i], 2) + std::pow(x[i] - 1.0, 2);
        }
        return s;
    };
    f["Ackley"] = [](const std::vector<double>& x) {
        double sq = 0.0;
        double cs = 0.0;
        for (double v : x) {
            sq += v * v;
            cs += std::cos(2.0 * pi * v);
        }
        const double d = static_cast<double>(x.size());
        return -20.0 * std::exp(-0.2 * std::sqrt(sq / d)) - std::exp(cs / d) + 20.0 +
               std::numbers::e;
    };
    f["Sphere"] = [](const std::vector<double>& x) {
        double s = 0.0;
        for (double v : x) {
            s += v * v;
        }
        return s;
    };
    f["Rastrigin"] = [](const std::vector<double>& x) {
        double s = 0.0;
        for (double v : x) {
            s += v * v - 10.0 * std::cos(2.0 * pi * v) + 10.0;
        }
        return s;
    };
    f["Griewank"] = [](const std::vector<double>& x) {
        double s = 0.0;
        double p = 1.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            s += x[i] * x[i];
            p *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
        }
        return s / 4000.0 - p + 1.0;
    };
    f["Zakharov"] = [](const std::vector<double>& x) {
        double s = 0.0;
        double w = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            s += x[i] * x[i];
            w += 0.5 * static_cast<double>(i + 1) * x[i];
        }
        return s + w * w + w * w * w * w;
    };
    f["Alpine"] = [](const std::vector<double>& x) {
        double s = 0.0;
        for (double v : x) {
            s += std::abs(v * std::sin(v) + 0.1 * v);
        }
        return s;
    };
    f["Easom"] = [](const std::vector<double>& x) {
        double p = 1.0;
        double s = 0.0;
        for (double v : x) {
            p *= std::cos(v);
            s += (v - pi) * (v - pi);
        }
        return -p * std::exp(-s);
    };
    f["Schwefel"] = [](const std::vector<double>& x) {
        double s = 0.0;
        for (double v : x) {
            s += v * std::sin(std::sqrt(std::abs(v)));
        }
        return 418.98288727243369 * static_cast<double>(x.size()) - s;
    };
    f["BukinN6"] = [](const std::vector<double>& x) {
        return 100.0 * std::sqrt(std::abs(x[1] - 0.01 * x[0] * x[0])) + 0.01 * std::abs(x[0] + 10.0);
    };
    f["Michalewicz"] = [](const std::vector<double>& x) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            s += std::sin(x[i]) *
                 std::pow(std::sin(static_cast<double>(i + 1) * x[i] * x[i] / pi), 20.0);
        }
        return -s;
    };
    return f;
}

std::size_t dim_for(const std::string& name, std::size_t d)
{
    return (name == "BukinN6" || name == "Michalewicz") ? 2 : d;
}

}  // namespace

TEST_CASE("catalog names")
{
    const std::vector<std::string> basic = {"Rosenbrock", "Ackley",  "Sphere", "Rastrigin", "Griewank",
                                            "Zakharov",   "Alpine",  "Easom",  "Schwefel"};
    CHECK(basic_benchmark_names() == basic);
    auto all = basic;
    all.push_back("BukinN6");
    all.push_back("Michalewicz");
    CHECK(benchmark_names() == all);
    CHECK_THROWS_AS(make_benchmark("Nope", 3), LookupError);
    CHECK_THROWS_AS(optimum("Nope", 3), LookupError);
}

TEST_CASE("evaluations match the formula table at random points")
{
    const auto oracle = formulas();
    auto s = derive_stream(1, {"bench-points"});
    for (const auto& name : benchmark_names()) {
        const auto fn = make_benchmark(name, dim_for(name, 6));
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> x(fn.dim());
            for (std::size_t j = 0; j < x.size(); ++j) {
                x[j] = fn.space.lower[j] + s.next_unit() * (fn.space.upper[j] - fn.space.lower[j]);
            }
            CAPTURE(name);
            const double want = oracle.at(name)(x);
            CHECK(fn.evaluate(x) == doctest::Approx(want).epsilon(1e-12).scale(1.0));
        }
    }
}

TEST_CASE("optimum values")
{
    for (const auto& name : benchmark_names()) {
        const std::size_t d = dim_for(name, 30);
        const auto fn = make_benchmark(name, d);
        CAPTURE(name);
        const double tol =
            name == "Schwefel" || name == "Michalewicz" ? 1e-3 : 1e-8;
        CHECK(std::abs(fn.evaluate(fn.x_opt) - fn.f_opt) <= tol);
        CHECK(fn.space.contains(fn.x_opt));
    }
    CHECK(optimum("Rosenbrock", 30).x == std::vector<double>(30, 1.0));
    CHECK(optimum("Rastrigin", 30).x == std::vector<double>(30, 0.0));
    CHECK(optimum("Rastrigin", 30).value == 0.0);
    const auto easom = optimum("Easom", 30);
    CHECK(easom.x == std::vector<double>(30, pi));
    CHECK(easom.value == -1.0);
    CHECK(optimum("Sphere", 1).x == std::vector<double>{0.0});
    CHECK(optimum("Michalewicz", 2).value == doctest::Approx(-1.801).epsilon(1e-3));
    const auto bukin = make_benchmark("BukinN6", 2);
    CHECK(bukin.evaluate(std::vector<double>{-10.0, 1.0}) == 0.0);
    const auto schwefel = make_benchmark("Schwefel", 30);
    CHECK(std::abs(schwefel.evaluate(std::vector<double>(30, 420.96857))) <= 1e-3);
}

TEST_CASE("domains")
{
    const std::map<std::string, std::pair<double, double>> ranges = {
        {"Rosenbrock", {-5, 5}},     {"Ackley", {-10, 10}},  {"Sphere", {-5, 5}},
        {"Rastrigin", {-5.12, 5.12}}, {"Griewank", {-600, 600}}, {"Zakharov", {-100, 100}},
        {"Alpine", {-10, 10}},       {"Easom", {-100, 100}}, {"Schwefel", {-500, 500}}};
    for (const auto& [name, range] : ranges) {
        const auto fn = make_benchmark(name, 4);
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK(fn.space.lower[j] == range.first);
            CHECK(fn.space.upper[j] == range.second);
        }
    }
    const auto bukin = make_benchmark("BukinN6", 2);
    CHECK(bukin.space.lower == std::vector<double>{-15.0, -6.0});
    CHECK(bukin.space.upper == std::vector<double>{-5.0, 3.0});
}

TEST_CASE("dimension errors")
{
    const auto fn = make_benchmark("Sphere", 3);
    CHECK_THROWS_AS(fn.evaluate(std::vector<double>{1.0, 2.0}), ShapeError);
    CHECK_THROWS(make_benchmark("BukinN6", 3));
    CHECK_THROWS(make_benchmark("Michalewicz", 5));
    CHECK_THROWS(make_benchmark("Sphere", 0));
    CHECK_THROWS_AS(optimum("Easom", 3), ParameterError);
}

TEST_CASE("shift and rotation")
{
    const auto sphere = make_benchmark("Sphere", 5);
    auto s = derive_stream(2, {"shift"});

    SUBCASE("zero shift without rotation is the identity")
    {
        const auto same = make_transformed(sphere, std::vector<double>(5, 0.0), std::nullopt);
        for (int i = 0; i < 100; ++i) {
            std::vector<double> x(5);
            for (auto& v : x) {
                v = -5.0 + 10.0 * s.next_unit();
            }
            CHECK(same.evaluate(x) == sphere.evaluate(x));
        }
    }
    SUBCASE("shift moves the optimum")
    {
        const std::vector<double> shift = {1.0, -2.0, 0.5, 3.0, -4.0};
        const auto moved = make_transformed(sphere, shift, std::nullopt);
        CHECK(moved.x_opt == shift);
        CHECK(moved.evaluate(shift) == 0.0);
        CHECK(moved.id == "Sphere-shifted");
    }
    SUBCASE("rotation is orthogonal")
    {
        for (std::size_t d : {2u, 5u, 30u}) {
            const Matrix r = random_rotation(d, 99);
            for (std::size_t a = 0; a < d; ++a) {
                for (std::size_t b = 0; b < d; ++b) {
                    double dot = 0.0;
                    for (std::size_t k = 0; k < d; ++k) {
                        dot += r(k, a) * r(k, b);
                    }
                    CHECK(std::abs(dot - (a == b ? 1.0 : 0.0)) <= 1e-10);
                }
            }
        }
        CHECK(random_rotation(4, 1) == random_rotation(4, 1));
        CHECK(!(random_rotation(4, 1) == random_rotation(4, 2)));
    }
    SUBCASE("rotated function keeps the optimum value")
    {
        const auto ras = make_benchmark("Rastrigin", 4);
        const std::vector<double> shift = {0.5, -0.5, 1.0, 0.0};
        const auto t = make_transformed(ras, shift, 7);
        CHECK(t.id == "Rastrigin-shifted-rotated");
        CHECK(std::abs(t.evaluate(t.x_opt) - t.f_opt) <= 1e-12);
    }
    SUBCASE("optimum pushed outside the domain is rejected")
    {
        CHECK_THROWS_AS(make_transformed(sphere, std::vector<double>(5, 6.0), std::nullopt),
                        ParameterError);
        CHECK_THROWS_AS(make_transformed(sphere, std::vector<double>(4, 0.0), std::nullopt),
                        ShapeError);
    }
}
