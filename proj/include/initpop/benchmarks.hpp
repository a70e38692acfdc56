#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "initpop/initializers.hpp"
#include "initpop/matrix.hpp"

namespace initpop {

/// Objective function with its default domain and known global optimum.
struct BenchmarkFn {
    std::string id;
    SearchSpace space;
    std::vector<double> x_opt;
    double f_opt = 0.0;
    std::function<double(std::span<const double>)> evaluator;

    [[nodiscard]] std::size_t dim() const noexcept { return space.dim(); }

    /// Throws ShapeError when x.size() != dim().
    [[nodiscard]] double evaluate(std::span<const double> x) const;
};

/// The nine basic functions f1..f9 in table order.
const std::vector<std::string>& basic_benchmark_names();

/// Basic functions followed by the 2-D demo functions BukinN6 and Michalewicz.
const std::vector<std::string>& benchmark_names();

/// Builds a catalog function for dimension d. BukinN6 and Michalewicz exist
/// only for d = 2; Easom's optimum is only defined for even d.
BenchmarkFn make_benchmark(std::string_view id, std::size_t d);

struct Optimum {
    std::vector<double> x;
    double value = 0.0;
};

Optimum optimum(std::string_view id, std::size_t d);

/// Seeded random orthogonal matrix: QR of a Gaussian matrix with the signs
/// of R's diagonal folded into Q.
Matrix random_rotation(std::size_t d, std::uint64_t seed);

/// x -> base(R (x - shift)); R is the identity when no seed is given. The
/// recorded optimum is shift + R^T x_opt, which must stay inside the domain.
BenchmarkFn make_transformed(const BenchmarkFn& base, std::span<const double> shift,
                             std::optional<std::uint64_t> rotation_seed);

}  // namespace initpop
