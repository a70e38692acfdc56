#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace initpop {

/// One step of a derivation path. Strings and integers hash differently, so
/// the label "1" and the integer 1 yield different streams.
using Label = std::variant<std::string, std::int64_t>;
using Lineage = std::vector<Label>;

std::string to_string(const Lineage& lineage);

/// Deterministic random stream derived from a master seed and a lineage.
///
/// The generator is xoshiro256** (period 2^256 - 1). Its state is obtained by
/// hashing the master seed together with every lineage label, so sibling
/// streams can be created in any order and on any thread.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, Lineage lineage);

    /// Stream whose lineage is this one's lineage plus `label`.
    [[nodiscard]] RngStream child(Label label) const;

    std::uint64_t next_u64() noexcept;

    /// Uniform on [0, 1) with 53 bits of resolution.
    double next_unit() noexcept;

    /// Uniform on (0, 1]; safe as the argument of a logarithm.
    double next_open_unit() noexcept { return 1.0 - next_unit(); }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t next_index(std::uint64_t n) noexcept;

    /// Standard normal variate (Box-Muller, one output per call).
    double next_normal() noexcept;

    [[nodiscard]] std::uint64_t master_seed() const noexcept { return seed_; }
    [[nodiscard]] const Lineage& lineage() const noexcept { return lineage_; }

private:
    std::uint64_t seed_;
    Lineage lineage_;
    std::array<std::uint64_t, 4> state_{};
};

/// Equivalent to RngStream(master_seed, lineage); rejects an empty lineage.
RngStream derive_stream(std::uint64_t master_seed, Lineage lineage);

}  // namespace initpop
