#include "initpop/rng.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace initpop {
namespace {

constexpr std::uint64_t splitmix64(std::uint64_t& x) noexcept
{
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t mix(std::uint64_t x) noexcept { return splitmix64(x); }

std::uint64_t fnv1a(const std::string& s) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t label_hash(const Label& label) noexcept
{
    constexpr std::uint64_t string_tag = 0x5f3759df5f3759dfULL;
    constexpr std::uint64_t int_tag = 0x2545f4914f6cdd1dULL;
    if (const auto* s = std::get_if<std::string>(&label)) {
        return mix(fnv1a(*s) ^ string_tag);
    }
    return mix(static_cast<std::uint64_t>(std::get<std::int64_t>(label)) ^ int_tag);
}

}  // namespace

std::string to_string(const Lineage& lineage)
{
    std::string out;
    for (const auto& label : lineage) {
        if (!out.empty()) {
            out += '/';
        }
        if (const auto* s = std::get_if<std::string>(&label)) {
            out += *s;
        } else {
            out += std::to_string(std::get<std::int64_t>(label));
        }
    }
    return out;
}

RngStream::RngStream(std::uint64_t master_seed, Lineage lineage)
    : seed_(master_seed), lineage_(std::move(lineage))
{
    std::uint64_t h = mix(master_seed);
    for (const auto& label : lineage_) {
        // Position-dependent chaining: [a, b] and [b, a] differ.
        h = mix(std::rotl(h, 17) ^ label_hash(label));
    }
    std::uint64_t sm = h;
    for (auto& word : state_) {
        word = splitmix64(sm);
    }
    // All-zero state is the only invalid xoshiro state.
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) {
        state_[0] = 1;
    }
}

RngStream RngStream::child(Label label) const
{
    Lineage extended = lineage_;
    extended.push_back(std::move(label));
    return RngStream(seed_, std::move(extended));
}

std::uint64_t RngStream::next_u64() noexcept
{
    const std::uint64_t result = std::rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = std::rotl(state_[3], 45);
    return result;
}

double RngStream::next_unit() noexcept
{
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::next_index(std::uint64_t n) noexcept
{
    // Lemire's nearly-divisionless bounded integer.
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
        const std::uint64_t threshold = (0 - n) % n;
        while (low < threshold) {
            m = static_cast<unsigned __int128>(next_u64()) * n;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

double RngStream::next_normal() noexcept
{
    const double u1 = next_open_unit();
    const double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

RngStream derive_stream(std::uint64_t master_seed, Lineage lineage)
{
    if (lineage.empty()) {
        throw std::invalid_argument("derive_stream: lineage must not be empty");
    }
    return RngStream(master_seed, std::move(lineage));
}

}  // namespace initpop
