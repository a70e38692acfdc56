#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "initpop/rng.hpp"

using namespace initpop;

namespace {

std::vector<std::uint64_t> first_outputs(RngStream s, std::size_t n)
{
    std::vector<std::uint64_t> out(n);
    for (auto& v : out) {
        v = s.next_u64();
    }
    return out;
}

}  // namespace

TEST_CASE("same seed and lineage reproduce the stream")
{
    const auto a = first_outputs(derive_stream(1, {"a"}), 1000);
    const auto b = first_outputs(derive_stream(1, {"a"}), 1000);
    CHECK(a == b);
}

TEST_CASE("different labels or seeds give different streams")
{
    const auto base = first_outputs(derive_stream(1, {"a"}), 1000);
    CHECK(base != first_outputs(derive_stream(1, {"b"}), 1000));
    CHECK(base != first_outputs(derive_stream(2, {"a"}), 1000));
    // Label type matters: "1" and 1 are distinct steps.
    CHECK(first_outputs(derive_stream(1, {"1"}), 100) !=
          first_outputs(derive_stream(1, {std::int64_t{1}}), 100));
    // Order of labels matters.
    CHECK(first_outputs(derive_stream(1, {"a", "b"}), 100) !=
          first_outputs(derive_stream(1, {"b", "a"}), 100));
}

TEST_CASE("child streams do not depend on creation order or parent consumption")
{
    auto parent = derive_stream(9, {"root"});
    const auto c1 = first_outputs(parent.child("x"), 50);
    for (int i = 0; i < 100; ++i) {
        (void)parent.next_u64();
    }
    (void)parent.child("y");
    CHECK(first_outputs(parent.child("x"), 50) == c1);
    CHECK(first_outputs(derive_stream(9, {"root", "x"}), 50) == c1);
}

TEST_CASE("empty lineage is rejected")
{
    CHECK_THROWS_AS(derive_stream(1, {}), std::invalid_argument);
}

TEST_CASE("lineage text joins labels")
{
    CHECK(to_string(Lineage{"de-a", "LHS", std::int64_t{30}}) == "de-a/LHS/30");
}

TEST_CASE("unit draws: range, mean and variance")
{
    auto s = derive_stream(42, {"unit"});
    const std::size_t n = 100000;
    double sum = 0.0;
    double sum2 = 0.0;
    bool in_range = true;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = s.next_unit();
        in_range = in_range && u >= 0.0 && u < 1.0;
        sum += u;
        sum2 += u * u;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(in_range);
    CHECK(std::abs(mean - 0.5) <= 0.01);
    CHECK(std::abs(var - 1.0 / 12.0) <= 0.005);
}

TEST_CASE("open unit draws avoid zero")
{
    auto s = derive_stream(3, {"open"});
    for (int i = 0; i < 10000; ++i) {
        const double u = s.next_open_unit();
        REQUIRE(u > 0.0);
        REQUIRE(u <= 1.0);
    }
}

TEST_CASE("bounded integers are uniform")
{
    auto s = derive_stream(5, {"index"});
    const std::uint64_t k = 7;
    const std::size_t n = 70000;
    std::vector<double> counts(k, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto v = s.next_index(k);
        REQUIRE(v < k);
        counts[v] += 1.0;
    }
    double chi2 = 0.0;
    const double expected = static_cast<double>(n) / k;
    for (double c : counts) {
        chi2 += (c - expected) * (c - expected) / expected;
    }
    // 6 degrees of freedom; the 0.999 quantile is 22.46.
    CHECK(chi2 < 22.46);
}

TEST_CASE("normal draws have unit moments")
{
    auto s = derive_stream(11, {"normal"});
    const std::size_t n = 100000;
    double sum = 0.0;
    double sum2 = 0.0;
    std::size_t beyond2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double z = s.next_normal();
        sum += z;
        sum2 += z * z;
        beyond2 += std::abs(z) > 2.0 ? 1 : 0;
    }
    const double mean = sum / n;
    CHECK(std::abs(mean) < 0.015);
    CHECK(std::abs(sum2 / n - mean * mean - 1.0) < 0.02);
    // P(|Z| > 2) = 0.0455
    CHECK(std::abs(static_cast<double>(beyond2) / n - 0.0455) < 0.003);
}

TEST_CASE("consecutive 64-bit outputs show no repeats in a short window")
{
    auto s = derive_stream(0, {"repeat"});
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 100000; ++i) {
        seen.insert(s.next_u64());
    }
    CHECK(seen.size() == 100000);
}
