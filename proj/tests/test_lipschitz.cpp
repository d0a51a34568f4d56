#include <doctest.h>

#include <limits>
#include <random>

#include "foursq/errors.hpp"
#include "foursq/quaternion.hpp"

using foursq::Quaternion;

namespace {

Quaternion random_q(std::mt19937_64& rng, std::int64_t bound)
{
    std::uniform_int_distribution<std::int64_t> d(-bound, bound);
    return {d(rng), d(rng), d(rng), d(rng)};
}

} // namespace

TEST_CASE("hamilton product")
{
    CHECK(Quaternion{2, 3, 3, 0} * Quaternion{1, 2, 0, 0} == Quaternion{-4, 7, 3, -6});
    CHECK(Quaternion{1, 0, -2, 0} * Quaternion{-2, -1, -1, -4} == Quaternion{-4, 7, 3, -6});
    CHECK(Quaternion{1, 3, 0, 0} * Quaternion{1, 1, 1, 0} == Quaternion{-2, 4, 1, 3});
    const Quaternion q{5, -7, 11, 13};
    CHECK(q * Quaternion{1} == q);
    CHECK(Quaternion{1} * q == q);
    const Quaternion i{0, 1, 0, 0}, j{0, 0, 1, 0}, k{0, 0, 0, 1};
    CHECK(i * i == Quaternion{-1});
    CHECK(i * j == k);
    CHECK(j * i == Quaternion{0, 0, 0, -1});
    CHECK(i * j * k == Quaternion{-1});
}

TEST_CASE("conj, norm, re")
{
    CHECK(foursq::conj(Quaternion{1, 2, -3, 4}) == Quaternion{1, -2, 3, -4});
    CHECK(foursq::norm(Quaternion{1, 1, 2, 4}) == 22);
    CHECK(foursq::norm(Quaternion{}) == 0);
    CHECK(foursq::re(Quaternion{-9, 1, 2, 3}) == -9);

    const Quaternion beta{2, 3, 3, 0};
    for (std::int64_t x = -3; x <= 3; ++x)
        for (std::int64_t y = -3; y <= 3; ++y)
            for (std::int64_t z = -3; z <= 3; ++z)
                for (std::int64_t t = -3; t <= 3; ++t)
                    REQUIRE(foursq::re(foursq::embed_solution(x, y, z, t) * beta) == 2 * x + 3 * y + 3 * z);
}

TEST_CASE("embedding round trip")
{
    const auto g = foursq::embed_solution(1, -2, 3, -4);
    CHECK(g == Quaternion{1, 2, -3, 4});
    CHECK(foursq::extract_solution(g) == std::array<std::int64_t, 4>{1, -2, 3, -4});
}

TEST_CASE("exact right division")
{
    CHECK(foursq::try_div_right_exact({-4, 7, 3, -6}, {1, 2, 0, 0}) == Quaternion{2, 3, 3, 0});
    const Quaternion q{3, -1, 4, 1};
    CHECK(foursq::try_div_right_exact(q, {1}) == q);
    CHECK_FALSE(foursq::try_div_right_exact({1, 1, 0, 0}, {1, 1, 1, 0}).has_value());
    CHECK_THROWS_AS(foursq::try_div_right_exact(q, {}), foursq::DomainError);
}

TEST_CASE("sandwich")
{
    const Quaternion u{1, 2, 0, 0}, v{1, 0, -2, 0};
    CHECK(foursq::sandwich(u, foursq::embed_solution(5, 0, 0, 0), v) == Quaternion{1, -2, -2, 4});
    CHECK(foursq::sandwich({1, 1, 1, 0}, {7}, {1, 1, 1, 0}) == Quaternion{7});
    CHECK_FALSE(foursq::sandwich(u, {1, 1, 0, 0}, v).has_value());
    CHECK_THROWS_AS(foursq::sandwich({}, {1}, {}), foursq::DomainError);
    CHECK_THROWS_AS(foursq::sandwich(u, {1}, {1, 1, 1, 0}), foursq::DomainError);
}

TEST_CASE("overflow is reported")
{
    const auto big = std::numeric_limits<std::int64_t>::max() / 2;
    CHECK_THROWS_AS(foursq::norm(Quaternion{big, 0, 0, 0}), foursq::RangeError);
    CHECK_THROWS_AS(foursq::mul(Quaternion(big, big, 0, 0), Quaternion(4, 4, 0, 0)), foursq::RangeError);
}

TEST_CASE("algebraic properties on random inputs")
{
    std::mt19937_64 rng(20240601);
    for (int iter = 0; iter < 2000; ++iter) {
        const auto p = random_q(rng, 1000), q = random_q(rng, 1000);
        REQUIRE(foursq::norm(p * q) == foursq::norm(p) * foursq::norm(q));
        REQUIRE(foursq::conj(p * q) == foursq::conj(q) * foursq::conj(p));
        REQUIRE(foursq::conj(foursq::conj(p)) == p);
        REQUIRE(p * foursq::conj(p) == Quaternion{foursq::norm(p)});
        if (!q.is_zero()) {
            const auto r = foursq::try_div_right_exact(p * q, q);
            REQUIRE(r.has_value());
            REQUIRE(*r == p);
        }
    }
}

TEST_CASE("sandwich contract and trace transfer")
{
    // beta * u == v * image for the first pair of the (2,3,3,0) rule
    const Quaternion beta{2, 3, 3, 0}, u{1, 2, 0, 0}, v{1, 0, -2, 0};
    const Quaternion image = *foursq::try_div_right_exact(foursq::conj(v) * beta * u, Quaternion{foursq::norm(v)});
    REQUIRE(beta * u == v * image);
    std::mt19937_64 rng(7);
    int hits = 0;
    for (int iter = 0; iter < 5000; ++iter) {
        const auto g = random_q(rng, 50);
        const auto r = foursq::sandwich(u, g, v);
        if (!r) continue;
        ++hits;
        REQUIRE(Quaternion{foursq::norm(u)} * *r == foursq::conj(u) * g * v);
        REQUIRE(foursq::norm(*r) == foursq::norm(g));
        REQUIRE(foursq::re(*r * image) == foursq::re(g * beta));
    }
    CHECK(hits > 0);
}
