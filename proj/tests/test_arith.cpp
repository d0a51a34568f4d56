#include <doctest.h>

#include <algorithm>
#include <limits>
#include <map>
#include <tuple>
#include <vector>

#include "foursq/arith.hpp"
#include "foursq/errors.hpp"

using foursq::FourSquareRep;
using foursq::ThreeSquareRep;

TEST_CASE("ord2")
{
    CHECK(foursq::ord2(16) == 4);
    CHECK(foursq::ord2(22) == 1);
    CHECK(foursq::ord2(7) == 0);
    CHECK(foursq::ord2(std::int64_t{1} << 62) == 62);
    CHECK_THROWS_AS(foursq::ord2(0), foursq::DomainError);
    CHECK_THROWS_AS(foursq::ord2(-4), foursq::DomainError);
}

TEST_CASE("integer roots")
{
    for (std::int64_t n = 0; n < 5000; ++n) {
        const auto s = foursq::isqrt(n);
        REQUIRE(s * s <= n);
        REQUIRE((s + 1) * (s + 1) > n);
        const auto f = foursq::iroot4_floor(n), c = foursq::iroot4_ceil(n);
        REQUIRE(f * f * f * f <= n);
        REQUIRE((f + 1) * (f + 1) * (f + 1) * (f + 1) > n);
        REQUIRE(c * c * c * c >= n);
        REQUIRE((c == 0 || (c - 1) * (c - 1) * (c - 1) * (c - 1) < n));
        REQUIRE(foursq::is_square(n) == (s * s == n));
    }
    const std::int64_t big = 3'037'000'499LL;
    CHECK(foursq::isqrt(big * big) == big);
    CHECK(foursq::isqrt(big * big - 1) == big - 1);
    CHECK(foursq::iroot4_floor(38LL * 3'740'000'000LL) == 613);
    CHECK(foursq::iroot4_ceil(38LL * 3'740'000'000LL) == 614);
    CHECK(foursq::isqrt(std::numeric_limits<std::int64_t>::max()) == big);
}

TEST_CASE("three-square criterion")
{
    CHECK_FALSE(foursq::is_three_square(7));
    CHECK_FALSE(foursq::is_three_square(28));
    CHECK(foursq::is_three_square(0));
    CHECK_THROWS_AS(foursq::is_three_square(-1), foursq::DomainError);

    constexpr std::int64_t kLimit = 10'000;
    std::vector<bool> brute(kLimit + 1, false);
    for (std::int64_t a = 0; a <= 100; ++a)
        for (std::int64_t b = 0; b <= a; ++b)
            for (std::int64_t c = 0; c <= b; ++c) {
                const auto v = a * a + b * b + c * c;
                if (v <= kLimit) brute[v] = true;
            }
    for (std::int64_t n = 0; n <= kLimit; ++n) {
        REQUIRE(foursq::is_three_square(n) == brute[n]);
        REQUIRE(foursq::three_square_reps(n).empty() == !brute[n]);
    }
}

TEST_CASE("three-square representations")
{
    CHECK(foursq::three_square_reps(0) == std::vector<ThreeSquareRep>{{0, 0, 0}});
    CHECK(foursq::three_square_reps(7).empty());
    CHECK(foursq::three_square_reps(9) == std::vector<ThreeSquareRep>{{3, 0, 0}, {2, 2, 1}});
    for (std::int64_t n = 0; n <= 2000; ++n) {
        const auto reps = foursq::three_square_reps(n);
        for (std::size_t idx = 0; idx < reps.size(); ++idx) {
            const auto& r = reps[idx];
            REQUIRE(r.a >= r.b);
            REQUIRE(r.b >= r.c);
            REQUIRE(r.c >= 0);
            REQUIRE(r.a * r.a + r.b * r.b + r.c * r.c == n);
            if (idx > 0) {
                const auto& p = reps[idx - 1];
                REQUIRE(std::tie(p.a, p.b, p.c) > std::tie(r.a, r.b, r.c));
            }
        }
    }
}

TEST_CASE("early stop of the enumerator")
{
    int seen = 0;
    const bool finished = foursq::for_each_three_square_rep(9, [&](const ThreeSquareRep&) {
        ++seen;
        return false;
    });
    CHECK_FALSE(finished);
    CHECK(seen == 1);
}

TEST_CASE("four-square representations")
{
    auto as_set = [](std::vector<FourSquareRep> v) {
        std::sort(v.begin(), v.end(), [](const auto& p, const auto& q) {
            return std::tie(p.x, p.y, p.z, p.t) < std::tie(q.x, q.y, q.z, q.t);
        });
        return v;
    };
    CHECK(foursq::four_square_reps(0) == std::vector<FourSquareRep>{{0, 0, 0, 0}});
    CHECK(foursq::four_square_reps(22) == std::vector<FourSquareRep>{{4, 2, 1, 1}, {3, 3, 2, 0}});
    CHECK(foursq::four_square_reps(39) == std::vector<FourSquareRep>{{6, 1, 1, 1}, {5, 3, 2, 1}});

    // numbers with exactly two canonical representations
    const std::map<std::int64_t, std::vector<FourSquareRep>> table{
        {10, {{3, 1, 0, 0}, {2, 2, 1, 1}}}, {13, {{3, 2, 0, 0}, {2, 2, 2, 1}}},
        {17, {{4, 1, 0, 0}, {3, 2, 2, 0}}}, {19, {{4, 1, 1, 1}, {3, 3, 1, 0}}},
        {21, {{4, 2, 1, 0}, {3, 2, 2, 2}}}, {22, {{4, 2, 1, 1}, {3, 3, 2, 0}}},
        {29, {{5, 2, 0, 0}, {4, 3, 2, 0}}}, {31, {{5, 2, 1, 1}, {3, 3, 3, 2}}},
        {39, {{6, 1, 1, 1}, {5, 3, 2, 1}}},
    };
    for (const auto& [l, expected] : table) {
        CAPTURE(l);
        CHECK(as_set(foursq::four_square_reps(l)) == as_set(expected));
    }

    for (std::int64_t m = 0; m <= 500; ++m)
        for (const auto& r : foursq::four_square_reps(m)) {
            REQUIRE(r.x >= r.y);
            REQUIRE(r.y >= r.z);
            REQUIRE(r.z >= r.t);
            REQUIRE(r.t >= 0);
            REQUIRE(r.x * r.x + r.y * r.y + r.z * r.z + r.t * r.t == m);
        }
}
