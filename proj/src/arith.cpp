#include "foursq/arith.hpp"

#include <cmath>

#include "foursq/errors.hpp"

namespace foursq {

int ord2(std::int64_t n)
{
    if (n <= 0) throw DomainError("ord2: argument must be positive");
    return __builtin_ctzll(static_cast<unsigned long long>(n));
}

std::int64_t isqrt(std::int64_t n)
{
    if (n < 0) throw DomainError("isqrt: negative argument");
    using wide = __int128;
    auto s = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
    while (s > 0 && wide{s} * s > n) --s;
    while (wide{s + 1} * (s + 1) <= n) ++s;
    return s;
}

// floor(sqrt(floor(sqrt(n)))) == floor(n^(1/4)) for integers.
std::int64_t iroot4_floor(std::int64_t n) { return isqrt(isqrt(n)); }

std::int64_t iroot4_ceil(std::int64_t n)
{
    const auto f = iroot4_floor(n);
    return f * f * f * f == n ? f : f + 1;
}

bool is_square(std::int64_t n)
{
    if (n < 0) return false;
    // quadratic residues mod 16 are 0, 1, 4, 9
    switch (n & 15) {
    case 0: case 1: case 4: case 9: break;
    default: return false;
    }
    const auto s = isqrt(n);
    return s * s == n;
}

bool is_three_square(std::int64_t n)
{
    if (n < 0) throw DomainError("is_three_square: negative argument");
    if (n == 0) return true;
    n >>= 2 * (ord2(n) / 2);
    return n % 8 != 7;
}

bool for_each_three_square_rep(std::int64_t n, const std::function<bool(const ThreeSquareRep&)>& visit)
{
    if (n < 0) throw DomainError("three_square_reps: negative argument");
    if (!is_three_square(n)) return true;
    for (std::int64_t a = isqrt(n); 3 * a * a >= n; --a) {
        const auto rest = n - a * a;
        for (std::int64_t b = std::min(a, isqrt(rest)); b >= 0 && 2 * b * b >= rest; --b) {
            const auto c2 = rest - b * b;
            if (!is_square(c2)) continue;
            if (!visit({a, b, isqrt(c2)})) return false;
        }
        if (a == 0) break;
    }
    return true;
}

std::vector<ThreeSquareRep> three_square_reps(std::int64_t n)
{
    std::vector<ThreeSquareRep> out;
    for_each_three_square_rep(n, [&](const ThreeSquareRep& r) {
        out.push_back(r);
        return true;
    });
    return out;
}

std::vector<FourSquareRep> four_square_reps(std::int64_t m)
{
    if (m < 0) throw DomainError("four_square_reps: negative argument");
    std::vector<FourSquareRep> out;
    for (std::int64_t x = isqrt(m); 4 * x * x >= m; --x) {
        for (const auto& r : three_square_reps(m - x * x)) {
            if (r.a <= x) out.push_back({x, r.a, r.b, r.c});
        }
        if (x == 0) break;
    }
    return out;
}

} // namespace foursq
