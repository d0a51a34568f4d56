#pragma once

// Scalar helpers: 2-adic order, the three-square criterion, and
// enumeration of canonical three- and four-square representations.

#include <cstdint>
#include <functional>
#include <vector>

namespace foursq {

/// A^2 + B^2 + C^2 with A >= B >= C >= 0.
struct ThreeSquareRep {
    std::int64_t a = 0, b = 0, c = 0;
    friend bool operator==(const ThreeSquareRep&, const ThreeSquareRep&) = default;
};

/// x^2 + y^2 + z^2 + t^2 with x >= y >= z >= t >= 0.
struct FourSquareRep {
    std::int64_t x = 0, y = 0, z = 0, t = 0;
    friend bool operator==(const FourSquareRep&, const FourSquareRep&) = default;
};

/// Largest e with 2^e | n. DomainError for n <= 0.
int ord2(std::int64_t n);

/// floor(sqrt(n)) for n >= 0.
std::int64_t isqrt(std::int64_t n);

/// floor(n^(1/4)) and ceil(n^(1/4)) for n >= 0, exact.
std::int64_t iroot4_floor(std::int64_t n);
std::int64_t iroot4_ceil(std::int64_t n);

bool is_square(std::int64_t n);

/// True iff n is not of the form 4^r (8s + 7). DomainError for n < 0.
bool is_three_square(std::int64_t n);

/// Calls `visit` on canonical triples of n in lexicographically decreasing
/// order until it returns false. Returns false iff stopped early.
bool for_each_three_square_rep(std::int64_t n, const std::function<bool(const ThreeSquareRep&)>& visit);

std::vector<ThreeSquareRep> three_square_reps(std::int64_t n);

/// Canonical quadruples of m in lexicographically decreasing order.
std::vector<FourSquareRep> four_square_reps(std::int64_t m);

} // namespace foursq
