#pragma once

// Lipschitz quaternions: a + b i + c j + d k with a, b, c, d in Z,
// i^2 = j^2 = k^2 = ijk = -1.

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace foursq {

struct Quaternion {
    std::int64_t r = 0; ///< real part
    std::int64_t i = 0;
    std::int64_t j = 0;
    std::int64_t k = 0;

    constexpr Quaternion() = default;
    constexpr Quaternion(std::int64_t re, std::int64_t ic = 0, std::int64_t jc = 0,
                         std::int64_t kc = 0)
        : r(re), i(ic), j(jc), k(kc) {}

    constexpr std::array<std::int64_t, 4> components() const { return {r, i, j, k}; }
    constexpr bool is_zero() const { return r == 0 && i == 0 && j == 0 && k == 0; }

    friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

/// Hamilton product p*q. Throws RangeError on overflow.
Quaternion mul(const Quaternion& p, const Quaternion& q);

inline Quaternion operator*(const Quaternion& p, const Quaternion& q) { return mul(p, q); }

constexpr Quaternion conj(const Quaternion& q) { return {q.r, -q.i, -q.j, -q.k}; }

/// Sum of squared components. Throws RangeError on overflow.
std::int64_t norm(const Quaternion& q);

constexpr std::int64_t re(const Quaternion& q) { return q.r; }

/// Returns r with r*q == p when p*conj(q) is componentwise divisible by norm(q).
/// Throws DomainError for q == 0.
std::optional<Quaternion> try_div_right_exact(const Quaternion& p, const Quaternion& q);

/// u^{-1} g v = conj(u) g v / norm(u), present only when the quotient is integral.
/// norm(u) must equal norm(v) (DomainError otherwise).
std::optional<Quaternion> sandwich(const Quaternion& u, const Quaternion& g, const Quaternion& v);

/// The embedding of a coordinate vector (x, y, z, t) used throughout the
/// solver: x - y i - z j - t k. Its product with a + b i + c j + d k has real
/// part ax + by + cz + dt.
constexpr Quaternion embed_solution(std::int64_t x, std::int64_t y, std::int64_t z, std::int64_t t)
{
    return {x, -y, -z, -t};
}

constexpr std::array<std::int64_t, 4> extract_solution(const Quaternion& g)
{
    return {g.r, -g.i, -g.j, -g.k};
}

std::string to_string(const Quaternion& q);
std::ostream& operator<<(std::ostream& os, const Quaternion& q);

} // namespace foursq
