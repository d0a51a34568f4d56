#pragma once

#include <cstdint>

#include "foursq/errors.hpp"

namespace foursq::checked {

inline std::int64_t add(std::int64_t a, std::int64_t b, const char* op)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw RangeError(op);
    return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b, const char* op)
{
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw RangeError(op);
    return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b, const char* op)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw RangeError(op);
    return r;
}

inline std::int64_t sq(std::int64_t a, const char* op) { return mul(a, a, op); }

} // namespace foursq::checked
