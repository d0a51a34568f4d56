#include "foursq/quaternion.hpp"

#include <sstream>

#include "foursq/checked.hpp"
#include "foursq/errors.hpp"

namespace foursq {

namespace {

// a1*b1 + s2*a2*b2 + s3*a3*b3 + s4*a4*b4 with signs in {+1, -1}
std::int64_t signed_dot(std::int64_t a1, std::int64_t b1, int s2, std::int64_t a2, std::int64_t b2,
                        int s3, std::int64_t a3, std::int64_t b3, int s4, std::int64_t a4,
                        std::int64_t b4)
{
    constexpr const char* op = "quaternion mul";
    auto acc = checked::mul(a1, b1, op);
    auto step = [&](int s, std::int64_t a, std::int64_t b) {
        auto prod = checked::mul(a, b, op);
        acc = s > 0 ? checked::add(acc, prod, op) : checked::sub(acc, prod, op);
    };
    step(s2, a2, b2);
    step(s3, a3, b3);
    step(s4, a4, b4);
    return acc;
}

} // namespace

Quaternion mul(const Quaternion& p, const Quaternion& q)
{
    return {
        signed_dot(p.r, q.r, -1, p.i, q.i, -1, p.j, q.j, -1, p.k, q.k),
        signed_dot(p.r, q.i, +1, p.i, q.r, +1, p.j, q.k, -1, p.k, q.j),
        signed_dot(p.r, q.j, -1, p.i, q.k, +1, p.j, q.r, +1, p.k, q.i),
        signed_dot(p.r, q.k, +1, p.i, q.j, -1, p.j, q.i, +1, p.k, q.r),
    };
}

std::int64_t norm(const Quaternion& q)
{
    constexpr const char* op = "quaternion norm";
    std::int64_t n = checked::sq(q.r, op);
    n = checked::add(n, checked::sq(q.i, op), op);
    n = checked::add(n, checked::sq(q.j, op), op);
    return checked::add(n, checked::sq(q.k, op), op);
}

namespace {

std::optional<Quaternion> divide_exact(const Quaternion& p, std::int64_t d)
{
    if (p.r % d != 0 || p.i % d != 0 || p.j % d != 0 || p.k % d != 0) return std::nullopt;
    return Quaternion{p.r / d, p.i / d, p.j / d, p.k / d};
}

} // namespace

std::optional<Quaternion> try_div_right_exact(const Quaternion& p, const Quaternion& q)
{
    if (q.is_zero()) throw DomainError("try_div_right_exact: division by zero quaternion");
    return divide_exact(mul(p, conj(q)), norm(q));
}

std::optional<Quaternion> sandwich(const Quaternion& u, const Quaternion& g, const Quaternion& v)
{
    if (u.is_zero()) throw DomainError("sandwich: zero conjugator");
    const auto nu = norm(u);
    if (nu != norm(v)) throw DomainError("sandwich: conjugators must have equal norm");
    return divide_exact(mul(mul(conj(u), g), v), nu);
}

std::string to_string(const Quaternion& q)
{
    std::ostringstream os;
    os << q;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q)
{
    return os << '(' << q.r << ", " << q.i << ", " << q.j << ", " << q.k << ')';
}

} // namespace foursq
