#include <cmath>
#include <sstream>
#include <stdexcept>

#include "foursq/arith.hpp"
#include "foursq/checked.hpp"
#include "foursq/errors.hpp"
#include "foursq/solver.hpp"

namespace foursq {

SystemQuadruple::SystemQuadruple(std::int64_t a_, std::int64_t b_, std::int64_t c_, std::int64_t d_)
    : a(a_), b(b_), c(c_), d(d_)
{
    if (a == 0 && b == 0 && c == 0 && d == 0) throw DomainError("coefficient quadruple must be nonzero");
}

std::int64_t SystemQuadruple::form(std::int64_t x, std::int64_t y, std::int64_t z, std::int64_t t) const
{
    constexpr const char* op = "linear form";
    auto acc = checked::mul(a, x, op);
    acc = checked::add(acc, checked::mul(b, y, op), op);
    acc = checked::add(acc, checked::mul(c, z, op), op);
    return checked::add(acc, checked::mul(d, t, op), op);
}

std::string to_string(const SystemQuadruple& q)
{
    std::ostringstream os;
    os << q.a << ',' << q.b << ',' << q.c << ',' << q.d;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const SystemQuadruple& q) { return os << '(' << to_string(q) << ')'; }

SystemQuadruple parse_quadruple(const std::string& text)
{
    std::array<std::int64_t, 4> v{};
    std::size_t pos = 0;
    for (int idx = 0; idx < 4; ++idx) {
        const auto end = text.find(',', pos);
        if ((idx < 3) == (end == std::string::npos)) throw std::invalid_argument("expected a,b,c,d: " + text);
        const auto field = text.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
        std::size_t used = 0;
        try {
            v[idx] = std::stoll(field, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad coefficient '" + field + "'");
        }
        if (used != field.size()) throw std::invalid_argument("bad coefficient '" + field + "'");
        pos = end + 1;
    }
    try {
        return {v[0], v[1], v[2], v[3]};
    } catch (const DomainError& e) {
        throw std::invalid_argument(e.what());
    }
}

namespace {

std::int64_t icbrt(std::int64_t n)
{
    auto r = static_cast<std::int64_t>(std::cbrt(static_cast<long double>(n)));
    auto cube = [](std::int64_t v) { return static_cast<__int128>(v) * v * v; };
    while (r > 0 && cube(r) > n) --r;
    while (cube(r + 1) <= n) ++r;
    return r;
}

} // namespace

bool TargetSet::contains(std::int64_t n) const
{
    if (n < 0) return false;
    switch (kind_) {
    case SetKind::Squares: return is_square(n);
    case SetKind::Cubes: {
        const auto r = icbrt(n);
        return r * r * r == n;
    }
    case SetKind::PowersOfTwo: return n > 0 && (n & (n - 1)) == 0;
    }
    return false;
}

std::vector<std::int64_t> TargetSet::members_up_to(std::int64_t limit) const
{
    std::vector<std::int64_t> out;
    if (limit < 0) return out;
    switch (kind_) {
    case SetKind::Squares:
        for (std::int64_t k = 0, top = isqrt(limit); k <= top; ++k) out.push_back(k * k);
        break;
    case SetKind::Cubes:
        for (std::int64_t k = 0, top = icbrt(limit); k <= top; ++k) out.push_back(k * k * k);
        break;
    case SetKind::PowersOfTwo:
        for (std::int64_t p = 1; p <= limit; p *= 2) {
            out.push_back(p);
            if (p > limit / 2) break;
        }
        break;
    }
    return out;
}

std::vector<std::int64_t> TargetSet::members_with_square_at_most(std::int64_t bound) const
{
    if (bound < 0) return {};
    return members_up_to(isqrt(bound));
}

std::string to_string(SetKind kind)
{
    switch (kind) {
    case SetKind::Squares: return "squares";
    case SetKind::Cubes: return "cubes";
    case SetKind::PowersOfTwo: return "pow2";
    }
    return "?";
}

SetKind parse_set_kind(const std::string& text)
{
    if (text == "squares") return SetKind::Squares;
    if (text == "cubes") return SetKind::Cubes;
    if (text == "pow2") return SetKind::PowersOfTwo;
    throw std::invalid_argument("unknown set '" + text + "' (expected squares|cubes|pow2)");
}

std::int64_t RestrictedSolution::norm() const
{
    return foursq::norm(Quaternion{x, y, z, t});
}

std::ostream& operator<<(std::ostream& os, const RestrictedSolution& s)
{
    return os << "(x=" << s.x << ", y=" << s.y << ", z=" << s.z << ", t=" << s.t << ", n=" << s.n << ')';
}

} // namespace foursq
