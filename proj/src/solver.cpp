#include <algorithm>
#include <array>
#include <sstream>

#include "foursq/arith.hpp"
#include "foursq/checked.hpp"
#include "foursq/errors.hpp"
#include "foursq/solver.hpp"

namespace foursq {

namespace {

using Triple = std::array<std::int64_t, 3>;

// Distinct signed permutations of (a, b, c): index permutations in
// lexicographic order, then sign patterns from (+,+,+) to (-,-,-).
int signed_permutations(const ThreeSquareRep& rep, std::array<Triple, 48>& out)
{
    static constexpr std::array<std::array<int, 3>, 6> kPerms{{
        {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
    }};
    const Triple base{rep.a, rep.b, rep.c};
    std::array<Triple, 6> perms{};
    int nperms = 0;
    for (const auto& p : kPerms) {
        const Triple v{base[p[0]], base[p[1]], base[p[2]]};
        if (std::find(perms.begin(), perms.begin() + nperms, v) == perms.begin() + nperms) perms[nperms++] = v;
    }
    int count = 0;
    for (int pi = 0; pi < nperms; ++pi) {
        const auto& v = perms[pi];
        for (int mask = 0; mask < 8; ++mask) {
            Triple s = v;
            bool skip = false;
            for (int idx = 0; idx < 3; ++idx) {
                if (mask & (4 >> idx)) {
                    if (v[idx] == 0) {
                        skip = true;
                        break;
                    }
                    s[idx] = -v[idx];
                }
            }
            if (!skip) out[count++] = s;
        }
    }
    return count;
}

std::int64_t checked_lm(std::int64_t l, std::int64_t m) { return checked::mul(l, m, "l*m"); }

enum class Filter { Mod3, Mod5, Mod5OrNotMod3 };

Filter filter_for(const SystemQuadruple& q)
{
    const auto& s = supported_quadruples();
    const auto idx = std::find(s.begin(), s.end(), q) - s.begin();
    // supported order: 1122 1222 2230 1330 1240 1124 2340 1125 1235
    switch (idx) {
    case 0: case 1: case 2: case 6: return Filter::Mod3;
    case 3: case 4: case 5: case 7: return Filter::Mod5;
    case 8: return Filter::Mod5OrNotMod3;
    default: throw UnsupportedQuadruple("unsupported quadruple " + to_string(q));
    }
}

bool passes(Filter f, std::int64_t rest, std::int64_t n)
{
    const auto r3 = rest % 3, r5 = rest % 5;
    const bool mod5 = r5 == 0 || r5 == 1 || r5 == 4;
    switch (f) {
    case Filter::Mod3: return r3 == 0 || r3 == 2;
    case Filter::Mod5: return mod5;
    case Filter::Mod5OrNotMod3: return mod5 || n % 3 != 0;
    }
    return false;
}

// Zero-coefficient coordinates carry no sign information.
RestrictedSolution fold_free_signs(RestrictedSolution s, const SystemQuadruple& q)
{
    if (q.a == 0) s.x = std::abs(s.x);
    if (q.b == 0) s.y = std::abs(s.y);
    if (q.c == 0) s.z = std::abs(s.z);
    if (q.d == 0) s.t = std::abs(s.t);
    return s;
}

bool in_window(std::int64_t n, const SolveOptions& opts)
{
    if (opts.n_min && n < *opts.n_min) return false;
    if (opts.n_max && n > *opts.n_max) return false;
    return !opts.n_filter || opts.n_filter(n);
}

} // namespace

bool for_each_linear_solution(std::int64_t m, std::int64_t n, const SystemQuadruple& quad,
                              const std::function<bool(const RestrictedSolution&)>& visit)
{
    if (m < 0) throw DomainError("linear system: m must be nonnegative");
    const auto lm = checked_lm(quad.l(), m);
    const auto n2 = checked::sq(n, "n^2");
    if (n2 > lm) throw DomainError("linear system: n^2 exceeds l*m");
    const auto beta = quad.beta();
    std::array<Triple, 48> variants;
    return for_each_three_square_rep(lm - n2, [&](const ThreeSquareRep& rep) {
        const int count = signed_permutations(rep, variants);
        for (int idx = 0; idx < count; ++idx) {
            const Quaternion rho{n, variants[idx][0], variants[idx][1], variants[idx][2]};
            const auto gamma = try_div_right_exact(rho, beta);
            if (!gamma) continue;
            const auto xyzt = extract_solution(*gamma);
            if (!visit({xyzt[0], xyzt[1], xyzt[2], xyzt[3], n})) return false;
        }
        return true;
    });
}

std::optional<RestrictedSolution> solve_linear_system(std::int64_t m, std::int64_t n, const SystemQuadruple& quad)
{
    std::optional<RestrictedSolution> found;
    for_each_linear_solution(m, n, quad, [&](const RestrictedSolution& s) {
        found = s;
        return false;
    });
    if (found && (found->norm() != m || quad.form(found->x, found->y, found->z, found->t) != n))
        throw std::logic_error("solve_linear_system: invalid certificate");
    return found;
}

std::vector<std::int64_t> admissible_n(std::int64_t m, const SystemQuadruple& quad, const TargetSet& set)
{
    const auto filter = filter_for(quad);
    if (m < 0) throw DomainError("admissible_n: m must be nonnegative");
    const auto lm = checked_lm(quad.l(), m);
    std::vector<std::int64_t> out;
    for (const auto n : set.members_with_square_at_most(lm)) {
        const auto rest = lm - n * n;
        if (is_three_square(rest) && passes(filter, rest, n)) out.push_back(n);
    }
    return out;
}

std::vector<std::int64_t> candidate_set(std::int64_t M, CandidateKind kind)
{
    if (M < 0) throw DomainError("candidate_set: M must be nonnegative");
    std::vector<std::int64_t> out;
    const auto big = static_cast<__int128>(M);
    for (std::int64_t v = 0;; ++v) {
        __int128 power = 0;
        switch (kind) {
        case CandidateKind::Squares: power = static_cast<__int128>(v) * v * v * v; break;
        case CandidateKind::Cubes: power = static_cast<__int128>(v) * v * v * v * v * v; break;
        case CandidateKind::PowersOfTwo: power = static_cast<__int128>(1) << (2 * v); break;
        }
        if (power > big) break;
        if (is_three_square(static_cast<std::int64_t>(big - power))) out.push_back(v);
    }
    return out;
}

std::optional<RestrictedSolution> solve_at(std::int64_t m, std::int64_t n, const SystemQuadruple& quad,
                                           const SolveOptions& opts)
{
    std::optional<RestrictedSolution> found;
    auto accept = [&](const RestrictedSolution& raw) {
        auto s = opts.natural ? fold_free_signs(raw, quad) : raw;
        if (opts.natural && !s.is_natural()) return true;
        found = s;
        return false;
    };
    for_each_linear_solution(m, n, quad, accept);
    if (found) return found;

    const auto rules = companion_rules(quad);
    std::vector<SystemQuadruple> sources;
    for (const auto* r : rules)
        if (std::find(sources.begin(), sources.end(), r->source) == sources.end()) sources.push_back(r->source);
    for (const auto& source : sources) {
        for_each_linear_solution(m, n, source, [&](const RestrictedSolution& s) {
            for (const auto* r : rules) {
                if (r->source != source) continue;
                if (const auto moved = apply_rule(*r, s)) {
                    if (!accept(*moved)) return false;
                }
            }
            return true;
        });
        if (found) return found;
    }
    return std::nullopt;
}

RestrictedSolution solve_restricted(std::int64_t m, const SystemQuadruple& quad, const TargetSet& set,
                                    const SolveOptions& opts)
{
    if (!is_supported(quad)) throw UnsupportedQuadruple("unsupported quadruple " + to_string(quad));
    const auto candidates = admissible_n(m, quad, set);
    std::ostringstream trace;
    trace << "m=" << m << " quad=" << to_string(quad) << " set=" << to_string(set.kind())
          << (opts.natural ? " natural" : "") << " admissible=[";
    bool first = true;
    std::vector<std::int64_t> tried;
    for (const auto n : candidates) {
        if (!in_window(n, opts)) continue;
        trace << (first ? "" : " ") << n;
        first = false;
        tried.push_back(n);
    }
    trace << ']';
    auto attempt = [&](std::int64_t n) -> std::optional<RestrictedSolution> {
        auto s = solve_at(m, n, quad, opts);
        if (s && !check_solution(m, quad, set, *s)) throw std::logic_error("solve_restricted: certificate failed check");
        if (!s) trace << " n=" << n << ":none";
        return s;
    };
    for (const auto n : tried)
        if (auto s = attempt(n)) return *s;

    // Below the range where the filters guarantee a hit, fall back to an
    // exhaustive pass over the remaining members of S; the direct search is
    // complete for each n, so this pass fails only when no solution exists.
    trace << " fallback:";
    for (const auto n : set.members_with_square_at_most(checked_lm(quad.l(), m))) {
        if (!in_window(n, opts) || std::binary_search(candidates.begin(), candidates.end(), n)) continue;
        if (auto s = attempt(n)) return *s;
    }
    throw NoSolution("no certificate for m=" + std::to_string(m) + " quad=" + to_string(quad), trace.str());
}

bool check_solution(std::int64_t m, const SystemQuadruple& quad, const TargetSet& set, const RestrictedSolution& sol)
{
    try {
        return sol.norm() == m && quad.form(sol.x, sol.y, sol.z, sol.t) == sol.n && set.contains(sol.n);
    } catch (const RangeError&) {
        return false;
    }
}

} // namespace foursq
