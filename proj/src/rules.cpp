#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "foursq/arith.hpp"
#include "foursq/errors.hpp"
#include "foursq/solver.hpp"

namespace foursq {

namespace {

using Q = Quaternion;

struct FamilyInstance {
    std::int64_t a, b;
};

constexpr FamilyInstance kFamilyInstances[] = {{1, -4}, {1, 6}, {2, -3}, {3, -2}};

// The six conjugator pairs of the (a-a-a-b) family. The image is a
// permutation of (P, Q, R, S) = ((a+4b)/5, (7a-2b)/5, (3a+2b)/5, (4a+b)/5).
struct FamilyPair {
    Q u, v;
    std::array<int, 4> image_order; // indices into (P, Q, R, S)
    std::array<int, 4> congruence;
};

const std::array<FamilyPair, 6>& family_pairs()
{
    static const std::array<FamilyPair, 6> pairs{{
        {{1, 2, 0, 0}, {1, 0, 2, 0}, {0, 1, 2, 3}, {1, -2, 2, -1}},
        {{1, -2, 0, 0}, {1, 0, -2, 0}, {0, 2, 1, 3}, {1, 2, -2, -1}},
        {{1, 0, 2, 0}, {1, 0, 0, 2}, {2, 1, 0, 3}, {1, -1, -2, 2}},
        {{1, 0, -2, 0}, {1, 0, 0, -2}, {1, 2, 0, 3}, {1, -1, 2, -2}},
        {{1, 0, 0, 2}, {1, 2, 0, 0}, {1, 0, 2, 3}, {1, 2, -1, -2}},
        {{1, 0, 0, -2}, {1, -2, 0, 0}, {2, 0, 1, 3}, {1, -2, -1, 2}},
    }};
    return pairs;
}

Q family_image(const FamilyPair& p, const FamilyInstance& ab)
{
    const std::array<std::int64_t, 4> pqrs{(ab.a + 4 * ab.b) / 5, (7 * ab.a - 2 * ab.b) / 5,
                                           (3 * ab.a + 2 * ab.b) / 5, (4 * ab.a + ab.b) / 5};
    return {pqrs[p.image_order[0]], pqrs[p.image_order[1]], pqrs[p.image_order[2]], pqrs[p.image_order[3]]};
}

SystemQuadruple canonical_target(const Q& image)
{
    std::array<std::int64_t, 4> v{std::abs(image.r), std::abs(image.i), std::abs(image.j), std::abs(image.k)};
    // ascending nonzero coefficients, zeros last
    std::sort(v.begin(), v.end(), [](std::int64_t x, std::int64_t y) {
        if ((x == 0) != (y == 0)) return y == 0;
        return x < y;
    });
    return {v[0], v[1], v[2], v[3]};
}

void validate(const TransformationRule& rule)
{
    if (rule.pairs.empty()) throw std::logic_error(rule.label + ": no conjugator pairs");
    const auto beta = rule.source.beta();
    for (const auto& p : rule.pairs) {
        if (norm(p.u) != rule.modulus || norm(p.v) != rule.modulus)
            throw std::logic_error(rule.label + ": conjugator norm differs from modulus");
        if (beta * p.u != p.v * p.image) throw std::logic_error(rule.label + ": identity fails for " + to_string(p.u));
        if (canonical_target(p.image) != rule.target)
            throw std::logic_error(rule.label + ": image " + to_string(p.image) + " is not a form of the target");
    }
}

std::vector<TransformationRule> make_rules()
{
    std::vector<TransformationRule> rules;

    rules.push_back({"(2-3-3)=>(1-1-2-4)", {2, 3, 3, 0}, {1, 1, 2, 4}, 5,
                     {
                         {{1, 2, 0, 0}, {1, 0, -2, 0}, {-2, -1, -1, -4}, {0, 1, 2, 3}, {1, -2, -2, 1}},
                         {{1, -2, 0, 0}, {1, 0, 0, 2}, {4, 1, 1, -2}, {0, 1, 2, 3}, {1, 2, -1, 2}},
                         {{1, 0, 2, 0}, {1, -2, 0, 0}, {-2, -1, -1, 4}, {0, 1, 2, 3}, {1, -2, -2, -1}},
                         {{1, 0, -2, 0}, {1, 0, 0, -2}, {4, 1, 1, 2}, {0, 1, 2, 3}, {1, -1, 2, -2}},
                         {{1, 0, 0, 2}, {1, 2, 0, 0}, {4, 1, 1, 2}, {0, 1, 2, 3}, {1, 2, -1, -2}},
                         {{1, 0, 0, -2}, {1, 0, 2, 0}, {4, 1, 1, -2}, {0, 1, 2, 3}, {1, -1, 2, 2}},
                     }});

    const Q ppp{1, 1, 1, 0}, ppm{1, 1, -1, 0}, pmp{1, -1, 1, 0}, pmm{1, -1, -1, 0};

    // (1-3)=>(1-1-2-2) and (2-3)=>(1-2-2-2) share conjugators, u == v.
    for (std::int64_t a : {1, 2}) {
        rules.push_back({a == 1 ? "(1-3)=>(1-1-2-2)" : "(2-3)=>(1-2-2-2)",
                         {a, 3, 0, 0},
                         a == 1 ? SystemQuadruple{1, 1, 2, 2} : SystemQuadruple{1, 2, 2, 2},
                         3,
                         {
                             {ppp, ppp, {a, 1, 2, 2}, {0, 1, 2, 3}, {0, 1, -1, 1}},
                             {ppm, ppm, {a, 1, -2, -2}, {0, 1, 2, 3}, {0, 1, 1, -1}},
                             {pmp, pmp, {a, 1, -2, 2}, {0, 1, 2, 3}, {0, 1, 1, 1}},
                             {pmm, pmm, {a, 1, 2, -2}, {0, 1, 2, 3}, {0, 1, -1, -1}},
                         }});
    }

    // (1-4)=>(2-2-3) and (2-5)=>(2-3-4); images -(a+2) + (a+1)i -/+ 2j etc.
    for (std::int64_t a : {1, 2}) {
        const std::int64_t lead = a + 2, mid = a + 1;
        rules.push_back({a == 1 ? "(1-4)=>(2-2-3)" : "(2-5)=>(2-3-4)",
                         {a, a + 3, 0, 0},
                         a == 1 ? SystemQuadruple{2, 2, 3, 0} : SystemQuadruple{2, 3, 4, 0},
                         3,
                         {
                             {ppp, pmm, {-lead, mid, -2, 0}, {0, 1, 2, 3}, {1, -1, -1, 0}},
                             {ppm, pmp, {-lead, mid, 2, 0}, {0, 1, 2, 3}, {1, -1, 1, 0}},
                             {pmp, ppp, {lead, -mid, 0, 2}, {0, 1, 2, 3}, {1, -1, 0, 1}},
                             {pmm, ppm, {lead, -mid, 0, -2}, {0, 1, 2, 3}, {1, -1, 0, -1}},
                         }});
    }

    for (const auto& ab : kFamilyInstances) {
        TransformationRule rule;
        rule.source = {ab.a, ab.a, ab.a, ab.b};
        rule.modulus = 5;
        for (const auto& p : family_pairs()) rule.pairs.push_back({p.u, p.v, family_image(p, ab), {0, 1, 2, 3}, p.congruence});
        rule.target = canonical_target(rule.pairs.front().image);
        rule.label = "(a-a-a-b)[a=" + std::to_string(ab.a) + ",b=" + std::to_string(ab.b) + "]=>(" +
                     std::to_string(rule.target.a) + "-" + std::to_string(rule.target.b) + "-" +
                     std::to_string(rule.target.c) + "-" + std::to_string(rule.target.d) + ")";
        rules.push_back(std::move(rule));
    }

    // (1-1-1-6)=>(1-2-3-5): one pair, applied to the six orderings of (x, y, z).
    {
        const Q image{1, -3, 5, -2};
        rules.push_back({"(1-1-1-6)=>(1-2-3-5)", {1, 1, 1, 6}, {1, 2, 3, 5}, 3,
                         {
                             {ppp, ppp, image, {0, 1, 2, 3}, {0, 1, -1, 1}},
                             {ppp, ppp, image, {1, 2, 0, 3}, {-1, 0, 1, 1}},
                             {ppp, ppp, image, {2, 0, 1, 3}, {1, -1, 0, 1}},
                             {ppp, ppp, image, {0, 2, 1, 3}, {0, -1, 1, 1}},
                             {ppp, ppp, image, {2, 1, 0, 3}, {-1, 1, 0, 1}},
                             {ppp, ppp, image, {1, 0, 2, 3}, {1, 0, -1, 1}},
                         }});
    }

    for (const auto& r : rules) validate(r);

    // The (a-a-a-b) transfer relies on l = 3a^2 + b^2 having exactly two
    // four-square representations.
    for (const auto& ab : kFamilyInstances) {
        const auto l = 3 * ab.a * ab.a + ab.b * ab.b;
        if (four_square_reps(l).size() != 2)
            throw std::logic_error("l = " + std::to_string(l) + " has more than two four-square representations");
    }
    return rules;
}

std::array<std::int64_t, 4> to_target_order(const Q& image, const std::array<std::int64_t, 4>& w,
                                            const SystemQuadruple& target)
{
    const auto p = image.components();
    const auto want = target.coeffs();
    std::array<bool, 4> used{};
    std::array<std::int64_t, 4> out{};
    for (int j = 0; j < 4; ++j) {
        int pick = -1;
        for (int i = 0; i < 4; ++i) {
            if (!used[i] && std::abs(p[i]) == want[j]) {
                pick = i;
                break;
            }
        }
        if (pick < 0) throw std::logic_error("image does not match target quadruple");
        used[pick] = true;
        out[j] = p[pick] < 0 ? -w[pick] : w[pick];
    }
    return out;
}

} // namespace

bool TransformationRule::congruence_holds(std::size_t pair, const std::array<std::int64_t, 4>& xyzt) const
{
    const auto& c = pairs.at(pair).congruence;
    std::int64_t s = 0;
    for (int idx = 0; idx < 4; ++idx) s += c[idx] * (xyzt[idx] % modulus);
    return s % modulus == 0;
}

const std::vector<TransformationRule>& builtin_rules()
{
    static const std::vector<TransformationRule> rules = make_rules();
    return rules;
}

const std::vector<SystemQuadruple>& supported_quadruples()
{
    static const std::vector<SystemQuadruple> quads{
        {1, 1, 2, 2}, {1, 2, 2, 2}, {2, 2, 3, 0}, {1, 3, 3, 0}, {1, 2, 4, 0},
        {1, 1, 2, 4}, {2, 3, 4, 0}, {1, 1, 2, 5}, {1, 2, 3, 5},
    };
    return quads;
}

bool is_supported(const SystemQuadruple& q)
{
    const auto& s = supported_quadruples();
    return std::find(s.begin(), s.end(), q) != s.end();
}

std::vector<const TransformationRule*> companion_rules(const SystemQuadruple& q)
{
    std::vector<const TransformationRule*> out;
    for (const auto& r : builtin_rules())
        if (r.target == q) out.push_back(&r);
    // mod-3 rules first: (1-2-3-5) prefers the (1-1-1-6) mod-3 route
    std::stable_sort(out.begin(), out.end(), [](auto* x, auto* y) { return x->modulus < y->modulus; });
    return out;
}

SystemQuadruple companion_source(const SystemQuadruple& q)
{
    const auto rules = companion_rules(q);
    if (rules.empty()) throw UnsupportedQuadruple("no companion rule for " + to_string(q));
    return rules.front()->source;
}

std::optional<RestrictedSolution> apply_rule(const TransformationRule& rule, const RestrictedSolution& sol)
{
    if (rule.source.form(sol.x, sol.y, sol.z, sol.t) != sol.n)
        throw DomainError("apply_rule: input is not a solution of " + to_string(rule.source));
    const std::array<std::int64_t, 4> xyzt{sol.x, sol.y, sol.z, sol.t};
    for (const auto& p : rule.pairs) {
        const auto& s = p.source_perm;
        const auto gamma = embed_solution(xyzt[s[0]], xyzt[s[1]], xyzt[s[2]], xyzt[s[3]]);
        const auto moved = sandwich(p.u, gamma, p.v);
        if (!moved) continue;
        const auto w = to_target_order(p.image, extract_solution(*moved), rule.target);
        RestrictedSolution out{w[0], w[1], w[2], w[3], sol.n};
        if (out.norm() != sol.norm() || rule.target.form(out.x, out.y, out.z, out.t) != sol.n)
            throw std::logic_error(rule.label + ": transfer produced an invalid certificate");
        return out;
    }
    return std::nullopt;
}

std::vector<IdentityCheck> identity_suite()
{
    std::vector<IdentityCheck> out;
    for (const auto& rule : builtin_rules()) {
        if (rule.source.a == rule.source.b && rule.source.b == rule.source.c && rule.modulus == 5) continue;
        const auto beta = rule.source.beta();
        for (const auto& p : rule.pairs) {
            // the (1-1-1-6) coordinate symmetries reuse a single identity
            if (p.source_perm != std::array<int, 4>{0, 1, 2, 3}) continue;
            out.push_back({"beta" + to_string(beta) + "*" + to_string(p.u) + " == " + to_string(p.v) + "*" +
                               to_string(p.image),
                           beta * p.u == p.v * p.image});
        }
    }
    for (const auto& p : family_pairs()) {
        bool holds = true;
        for (const auto& ab : kFamilyInstances) {
            const Q eta{ab.a, ab.a, ab.a, ab.b};
            holds = holds && eta * p.u == p.v * family_image(p, ab);
        }
        out.push_back({"eta(a,b)*" + to_string(p.u) + " == " + to_string(p.v) + "*image(a,b) for all (a,b)", holds});
    }
    return out;
}

} // namespace foursq
