#pragma once

// Restricted four-square solver.
//
// Given m, a coefficient quadruple (a, b, c, d) and a target set S, find
// integers (x, y, z, t) with
//
//     x^2 + y^2 + z^2 + t^2 = m,    ax + by + cz + dt = n,    n in S.
//
// For a fixed n the search runs over quaternions rho = n + Ai + Bj + Ck of
// norm l*m (l = a^2 + b^2 + c^2 + d^2) and keeps those right-divisible by
// beta = a + bi + cj + dk; gamma = rho / beta then encodes the solution as
// x - yi - zj - tk. When the quadruple itself has no solution at n, a
// solution of its companion quadruple (same l) is transported over by a
// conjugation gamma -> u^{-1} gamma v taken from the builtin rule table.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "foursq/quaternion.hpp"

namespace foursq {

struct SystemQuadruple {
    std::int64_t a = 0, b = 0, c = 0, d = 0;

    constexpr SystemQuadruple() = default;
    SystemQuadruple(std::int64_t a_, std::int64_t b_, std::int64_t c_, std::int64_t d_);

    std::int64_t l() const { return a * a + b * b + c * c + d * d; }
    std::array<std::int64_t, 4> coeffs() const { return {a, b, c, d}; }
    Quaternion beta() const { return {a, b, c, d}; }
    std::int64_t form(std::int64_t x, std::int64_t y, std::int64_t z, std::int64_t t) const;

    friend bool operator==(const SystemQuadruple&, const SystemQuadruple&) = default;
};

std::string to_string(const SystemQuadruple& q);
std::ostream& operator<<(std::ostream& os, const SystemQuadruple& q);

/// Parses "a,b,c,d". Throws std::invalid_argument on malformed input.
SystemQuadruple parse_quadruple(const std::string& text);

enum class SetKind { Squares, Cubes, PowersOfTwo };

class TargetSet {
public:
    constexpr explicit TargetSet(SetKind kind) : kind_(kind) {}

    SetKind kind() const { return kind_; }
    bool contains(std::int64_t n) const;
    /// Members n with 0 <= n <= limit, ascending.
    std::vector<std::int64_t> members_up_to(std::int64_t limit) const;
    /// Members n with n^2 <= bound, ascending.
    std::vector<std::int64_t> members_with_square_at_most(std::int64_t bound) const;

    friend bool operator==(const TargetSet&, const TargetSet&) = default;

private:
    SetKind kind_;
};

std::string to_string(SetKind kind);
/// "squares" | "cubes" | "pow2"
SetKind parse_set_kind(const std::string& text);

struct RestrictedSolution {
    std::int64_t x = 0, y = 0, z = 0, t = 0;
    std::int64_t n = 0;

    std::int64_t norm() const;
    bool is_natural() const { return x >= 0 && y >= 0 && z >= 0 && t >= 0; }
    friend bool operator==(const RestrictedSolution&, const RestrictedSolution&) = default;
};

std::ostream& operator<<(std::ostream& os, const RestrictedSolution& s);

/// One conjugator pair of a rule: beta_source * u == v * image, where image is
/// a signed permutation of the target quadruple. The pair applies to the
/// source solution after its coordinates are reordered by `source_perm`, and
/// the quotient u^{-1} gamma v is integral exactly when
/// congruence . (x, y, z, t) == 0 (mod modulus) on the original coordinates.
struct ConjugatorPair {
    Quaternion u;
    Quaternion v;
    Quaternion image;
    std::array<int, 4> source_perm{0, 1, 2, 3};
    std::array<int, 4> congruence{};
};

struct TransformationRule {
    std::string label;
    SystemQuadruple source;
    SystemQuadruple target;
    int modulus = 0;
    std::vector<ConjugatorPair> pairs;

    bool congruence_holds(std::size_t pair, const std::array<std::int64_t, 4>& xyzt) const;
};

/// The builtin rule table, verified on first use.
const std::vector<TransformationRule>& builtin_rules();

/// The nine quadruples the solver accepts as targets.
const std::vector<SystemQuadruple>& supported_quadruples();
bool is_supported(const SystemQuadruple& q);

/// Rules whose target is `q`, in the order they are tried.
std::vector<const TransformationRule*> companion_rules(const SystemQuadruple& q);
SystemQuadruple companion_source(const SystemQuadruple& q);

/// Transports a solution of rule.source to rule.target (same m, same n).
/// Absent iff no pair's congruence holds. DomainError when `sol` is not a
/// solution of rule.source.
std::optional<RestrictedSolution> apply_rule(const TransformationRule& rule, const RestrictedSolution& sol);

/// Visits every (x, y, z, t) with norm m and quad-form n in the solver's
/// deterministic order. Stops when `visit` returns false; returns false iff
/// stopped early.
bool for_each_linear_solution(std::int64_t m, std::int64_t n, const SystemQuadruple& quad,
                              const std::function<bool(const RestrictedSolution&)>& visit);

/// First solution of m = x^2+y^2+z^2+t^2, n = ax+by+cz+dt in enumeration order.
/// DomainError when n^2 > l*m.
std::optional<RestrictedSolution> solve_linear_system(std::int64_t m, std::int64_t n, const SystemQuadruple& quad);

/// Values n in `set` (ascending) that pass the three-square test on l*m - n^2
/// and the quad-specific congruence filter.
std::vector<std::int64_t> admissible_n(std::int64_t m, const SystemQuadruple& quad, const TargetSet& set);

enum class CandidateKind { Squares, Cubes, PowersOfTwo };

/// S_M (n^4 <= M), C_M (n^6 <= M) or P_M (4^k <= M): members whose
/// complement M - n^4 / M - n^6 / M - 4^k is a sum of three squares.
std::vector<std::int64_t> candidate_set(std::int64_t M, CandidateKind kind);

struct SolveOptions {
    /// Require x, y, z, t >= 0. Coordinates with a zero coefficient are
    /// folded to their absolute value first.
    bool natural = false;
    /// Inclusive bounds on the linear-form value n.
    std::optional<std::int64_t> n_min;
    std::optional<std::int64_t> n_max;
    /// Extra admissibility predicate on n.
    std::function<bool(std::int64_t)> n_filter;
};

/// Direct search at n, then companion search plus transfer.
std::optional<RestrictedSolution> solve_at(std::int64_t m, std::int64_t n, const SystemQuadruple& quad,
                                           const SolveOptions& opts = {});

/// Iterates admissible_n ascending and returns the first certificate.
/// Throws UnsupportedQuadruple or NoSolution (with a filter trace).
RestrictedSolution solve_restricted(std::int64_t m, const SystemQuadruple& quad, const TargetSet& set,
                                    const SolveOptions& opts = {});

inline constexpr std::int64_t kDefaultOracleBound = 1'000'000;

/// Exhaustive search over all signed four-square representations of m;
/// returns the lexicographically least (x, y, z, t). ResourceLimit when
/// m > bound.
std::optional<RestrictedSolution> brute_force_oracle(std::int64_t m, const SystemQuadruple& quad,
                                                     const TargetSet& set,
                                                     std::int64_t bound = kDefaultOracleBound);

bool check_solution(std::int64_t m, const SystemQuadruple& quad, const TargetSet& set,
                    const RestrictedSolution& sol);

/// A displayed identity beta * u == v * image from the rule derivations.
struct IdentityCheck {
    std::string label;
    bool holds = false;
};
/// The 29 conjugation identities. Identities of the (a, a, a, b) family are
/// checked at every instantiated (a, b) and count once each.
std::vector<IdentityCheck> identity_suite();

} // namespace foursq
