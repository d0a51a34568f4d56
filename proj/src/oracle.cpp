#include <algorithm>
#include <array>

#include "foursq/arith.hpp"
#include "foursq/errors.hpp"
#include "foursq/solver.hpp"

namespace foursq {

std::optional<RestrictedSolution> brute_force_oracle(std::int64_t m, const SystemQuadruple& quad,
                                                     const TargetSet& set, std::int64_t bound)
{
    if (m < 0) throw DomainError("oracle: m must be nonnegative");
    if (m > bound) throw ResourceLimit("oracle: m=" + std::to_string(m) + " exceeds bound " + std::to_string(bound));

    std::optional<std::array<std::int64_t, 5>> best; // x, y, z, t, n
    for (const auto& rep : four_square_reps(m)) {
        std::array<std::int64_t, 4> v{rep.x, rep.y, rep.z, rep.t};
        std::sort(v.begin(), v.end());
        do {
            for (int mask = 0; mask < 16; ++mask) {
                std::array<std::int64_t, 4> s = v;
                for (int idx = 0; idx < 4; ++idx)
                    if (mask & (1 << idx)) s[idx] = -s[idx];
                const auto n = quad.a * s[0] + quad.b * s[1] + quad.c * s[2] + quad.d * s[3];
                if (!set.contains(n)) continue;
                const std::array<std::int64_t, 5> cand{s[0], s[1], s[2], s[3], n};
                if (!best || cand < *best) best = cand;
            }
        } while (std::next_permutation(v.begin(), v.end()));
    }
    if (!best) return std::nullopt;
    return RestrictedSolution{(*best)[0], (*best)[1], (*best)[2], (*best)[3], (*best)[4]};
}

} // namespace foursq
