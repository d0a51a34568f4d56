#pragma once

// Range verification of the restricted four-square theorems.
//
// Each m in [lo, hi) is reduced (m/64, m/4 or m/16 while divisible), solved
// for every quadruple of the theorem, lifted back by scaling and re-checked.
// Work is split into contiguous chunks that may run on several threads;
// results merge in m order so the report does not depend on scheduling.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "foursq/solver.hpp"

namespace foursq {

enum class Theorem { T1_1, T1_2, T1_3, T1_4a, T1_4b };

/// "1.1" | "1.2" | "1.3" | "1.4a" | "1.4b"
std::string to_string(Theorem th);
Theorem parse_theorem(const std::string& text);

struct TheoremSpec {
    TargetSet set;
    std::vector<SystemQuadruple> quads;
    /// Divisor applied by reduce(); 1 when no reduction applies.
    std::int64_t reduction = 1;
    /// Scale applied to a certificate of m / reduction.
    std::int64_t lift = 1;
};

TheoremSpec theorem_spec(Theorem th);

/// Divides by 64 (1.1), 4 (1.2) or 16 (1.3) while divisible; identity for
/// 1.4a/1.4b and for m = 0.
std::int64_t reduce(std::int64_t m, Theorem th);

/// Certificate for one quadruple of a theorem at m (after reduction and
/// lifting). Throws NoSolution when the solver finds nothing.
RestrictedSolution certify(std::int64_t m, Theorem th, const SystemQuadruple& quad);

/// Options for the 1.4 variants: natural solutions, n = k^2 with k in
/// [ceil((lo_mult*m)^(1/4)), floor((hi_mult*m)^(1/4))].
SolveOptions window_options(std::int64_t m, Theorem th);

struct VerificationJob {
    Theorem theorem = Theorem::T1_3;
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    std::optional<SystemQuadruple> quad;
    std::int64_t chunk = 1024;
    unsigned workers = 1;
    std::optional<std::filesystem::path> checkpoint;
    std::size_t failure_cap = 100;
    bool keep_outcomes = false;
    /// Stop after this many chunks have been processed in this call
    /// (simulates an interrupted run; the report is then incomplete).
    std::optional<std::size_t> stop_after;
};

enum class Status { Verified, Reduced, Skipped, Failed };
std::string to_string(Status s);

struct Failure {
    std::int64_t m = 0;
    SystemQuadruple quad;
    std::string trace;
    friend bool operator==(const Failure&, const Failure&) = default;
};

/// Per (m, quadruple) outcome, kept only when job.keep_outcomes is set.
struct Outcome {
    std::int64_t m = 0;
    std::int64_t reduced_m = 0;
    SystemQuadruple quad;
    Status status = Status::Verified;
    std::optional<RestrictedSolution> solution;
};

struct Tally {
    std::int64_t verified = 0;
    std::int64_t reduced = 0;
    std::int64_t skipped = 0;
    std::int64_t failed = 0;
    std::vector<Failure> failures; ///< sorted by (m, quad order), capped

    std::int64_t total() const { return verified + reduced + skipped + failed; }
    void merge(const Tally& other, std::size_t cap);
    friend bool operator==(const Tally&, const Tally&) = default;
};

struct VerificationReport {
    Theorem theorem = Theorem::T1_3;
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    Tally tally;
    bool complete = false;
    double wall_ms = 0;
    double per_sec = 0;
    std::vector<Outcome> outcomes;

    bool success() const { return complete && tally.failures.empty() && tally.failed == 0; }
};

VerificationReport verify_theorem(const VerificationJob& job);

/// Report JSON; the timing fields are omitted when include_timing is false,
/// which makes the output a pure function of the job.
std::string report_json(const VerificationReport& report, bool include_timing = true);
std::string report_csv(const VerificationReport& report);

struct BoundsCheck {
    long double bound_39 = 0; ///< (4 / (39^(1/4) - 38^(1/4)))^4
    long double bound_29 = 0; ///< (6 / (29^(1/4) - 28^(1/4)))^4
    bool bound_39_ok = false; ///< bound_39 < 3.74e9
    bool bound_29_ok = false; ///< bound_29 < 7.67e9
    long double window_39 = 0; ///< (39m)^(1/4) - (38m)^(1/4) at m = 3.74e9
    long double window_29 = 0; ///< (29m)^(1/4) - (28m)^(1/4) at m = 7.67e9
    bool window_39_ok = false;
    bool window_29_ok = false;
    bool ok() const { return bound_39_ok && bound_29_ok && window_39_ok && window_29_ok; }
};

inline constexpr std::int64_t kBound39 = 3'740'000'000;
inline constexpr std::int64_t kBound29 = 7'670'000'000;

/// (hi*m)^(1/4) - (lo*m)^(1/4) in long double.
long double window_length(long double m, long double lo_mult, long double hi_mult);

BoundsCheck check_bounds();

} // namespace foursq
