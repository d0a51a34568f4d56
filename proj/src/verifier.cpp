#include "foursq/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <thread>

#include "checkpoint.hpp"
#include "foursq/arith.hpp"
#include "foursq/checked.hpp"
#include "foursq/errors.hpp"

namespace foursq {

std::string to_string(Theorem th)
{
    switch (th) {
    case Theorem::T1_1: return "1.1";
    case Theorem::T1_2: return "1.2";
    case Theorem::T1_3: return "1.3";
    case Theorem::T1_4a: return "1.4a";
    case Theorem::T1_4b: return "1.4b";
    }
    return "?";
}

Theorem parse_theorem(const std::string& text)
{
    if (text == "1.1") return Theorem::T1_1;
    if (text == "1.2") return Theorem::T1_2;
    if (text == "1.3") return Theorem::T1_3;
    if (text == "1.4a") return Theorem::T1_4a;
    if (text == "1.4b") return Theorem::T1_4b;
    throw std::invalid_argument("unknown theorem '" + text + "' (expected 1.1|1.2|1.3|1.4a|1.4b)");
}

std::string to_string(Status s)
{
    switch (s) {
    case Status::Verified: return "verified";
    case Status::Reduced: return "reduced";
    case Status::Skipped: return "skipped";
    case Status::Failed: return "failed";
    }
    return "?";
}

TheoremSpec theorem_spec(Theorem th)
{
    switch (th) {
    case Theorem::T1_1: return {TargetSet(SetKind::Cubes), supported_quadruples(), 64, 8};
    case Theorem::T1_2:
        return {TargetSet(SetKind::PowersOfTwo),
                {{1, 3, 3, 0}, {1, 2, 4, 0}, {1, 1, 2, 4}, {1, 1, 2, 5}, {1, 2, 3, 5}},
                4,
                2};
    case Theorem::T1_3:
        return {TargetSet(SetKind::Squares), {{1, 1, 2, 2}, {1, 2, 2, 2}, {2, 2, 3, 0}, {2, 3, 4, 0}}, 16, 4};
    case Theorem::T1_4a: return {TargetSet(SetKind::Squares), {{1, 2, 3, 5}}, 1, 1};
    case Theorem::T1_4b: return {TargetSet(SetKind::Squares), {{2, 3, 4, 0}}, 1, 1};
    }
    throw std::invalid_argument("unknown theorem");
}

std::int64_t reduce(std::int64_t m, Theorem th)
{
    if (m < 0) throw DomainError("reduce: m must be nonnegative");
    const auto d = theorem_spec(th).reduction;
    if (d == 1 || m == 0) return m;
    while (m % d == 0) m /= d;
    return m;
}

SolveOptions window_options(std::int64_t m, Theorem th)
{
    SolveOptions opts;
    if (th != Theorem::T1_4a && th != Theorem::T1_4b) return opts;
    const std::int64_t hi_mult = th == Theorem::T1_4a ? 39 : 29;
    const auto kmin = iroot4_ceil(checked::mul(hi_mult - 1, m, "window"));
    const auto kmax = iroot4_floor(checked::mul(hi_mult, m, "window"));
    opts.natural = true;
    opts.n_min = kmin * kmin;
    opts.n_max = kmax * kmax;
    if (th == Theorem::T1_4a) opts.n_filter = [](std::int64_t n) { return n % 3 != 0; };
    return opts;
}

RestrictedSolution certify(std::int64_t m, Theorem th, const SystemQuadruple& quad)
{
    const auto spec = theorem_spec(th);
    std::int64_t base = m, scale = 1;
    if (spec.reduction > 1 && m > 0) {
        while (base % spec.reduction == 0) {
            base /= spec.reduction;
            scale *= spec.lift;
        }
    }
    const auto sol = solve_restricted(base, quad, spec.set, window_options(base, th));
    constexpr const char* op = "certificate lift";
    RestrictedSolution lifted{checked::mul(sol.x, scale, op), checked::mul(sol.y, scale, op),
                              checked::mul(sol.z, scale, op), checked::mul(sol.t, scale, op),
                              checked::mul(sol.n, scale, op)};
    if (!check_solution(m, quad, spec.set, lifted)) throw std::logic_error("certify: lifted certificate fails check");
    return lifted;
}

void Tally::merge(const Tally& other, std::size_t cap)
{
    verified += other.verified;
    reduced += other.reduced;
    skipped += other.skipped;
    failed += other.failed;
    std::vector<Failure> merged;
    merged.reserve(failures.size() + other.failures.size());
    // chunk ranges are disjoint, so equal m never come from both sides
    std::merge(failures.begin(), failures.end(), other.failures.begin(), other.failures.end(),
               std::back_inserter(merged), [](const Failure& a, const Failure& b) { return a.m < b.m; });
    if (merged.size() > cap) merged.resize(cap);
    failures = std::move(merged);
}

namespace {

struct ChunkResult {
    Tally tally;
    std::vector<Outcome> outcomes;
};

ChunkResult run_chunk(const VerificationJob& job, const std::vector<SystemQuadruple>& quads, std::int64_t lo,
                      std::int64_t hi)
{
    ChunkResult res;
    const bool windowed = job.theorem == Theorem::T1_4a || job.theorem == Theorem::T1_4b;
    for (auto m = lo; m < hi; ++m) {
        if (windowed && m % 16 == 0) {
            ++res.tally.skipped;
            if (job.keep_outcomes)
                for (const auto& q : quads) res.outcomes.push_back({m, m, q, Status::Skipped, std::nullopt});
            continue;
        }
        const auto base = reduce(m, job.theorem);
        const auto ok_status = base != m ? Status::Reduced : Status::Verified;
        bool failed = false;
        for (const auto& q : quads) {
            std::optional<RestrictedSolution> sol;
            std::string trace;
            try {
                sol = certify(m, job.theorem, q);
            } catch (const NoSolution& e) {
                trace = e.trace();
            } catch (const RangeError& e) {
                trace = e.what();
            }
            if (!sol) {
                failed = true;
                if (res.tally.failures.size() < job.failure_cap) res.tally.failures.push_back({m, q, trace});
            }
            if (job.keep_outcomes) res.outcomes.push_back({m, base, q, sol ? ok_status : Status::Failed, sol});
        }
        if (failed) ++res.tally.failed;
        else if (ok_status == Status::Reduced) ++res.tally.reduced;
        else ++res.tally.verified;
    }
    return res;
}

std::string quad_key(const VerificationJob& job) { return job.quad ? to_string(*job.quad) : "all"; }

} // namespace

VerificationReport verify_theorem(const VerificationJob& job)
{
    const auto start = std::chrono::steady_clock::now();
    if (job.lo < 0 || job.lo > job.hi) throw DomainError("verify: need 0 <= lo <= hi");
    if (job.chunk < 1) throw DomainError("verify: chunk size must be positive");

    const auto spec = theorem_spec(job.theorem);
    std::vector<SystemQuadruple> quads = spec.quads;
    if (job.quad) {
        if (std::find(quads.begin(), quads.end(), *job.quad) == quads.end())
            throw UnsupportedQuadruple(to_string(*job.quad) + " is not covered by theorem " + to_string(job.theorem));
        quads = {*job.quad};
    }

    const auto nchunks = static_cast<std::size_t>((job.hi - job.lo + job.chunk - 1) / job.chunk);
    auto chunk_lo = [&](std::size_t idx) { return job.lo + static_cast<std::int64_t>(idx) * job.chunk; };
    auto chunk_hi = [&](std::size_t idx) { return std::min(job.hi, chunk_lo(idx) + job.chunk); };

    detail::CheckpointState state;
    state.theorem = job.theorem;
    state.lo = job.lo;
    state.hi = job.hi;
    state.chunk = job.chunk;
    state.quad = quad_key(job);
    state.verified_prefix = job.lo;

    std::vector<char> done(nchunks, 0);
    if (job.checkpoint) {
        if (auto saved = detail::load_checkpoint(*job.checkpoint)) {
            if (saved->theorem != job.theorem || saved->lo != job.lo || saved->hi != job.hi ||
                saved->chunk != job.chunk || saved->quad != state.quad)
                throw DomainError("checkpoint " + job.checkpoint->string() + " belongs to a different job");
            state = *saved;
            for (std::size_t idx = 0; idx < nchunks; ++idx) {
                if (chunk_hi(idx) <= state.verified_prefix) done[idx] = 1;
            }
            for (const auto& [clo, chi] : state.completed) {
                if ((clo - job.lo) % job.chunk != 0) throw DomainError("checkpoint: misaligned chunk");
                done[static_cast<std::size_t>((clo - job.lo) / job.chunk)] = 1;
            }
            if (job.keep_outcomes && state.tally.total() > 0)
                throw DomainError("per-m outcomes are not available when resuming from a checkpoint");
        }
    }

    std::vector<std::size_t> pending;
    for (std::size_t idx = 0; idx < nchunks; ++idx)
        if (!done[idx]) pending.push_back(idx);

    std::vector<std::vector<Outcome>> outcomes(nchunks);
    std::mutex mu;
    std::atomic<std::size_t> next{0};
    const std::size_t budget = job.stop_after.value_or(pending.size());
    std::exception_ptr error;

    auto record = [&](std::size_t idx, ChunkResult&& res) {
        std::lock_guard lock(mu);
        state.tally.merge(res.tally, job.failure_cap);
        outcomes[idx] = std::move(res.outcomes);
        done[idx] = 1;
        state.completed.emplace_back(chunk_lo(idx), chunk_hi(idx));
        std::sort(state.completed.begin(), state.completed.end());
        // fold the contiguous prefix
        while (!state.completed.empty() && state.completed.front().first == state.verified_prefix) {
            state.verified_prefix = state.completed.front().second;
            state.completed.erase(state.completed.begin());
        }
        if (job.checkpoint) detail::write_checkpoint(*job.checkpoint, state);
    };

    auto worker = [&] {
        for (;;) {
            const auto slot = next.fetch_add(1);
            if (slot >= pending.size() || slot >= budget) return;
            {
                std::lock_guard lock(mu);
                if (error) return;
            }
            const auto idx = pending[slot];
            try {
                record(idx, run_chunk(job, quads, chunk_lo(idx), chunk_hi(idx)));
            } catch (...) {
                std::lock_guard lock(mu);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };

    const unsigned nworkers = std::max(1U, std::min<unsigned>(job.workers, static_cast<unsigned>(pending.size())));
    if (nworkers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < nworkers; ++w) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);

    VerificationReport report;
    report.theorem = job.theorem;
    report.lo = job.lo;
    report.hi = job.hi;
    report.tally = state.tally;
    report.complete = std::all_of(done.begin(), done.end(), [](char c) { return c != 0; });
    if (job.keep_outcomes)
        for (auto& chunk : outcomes)
            for (auto& o : chunk) report.outcomes.push_back(std::move(o));
    const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report.wall_ms = elapsed;
    report.per_sec = elapsed > 0 ? static_cast<double>(report.tally.total()) * 1000.0 / elapsed : 0.0;
    return report;
}

long double window_length(long double m, long double lo_mult, long double hi_mult)
{
    return std::pow(hi_mult * m, 0.25L) - std::pow(lo_mult * m, 0.25L);
}

BoundsCheck check_bounds()
{
    // relative slack well above long double rounding error
    constexpr long double slack = 1e-12L;
    BoundsCheck b;
    b.bound_39 = std::pow(4.0L / (std::pow(39.0L, 0.25L) - std::pow(38.0L, 0.25L)), 4.0L);
    b.bound_29 = std::pow(6.0L / (std::pow(29.0L, 0.25L) - std::pow(28.0L, 0.25L)), 4.0L);
    b.bound_39_ok = b.bound_39 * (1 + slack) < static_cast<long double>(kBound39);
    b.bound_29_ok = b.bound_29 * (1 + slack) < static_cast<long double>(kBound29);
    b.window_39 = window_length(kBound39, 38, 39);
    b.window_29 = window_length(kBound29, 28, 29);
    // the window grows with m, so the check at the bound covers everything above it
    b.window_39_ok = b.window_39 * (1 - slack) >= 4;
    b.window_29_ok = b.window_29 * (1 - slack) >= 6;
    // integer count in the window at the bound, by exact fourth roots
    b.window_39_ok = b.window_39_ok && iroot4_floor(39 * kBound39) - iroot4_ceil(38 * kBound39) + 1 >= 4;
    b.window_29_ok = b.window_29_ok && iroot4_floor(29 * kBound29) - iroot4_ceil(28 * kBound29) + 1 >= 6;
    return b;
}

} // namespace foursq
