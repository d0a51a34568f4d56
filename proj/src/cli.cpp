#include "foursq/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "foursq/arith.hpp"
#include "foursq/errors.hpp"
#include "foursq/solver.hpp"
#include "foursq/verifier.hpp"

namespace foursq::cli {

namespace {

using nlohmann::ordered_json;

unsigned default_workers()
{
    if (const char* env = std::getenv("FOURSQ_THREADS")) {
        try {
            const auto v = std::stoul(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

ordered_json solution_json(std::int64_t m, const SystemQuadruple& q, SetKind set, const RestrictedSolution& s)
{
    ordered_json j;
    j["m"] = m;
    j["quad"] = {q.a, q.b, q.c, q.d};
    j["set"] = to_string(set);
    j["x"] = s.x;
    j["y"] = s.y;
    j["z"] = s.z;
    j["t"] = s.t;
    j["n"] = s.n;
    return j;
}

void print_solution(std::ostream& out, const std::string& format, std::int64_t m, const SystemQuadruple& q,
                    SetKind set, const RestrictedSolution& s)
{
    if (format == "json") {
        out << solution_json(m, q, set, s).dump() << '\n';
    } else {
        out << "m=" << m << " quad=" << to_string(q) << " set=" << to_string(set) << " x=" << s.x << " y=" << s.y
            << " z=" << s.z << " t=" << s.t << " n=" << s.n << '\n';
    }
}

struct Options {
    std::int64_t m = 0;
    std::string quad;
    std::string set = "squares";
    std::string format = "human";
    bool natural = false;
    std::optional<std::int64_t> n;

    std::string theorem;
    std::int64_t lo = 0, hi = 0, chunk = 1024;
    unsigned workers = 0;
    std::string checkpoint;
    std::optional<std::size_t> stop_after;
    std::size_t failure_cap = 100;

    bool three = false;
    std::string kind;
    std::int64_t bound = kDefaultOracleBound;
    std::int64_t x = 0, y = 0, z = 0, t = 0;
    std::string from_json;
    bool verbose = false;
};

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err)
{
    const auto quad = parse_quadruple(o.quad);
    const auto kind = parse_set_kind(o.set);
    const TargetSet set(kind);
    if (!is_supported(quad)) throw UnsupportedQuadruple("unsupported quadruple " + to_string(quad));
    SolveOptions opts;
    opts.natural = o.natural;
    if (o.n) {
        if (!set.contains(*o.n)) throw std::invalid_argument(std::to_string(*o.n) + " is not in " + o.set);
        const auto s = solve_at(o.m, *o.n, quad, opts);
        if (!s) {
            err << "no solution with n=" << *o.n << '\n';
            return kFailuresFound;
        }
        print_solution(out, o.format, o.m, quad, kind, *s);
        return kOk;
    }
    try {
        print_solution(out, o.format, o.m, quad, kind, solve_restricted(o.m, quad, set, opts));
    } catch (const NoSolution& e) {
        err << e.what() << "\n  " << e.trace() << '\n';
        return kFailuresFound;
    }
    return kOk;
}

int cmd_verify(const Options& o, std::ostream& out)
{
    VerificationJob job;
    job.theorem = parse_theorem(o.theorem);
    job.lo = o.lo;
    job.hi = o.hi;
    job.chunk = o.chunk;
    job.workers = o.workers ? o.workers : default_workers();
    if (!o.checkpoint.empty()) job.checkpoint = o.checkpoint;
    if (!o.quad.empty()) job.quad = parse_quadruple(o.quad);
    job.stop_after = o.stop_after;
    job.failure_cap = o.failure_cap;
    job.keep_outcomes = o.format == "csv";
    const auto report = verify_theorem(job);
    if (o.format == "csv") out << report_csv(report);
    else out << report_json(report) << '\n';
    return report.success() ? kOk : kFailuresFound;
}

int cmd_reps(const Options& o, std::ostream& out)
{
    ordered_json list = ordered_json::array();
    if (o.three) {
        for (const auto& r : three_square_reps(o.m)) {
            if (o.format == "json") list.push_back({r.a, r.b, r.c});
            else out << r.a << ' ' << r.b << ' ' << r.c << '\n';
        }
    } else {
        for (const auto& r : four_square_reps(o.m)) {
            if (o.format == "json") list.push_back({r.x, r.y, r.z, r.t});
            else out << r.x << ' ' << r.y << ' ' << r.z << ' ' << r.t << '\n';
        }
    }
    if (o.format == "json") out << list.dump() << '\n';
    return kOk;
}

int cmd_candidates(const Options& o, std::ostream& out)
{
    CandidateKind kind;
    if (o.kind == "squares") kind = CandidateKind::Squares;
    else if (o.kind == "cubes") kind = CandidateKind::Cubes;
    else if (o.kind == "pow2") kind = CandidateKind::PowersOfTwo;
    else throw std::invalid_argument("unknown kind '" + o.kind + "'");
    const auto values = candidate_set(o.m, kind);
    if (o.format == "json") {
        out << ordered_json(values).dump() << '\n';
    } else {
        for (std::size_t idx = 0; idx < values.size(); ++idx) out << (idx ? " " : "") << values[idx];
        out << '\n';
    }
    return kOk;
}

int cmd_oracle(const Options& o, std::ostream& out, std::ostream& err)
{
    const auto quad = parse_quadruple(o.quad);
    const auto kind = parse_set_kind(o.set);
    const auto s = brute_force_oracle(o.m, quad, TargetSet(kind), o.bound);
    if (!s) {
        err << "oracle: no representation of " << o.m << " with " << to_string(quad) << " form in " << o.set << '\n';
        return kFailuresFound;
    }
    print_solution(out, o.format, o.m, quad, kind, *s);
    return kOk;
}

int cmd_check(const Options& o, std::istream& in, std::ostream& out)
{
    std::int64_t m = o.m;
    SystemQuadruple quad;
    SetKind kind;
    RestrictedSolution s;
    if (!o.from_json.empty()) {
        ordered_json j;
        if (o.from_json == "-") {
            in >> j;
        } else {
            std::ifstream file(o.from_json);
            if (!file) throw std::invalid_argument("cannot open " + o.from_json);
            file >> j;
        }
        m = j.at("m").get<std::int64_t>();
        const auto& q = j.at("quad");
        quad = {q.at(0).get<std::int64_t>(), q.at(1).get<std::int64_t>(), q.at(2).get<std::int64_t>(),
                q.at(3).get<std::int64_t>()};
        kind = parse_set_kind(j.at("set").get<std::string>());
        s = {j.at("x").get<std::int64_t>(), j.at("y").get<std::int64_t>(), j.at("z").get<std::int64_t>(),
             j.at("t").get<std::int64_t>(), j.at("n").get<std::int64_t>()};
    } else {
        quad = parse_quadruple(o.quad);
        kind = parse_set_kind(o.set);
        s = {o.x, o.y, o.z, o.t, o.n.value_or(quad.form(o.x, o.y, o.z, o.t))};
    }
    const bool ok = check_solution(m, quad, TargetSet(kind), s);
    if (o.format == "json") {
        auto j = solution_json(m, quad, kind, s);
        j["valid"] = ok;
        out << j.dump() << '\n';
    } else {
        out << (ok ? "valid" : "invalid") << ": m=" << m << " quad=" << to_string(quad) << " set=" << to_string(kind)
            << " x=" << s.x << " y=" << s.y << " z=" << s.z << " t=" << s.t << " n=" << s.n << '\n';
    }
    return ok ? kOk : kFailuresFound;
}

int cmd_identities(const Options& o, std::ostream& out)
{
    const auto suite = identity_suite();
    std::size_t holding = 0;
    for (const auto& id : suite) {
        if (id.holds) ++holding;
        if (o.verbose || !id.holds) out << (id.holds ? "ok    " : "FAIL  ") << id.label << '\n';
    }
    out << holding << "/" << suite.size() << " identities hold\n";
    return holding == suite.size() ? kOk : kFailuresFound;
}

int cmd_bounds(const Options& o, std::ostream& out)
{
    const auto b = check_bounds();
    if (o.format == "json") {
        ordered_json j;
        j["bound_39"] = static_cast<double>(b.bound_39);
        j["bound_39_ok"] = b.bound_39_ok;
        j["bound_29"] = static_cast<double>(b.bound_29);
        j["bound_29_ok"] = b.bound_29_ok;
        j["window_39"] = static_cast<double>(b.window_39);
        j["window_39_ok"] = b.window_39_ok;
        j["window_29"] = static_cast<double>(b.window_29);
        j["window_29_ok"] = b.window_29_ok;
        out << j.dump(2) << '\n';
    } else {
        out << std::setprecision(12);
        out << "(4/(39^(1/4)-38^(1/4)))^4 = " << static_cast<double>(b.bound_39) << " < 3.74e9: "
            << (b.bound_39_ok ? "yes" : "NO") << '\n';
        out << "(6/(29^(1/4)-28^(1/4)))^4 = " << static_cast<double>(b.bound_29) << " < 7.67e9: "
            << (b.bound_29_ok ? "yes" : "NO") << '\n';
        out << "window at 3.74e9 = " << static_cast<double>(b.window_39) << " >= 4: " << (b.window_39_ok ? "yes" : "NO")
            << '\n';
        out << "window at 7.67e9 = " << static_cast<double>(b.window_29) << " >= 6: " << (b.window_29_ok ? "yes" : "NO")
            << '\n';
    }
    return b.ok() ? kOk : kFailuresFound;
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Restricted sums of four squares: solver and range verifier", "foursq"};
    app.require_subcommand(1);
    Options o;

    auto* solve = app.add_subcommand("solve", "Find x,y,z,t with x^2+y^2+z^2+t^2=m and ax+by+cz+dt in S");
    solve->add_option("--m", o.m, "Target m")->required()->check(CLI::NonNegativeNumber);
    solve->add_option("--quad", o.quad, "Coefficients a,b,c,d")->required();
    solve->add_option("--set", o.set, "squares|cubes|pow2")->required()->check(CLI::IsMember({"squares", "cubes", "pow2"}));
    solve->add_flag("--natural", o.natural, "Require x,y,z,t >= 0");
    solve->add_option("--n", o.n, "Solve at this linear-form value only");
    solve->add_option("--format", o.format, "human|json")->check(CLI::IsMember({"human", "json"}));

    auto* verify = app.add_subcommand("verify", "Verify a theorem over m in [lo, hi)");
    verify->add_option("--theorem", o.theorem, "1.1|1.2|1.3|1.4a|1.4b")
        ->required()
        ->check(CLI::IsMember({"1.1", "1.2", "1.3", "1.4a", "1.4b"}));
    verify->add_option("--lo", o.lo, "Range start (inclusive)")->required()->check(CLI::NonNegativeNumber);
    verify->add_option("--hi", o.hi, "Range end (exclusive)")->required()->check(CLI::NonNegativeNumber);
    verify->add_option("--chunk", o.chunk, "Chunk size")->check(CLI::PositiveNumber);
    verify->add_option("--workers", o.workers, "Worker threads (default: FOURSQ_THREADS or all cores)");
    verify->add_option("--checkpoint", o.checkpoint, "Checkpoint file");
    verify->add_option("--quad", o.quad, "Restrict to one quadruple of the theorem");
    verify->add_option("--stop-after", o.stop_after, "Stop after this many chunks (leaves a checkpoint)");
    verify->add_option("--failure-cap", o.failure_cap, "Maximum failures listed in the report");
    verify->add_option("--format", o.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

    auto* reps = app.add_subcommand("reps", "Canonical four-square (or three-square) representations");
    reps->add_option("--m", o.m)->required()->check(CLI::NonNegativeNumber);
    reps->add_flag("--three", o.three, "Three-square representations");
    reps->add_option("--format", o.format, "human|json")->check(CLI::IsMember({"human", "json"}));

    auto* cand = app.add_subcommand("candidates", "Candidate sets S_m, C_m, P_m");
    cand->add_option("--m", o.m)->required()->check(CLI::NonNegativeNumber);
    cand->add_option("--kind", o.kind, "squares|cubes|pow2")->required()->check(CLI::IsMember({"squares", "cubes", "pow2"}));
    cand->add_option("--format", o.format, "human|json")->check(CLI::IsMember({"human", "json"}));

    auto* oracle = app.add_subcommand("oracle", "Brute-force cross-check");
    oracle->add_option("--m", o.m)->required()->check(CLI::NonNegativeNumber);
    oracle->add_option("--quad", o.quad)->required();
    oracle->add_option("--set", o.set)->required()->check(CLI::IsMember({"squares", "cubes", "pow2"}));
    oracle->add_option("--bound", o.bound, "Largest m the oracle accepts");
    oracle->add_option("--format", o.format, "human|json")->check(CLI::IsMember({"human", "json"}));

    auto* check = app.add_subcommand("check", "Validate a certificate");
    check->add_option("--m", o.m)->check(CLI::NonNegativeNumber);
    check->add_option("--quad", o.quad);
    check->add_option("--set", o.set)->check(CLI::IsMember({"squares", "cubes", "pow2"}));
    check->add_option("--x", o.x);
    check->add_option("--y", o.y);
    check->add_option("--z", o.z);
    check->add_option("--t", o.t);
    check->add_option("--n", o.n, "Linear-form value (default: computed)");
    check->add_option("--from-json", o.from_json, "Read a solve --format json certificate ('-' for stdin)");
    check->add_option("--format", o.format, "human|json")->check(CLI::IsMember({"human", "json"}));

    auto* ids = app.add_subcommand("identities", "Check the conjugation identities behind the rule table");
    ids->add_flag("--verbose", o.verbose);

    auto* bounds = app.add_subcommand("bounds", "Check the large-m bounds and window lengths");
    bounds->add_option("--format", o.format, "human|json")->check(CLI::IsMember({"human", "json"}));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*solve) return cmd_solve(o, out, err);
        if (*verify) return cmd_verify(o, out);
        if (*reps) return cmd_reps(o, out);
        if (*cand) return cmd_candidates(o, out);
        if (*oracle) return cmd_oracle(o, out, err);
        if (*check) {
            if (o.from_json.empty() && o.quad.empty()) {
                err << "check: need --quad (or --from-json)\n";
                return kUsage;
            }
            return cmd_check(o, in, out);
        }
        if (*ids) return cmd_identities(o, out);
        if (*bounds) return cmd_bounds(o, out);
    } catch (const RangeError& e) {
        err << "error: " << e.what() << '\n';
        return kRange;
    } catch (const NoSolution& e) {
        err << "error: " << e.what() << '\n';
        return kFailuresFound;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

} // namespace foursq::cli
