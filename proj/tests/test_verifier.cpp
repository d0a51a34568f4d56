#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <unistd.h>

#include "checkpoint.hpp"
#include "foursq/arith.hpp"
#include "foursq/errors.hpp"
#include "foursq/verifier.hpp"

using foursq::Theorem;
using foursq::VerificationJob;

namespace {

std::filesystem::path scratch_file(const std::string& name)
{
    const auto dir = std::filesystem::temp_directory_path() / ("foursq_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    const auto p = dir / name;
    std::filesystem::remove(p);
    return p;
}

std::string stable_json(const VerificationJob& job)
{
    return foursq::report_json(foursq::verify_theorem(job), false);
}

} // namespace

TEST_CASE("theorem ids")
{
    for (const auto th : {Theorem::T1_1, Theorem::T1_2, Theorem::T1_3, Theorem::T1_4a, Theorem::T1_4b})
        CHECK(foursq::parse_theorem(foursq::to_string(th)) == th);
    CHECK_THROWS(foursq::parse_theorem("2.0"));
    CHECK(foursq::theorem_spec(Theorem::T1_1).quads.size() == 9);
    CHECK(foursq::theorem_spec(Theorem::T1_2).quads.size() == 5);
    CHECK(foursq::theorem_spec(Theorem::T1_3).quads.size() == 4);
    CHECK(foursq::theorem_spec(Theorem::T1_4a).quads == std::vector<foursq::SystemQuadruple>{{1, 2, 3, 5}});
    CHECK(foursq::theorem_spec(Theorem::T1_4b).quads == std::vector<foursq::SystemQuadruple>{{2, 3, 4, 0}});
}

TEST_CASE("reduction")
{
    CHECK(foursq::reduce(128, Theorem::T1_1) == 2);
    CHECK(foursq::reduce(48, Theorem::T1_2) == 3);
    CHECK(foursq::reduce(22, Theorem::T1_3) == 22);
    CHECK(foursq::reduce(256, Theorem::T1_3) == 1);
    CHECK(foursq::reduce(0, Theorem::T1_1) == 0);
    CHECK(foursq::reduce(64, Theorem::T1_4a) == 64);
}

TEST_CASE("certificates lift back to the original m")
{
    for (const auto th : {Theorem::T1_1, Theorem::T1_2, Theorem::T1_3})
        for (const std::int64_t m : {64, 128, 192, 4096, 48, 16 * 7, 256 * 3})
            for (const auto& q : foursq::theorem_spec(th).quads) {
                const auto s = foursq::certify(m, th, q);
                CHECK(foursq::check_solution(m, q, foursq::theorem_spec(th).set, s));
            }
}

TEST_CASE("windowed options")
{
    const std::int64_t m = foursq::kBound39;
    const auto opts = foursq::window_options(m, Theorem::T1_4a);
    CHECK(opts.natural);
    REQUIRE(opts.n_min.has_value());
    REQUIRE(opts.n_max.has_value());
    const auto kmin = foursq::isqrt(*opts.n_min), kmax = foursq::isqrt(*opts.n_max);
    CHECK(kmin * kmin == *opts.n_min);
    CHECK(kmin == foursq::iroot4_ceil(38 * m));
    CHECK(kmax == foursq::iroot4_floor(39 * m));
    CHECK(kmax - kmin >= 3);
    CHECK_FALSE(opts.n_filter(9));
    CHECK(opts.n_filter(16));

    const auto s = foursq::certify(m + 1, Theorem::T1_4a, {1, 2, 3, 5});
    CHECK(s.is_natural());
    CHECK(s.n >= *opts.n_min);
    CHECK(s.n <= *opts.n_max);
    CHECK(s.n % 3 != 0);
}

TEST_CASE("bounds")
{
    const auto b = foursq::check_bounds();
    CHECK(b.bound_39_ok);
    CHECK(b.window_39_ok);
    CHECK(b.bound_39 == doctest::Approx(3'739'366'402.91L).epsilon(1e-9));
    CHECK(b.bound_29 == doctest::Approx(7'678'255'699.89L).epsilon(1e-9));
    // the 29-bound as stated is too small: the window at 7.67e9 is shorter than 6
    CHECK_FALSE(b.bound_29_ok);
    CHECK_FALSE(b.window_29_ok);
    CHECK(foursq::window_length(1000, 38, 39) < 4);
}

TEST_CASE("tally merge is order independent and capped")
{
    foursq::Tally a, b;
    a.verified = 3;
    a.failed = 2;
    a.failures = {{5, {1, 1, 2, 2}, "x"}, {9, {1, 1, 2, 2}, "y"}};
    b.verified = 1;
    b.failed = 1;
    b.failures = {{7, {1, 1, 2, 2}, "z"}};
    auto ab = a, ba = b;
    ab.merge(b, 2);
    ba.merge(a, 2);
    CHECK(ab == ba);
    CHECK(ab.failed == 3);
    REQUIRE(ab.failures.size() == 2);
    CHECK(ab.failures[0].m == 5);
    CHECK(ab.failures[1].m == 7);
}

TEST_CASE("checkpoint record round trip and tamper detection")
{
    foursq::detail::CheckpointState st;
    st.theorem = Theorem::T1_2;
    st.lo = 1;
    st.hi = 5000;
    st.chunk = 100;
    st.quad = "1,3,3,0";
    st.verified_prefix = 301;
    st.completed = {{501, 601}, {901, 1001}};
    st.tally.verified = 1500;
    st.tally.reduced = 12;
    st.tally.failed = 1;
    st.tally.failures = {{77, {1, 3, 3, 0}, "m=77 trace"}};

    const auto rec = foursq::detail::encode_checkpoint(st);
    const auto back = foursq::detail::decode_checkpoint(rec);
    CHECK(back.theorem == st.theorem);
    CHECK(back.lo == st.lo);
    CHECK(back.hi == st.hi);
    CHECK(back.chunk == st.chunk);
    CHECK(back.quad == st.quad);
    CHECK(back.verified_prefix == st.verified_prefix);
    CHECK(back.completed == st.completed);
    CHECK(back.tally == st.tally);

    auto tampered = rec;
    tampered[tampered.find("301")] = '4';
    CHECK_THROWS_AS(foursq::detail::decode_checkpoint(tampered), foursq::DomainError);
    CHECK_THROWS_AS(foursq::detail::decode_checkpoint("garbage"), foursq::DomainError);

    const auto path = scratch_file("rt.ckpt");
    foursq::detail::write_checkpoint(path, st);
    const auto loaded = foursq::detail::load_checkpoint(path);
    REQUIRE(loaded.has_value());
    CHECK(loaded->tally == st.tally);
    CHECK_FALSE(foursq::detail::load_checkpoint(scratch_file("absent.ckpt")).has_value());
}

TEST_CASE("small range runs clean")
{
    VerificationJob job;
    job.theorem = Theorem::T1_3;
    job.lo = 0;
    job.hi = 2000;
    const auto r = foursq::verify_theorem(job);
    CHECK(r.complete);
    CHECK(r.success());
    CHECK(r.tally.failed == 0);
    CHECK(r.tally.total() == 2000);
    CHECK(r.tally.reduced > 0);

    job.theorem = Theorem::T1_2;
    job.lo = 0;
    job.hi = 10;
    const auto with_zero = foursq::verify_theorem(job);
    CHECK(with_zero.tally.failed == 1);
    CHECK(with_zero.tally.failures.size() == 5);
    CHECK_FALSE(with_zero.success());
    CHECK(with_zero.tally.failures.front().m == 0);
}

TEST_CASE("report formats")
{
    VerificationJob job;
    job.theorem = Theorem::T1_1;
    job.lo = 60;
    job.hi = 70;
    job.keep_outcomes = true;
    const auto r = foursq::verify_theorem(job);
    const auto j = nlohmann::json::parse(foursq::report_json(r));
    CHECK(j["theorem"] == "1.1");
    CHECK(j["range"] == nlohmann::json::array({60, 70}));
    CHECK(j["failed"] == 0);
    CHECK(j.contains("wall_ms"));
    CHECK_FALSE(nlohmann::json::parse(foursq::report_json(r, false)).contains("wall_ms"));

    const auto csv = foursq::report_csv(r);
    CHECK(csv.rfind("m,reduced_m,quad,x,y,z,t,n,status\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 10 * 9);
    CHECK(csv.find("64,1,") != std::string::npos);
}

TEST_CASE("reports do not depend on workers or chunking")
{
    VerificationJob job;
    job.theorem = Theorem::T1_1;
    job.lo = 0;
    job.hi = 3000;
    job.failure_cap = 5;
    std::string reference;
    for (const unsigned workers : {1U, 4U})
        for (const std::int64_t chunk : {1, 7, 1024}) {
            job.workers = workers;
            job.chunk = chunk;
            const auto s = stable_json(job);
            if (reference.empty()) reference = s;
            CAPTURE(workers);
            CAPTURE(chunk);
            CHECK(s == reference);
        }
}

TEST_CASE("interrupted run resumes to the same report")
{
    VerificationJob job;
    job.theorem = Theorem::T1_2;
    job.lo = 0; // m = 0 fails, so the resumed tally must carry a failure
    job.hi = 2500;
    job.chunk = 100;
    const auto reference = stable_json(job);

    for (const unsigned workers : {1U, 3U}) {
        job.workers = workers;
        job.checkpoint = scratch_file("resume_" + std::to_string(workers) + ".ckpt");
        job.stop_after = 7;
        const auto partial = foursq::verify_theorem(job);
        CHECK_FALSE(partial.complete);
        CHECK_FALSE(partial.success());
        REQUIRE(std::filesystem::exists(*job.checkpoint));

        job.stop_after = 5;
        CHECK_FALSE(foursq::verify_theorem(job).complete);

        job.stop_after.reset();
        CHECK(stable_json(job) == reference);
        // a finished checkpoint replays without recomputation
        CHECK(stable_json(job) == reference);
    }

    job.hi = 2600;
    CHECK_THROWS_AS(foursq::verify_theorem(job), foursq::DomainError);
}

TEST_CASE("invalid jobs")
{
    VerificationJob job;
    job.theorem = Theorem::T1_3;
    job.lo = 10;
    job.hi = 5;
    CHECK_THROWS(foursq::verify_theorem(job));
    job.hi = 20;
    job.chunk = 0;
    CHECK_THROWS(foursq::verify_theorem(job));
    job.chunk = 4;
    job.quad = foursq::SystemQuadruple{1, 2, 3, 5};
    CHECK_THROWS_AS(foursq::verify_theorem(job), foursq::UnsupportedQuadruple);
}
