#include <sstream>

#include <json.hpp>

#include "foursq/verifier.hpp"

namespace foursq {

std::string report_json(const VerificationReport& report, bool include_timing)
{
    nlohmann::ordered_json j;
    j["theorem"] = to_string(report.theorem);
    j["range"] = {report.lo, report.hi};
    j["complete"] = report.complete;
    j["success"] = report.success();
    j["verified"] = report.tally.verified;
    j["reduced"] = report.tally.reduced;
    j["skipped"] = report.tally.skipped;
    j["failed"] = report.tally.failed;
    j["failures"] = nlohmann::ordered_json::array();
    for (const auto& f : report.tally.failures)
        j["failures"].push_back({{"m", f.m}, {"quad", {f.quad.a, f.quad.b, f.quad.c, f.quad.d}}, {"trace", f.trace}});
    if (include_timing) {
        j["wall_ms"] = report.wall_ms;
        j["per_sec"] = report.per_sec;
    }
    return j.dump(2);
}

std::string report_csv(const VerificationReport& report)
{
    std::ostringstream os;
    os << "m,reduced_m,quad,x,y,z,t,n,status\n";
    for (const auto& o : report.outcomes) {
        os << o.m << ',' << o.reduced_m << ",\"" << to_string(o.quad) << "\",";
        if (o.solution) {
            const auto& s = *o.solution;
            os << s.x << ',' << s.y << ',' << s.z << ',' << s.t << ',' << s.n;
        } else {
            os << ",,,,";
        }
        os << ',' << to_string(o.status) << '\n';
    }
    return os.str();
}

} // namespace foursq
