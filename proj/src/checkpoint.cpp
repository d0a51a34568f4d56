#include "checkpoint.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "foursq/errors.hpp"

namespace foursq::detail {

using nlohmann::ordered_json;

std::uint64_t fnv1a(std::string_view text)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string tally_to_json(const Tally& tally)
{
    ordered_json j;
    j["verified"] = tally.verified;
    j["reduced"] = tally.reduced;
    j["skipped"] = tally.skipped;
    j["failed"] = tally.failed;
    j["failures"] = ordered_json::array();
    for (const auto& f : tally.failures)
        j["failures"].push_back({{"m", f.m}, {"quad", {f.quad.a, f.quad.b, f.quad.c, f.quad.d}}, {"trace", f.trace}});
    return j.dump();
}

Tally tally_from_json(const std::string& text)
{
    const auto j = ordered_json::parse(text);
    Tally t;
    t.verified = j.at("verified").get<std::int64_t>();
    t.reduced = j.at("reduced").get<std::int64_t>();
    t.skipped = j.at("skipped").get<std::int64_t>();
    t.failed = j.at("failed").get<std::int64_t>();
    for (const auto& f : j.at("failures")) {
        const auto q = f.at("quad");
        t.failures.push_back({f.at("m").get<std::int64_t>(),
                              {q.at(0).get<std::int64_t>(), q.at(1).get<std::int64_t>(), q.at(2).get<std::int64_t>(),
                               q.at(3).get<std::int64_t>()},
                              f.at("trace").get<std::string>()});
    }
    return t;
}

std::string encode_checkpoint(const CheckpointState& s)
{
    std::ostringstream os;
    os << to_string(s.theorem) << '|' << s.lo << '|' << s.hi << '|' << s.chunk << '|' << s.quad << '|'
       << s.verified_prefix << '|';
    for (std::size_t idx = 0; idx < s.completed.size(); ++idx)
        os << (idx ? "," : "") << s.completed[idx].first << '-' << s.completed[idx].second;
    os << '|' << tally_to_json(s.tally);
    const auto body = os.str();
    std::ostringstream hash;
    hash << std::hex << std::setw(16) << std::setfill('0') << fnv1a(body);
    return body + '|' + hash.str();
}

CheckpointState decode_checkpoint(const std::string& record)
{
    const auto last = record.rfind('|');
    if (last == std::string::npos) throw DomainError("checkpoint: malformed record");
    const auto body = record.substr(0, last);
    std::uint64_t stored = 0;
    {
        std::istringstream hs(record.substr(last + 1));
        if (!(hs >> std::hex >> stored)) throw DomainError("checkpoint: missing integrity hash");
    }
    if (stored != fnv1a(body)) throw DomainError("checkpoint: integrity hash mismatch");

    std::vector<std::string> fields;
    std::size_t pos = 0;
    for (int idx = 0; idx < 7; ++idx) {
        const auto end = body.find('|', pos);
        if (end == std::string::npos) throw DomainError("checkpoint: too few fields");
        fields.push_back(body.substr(pos, end - pos));
        pos = end + 1;
    }
    fields.push_back(body.substr(pos));

    CheckpointState s;
    try {
        s.theorem = parse_theorem(fields[0]);
        s.lo = std::stoll(fields[1]);
        s.hi = std::stoll(fields[2]);
        s.chunk = std::stoll(fields[3]);
        s.quad = fields[4];
        s.verified_prefix = std::stoll(fields[5]);
        std::istringstream cs(fields[6]);
        std::string item;
        while (std::getline(cs, item, ',')) {
            const auto dash = item.find('-');
            if (dash == std::string::npos) throw DomainError("checkpoint: bad chunk entry " + item);
            s.completed.emplace_back(std::stoll(item.substr(0, dash)), std::stoll(item.substr(dash + 1)));
        }
        s.tally = tally_from_json(fields[7]);
    } catch (const DomainError&) {
        throw;
    } catch (const std::exception& e) {
        throw DomainError(std::string("checkpoint: ") + e.what());
    }
    return s;
}

void write_checkpoint(const std::filesystem::path& path, const CheckpointState& state)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("checkpoint: cannot write " + tmp.string());
        out << encode_checkpoint(state) << '\n';
        out.flush();
        if (!out) throw std::runtime_error("checkpoint: write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::optional<CheckpointState> load_checkpoint(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::string line;
    std::getline(in, line);
    if (line.empty()) return std::nullopt;
    return decode_checkpoint(line);
}

} // namespace foursq::detail
