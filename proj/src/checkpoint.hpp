#pragma once

// Checkpoint record: one line of '|'-separated fields
//
//   theorem|lo|hi|chunk|quad|verified_prefix|completed_chunks|tally|fnv1a
//
// completed_chunks lists out-of-order chunks as start-end pairs joined by
// ','; tally is the JSON aggregate over all completed work; the trailing
// field is the FNV-1a 64-bit hash (hex) of everything before it.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "foursq/verifier.hpp"

namespace foursq::detail {

struct CheckpointState {
    Theorem theorem = Theorem::T1_3;
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    std::int64_t chunk = 1;
    std::string quad = "all";
    std::int64_t verified_prefix = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> completed;
    Tally tally;
};

std::uint64_t fnv1a(std::string_view text);

std::string encode_checkpoint(const CheckpointState& state);
/// Throws DomainError on a malformed record or a hash mismatch.
CheckpointState decode_checkpoint(const std::string& record);

/// Writes to a sibling temporary file and renames it over `path`.
void write_checkpoint(const std::filesystem::path& path, const CheckpointState& state);
std::optional<CheckpointState> load_checkpoint(const std::filesystem::path& path);

std::string tally_to_json(const Tally& tally);
Tally tally_from_json(const std::string& text);

} // namespace foursq::detail
