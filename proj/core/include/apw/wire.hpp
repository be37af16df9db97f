#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "apw/puzzle.hpp"

namespace apw {

inline constexpr std::string_view kPowHeader = "X-PoW";
inline constexpr std::string_view kPowRequiredHeader = "X-PoW-Required";
inline constexpr std::string_view kPowRejectHeader = "X-PoW-Reject";
inline constexpr std::string_view kClientIpHeader = "X-Client-IP";

// 403 challenge body:
//   {"v":1,"alg":"sha256-lzb","seed":"<32 hex>","ts":<int>,"d":<int>,"ttl":<int>}
std::string challenge_to_json(const PuzzleChallenge& challenge);

// Strict parse; client_ip is not on the wire and is left empty.
std::optional<PuzzleChallenge> challenge_from_json(std::string_view json);

// Solution request header value, field order fixed:
//   v=1;seed=<32 hex>;ts=<int>;d=<int>;nonce=<8 hex>
std::string format_pow_header(const PuzzleSolution& solution);
std::optional<PuzzleSolution> parse_pow_header(std::string_view value);

}  // namespace apw
