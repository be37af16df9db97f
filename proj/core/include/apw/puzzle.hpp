#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "apw/sha256.hpp"

namespace apw {

inline constexpr std::string_view kPreimageMagic = "APW1";
inline constexpr std::string_view kDigestAlg = "sha256-lzb";
inline constexpr std::size_t kSeedBytes = 16;

using Seed = std::array<std::uint8_t, kSeedBytes>;

struct PuzzleChallenge {
  int version = 1;
  Seed seed{};
  std::int64_t issued_at = 0;  // unix seconds
  int difficulty = 0;          // required leading zero bits
  std::int64_t ttl = 0;        // seconds
  std::string client_ip;       // canonical text form
};

struct PuzzleSolution {
  int version = 1;
  Seed seed{};
  std::int64_t issued_at = 0;
  int difficulty = 0;
  std::uint32_t nonce = 0;
};

// Exact solver/verifier input, ASCII:
//   "APW1:<ts>:<seed 32 lowercase hex>:<d>:<ip>:<nonce 8 lowercase hex>"
// nullopt when client_ip is not in canonical form.
std::optional<std::string> make_preimage(std::int64_t issued_at, const Seed& seed,
                                         int difficulty, std::string_view client_ip,
                                         std::uint32_t nonce);

// Consecutive zero bits from the most significant bit of byte 0.
int leading_zero_bits(const Digest& digest);

struct SolveResult {
  PuzzleSolution solution;
  std::uint64_t attempts = 0;  // digest evaluations performed (nonce + 1)
};

// Sequential nonce search from 0. nullopt when no nonce within max_attempts
// (capped at the full 32-bit space) satisfies the difficulty. Throws
// ParseError{Malformed} when client_ip is not canonical.
std::optional<SolveResult> solve(const PuzzleChallenge& challenge,
                                 std::string_view client_ip,
                                 std::uint64_t max_attempts = std::uint64_t{1} << 32);

}  // namespace apw
