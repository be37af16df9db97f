#include "apw/puzzle.hpp"

#include <bit>
#include <cstdio>

#include "apw/errors.hpp"
#include "apw/hex.hpp"
#include "apw/ip.hpp"

namespace apw {
namespace {

void append_nonce_hex(std::string& out, std::uint32_t nonce) {
  char buf[9];
  std::snprintf(buf, sizeof(buf), "%08x", nonce);
  out.append(buf, 8);
}

// Preimage minus the trailing 8 nonce characters; nullopt on a bad IP.
std::optional<std::string> preimage_prefix(std::int64_t issued_at, const Seed& seed,
                                           int difficulty, std::string_view client_ip) {
  auto canonical = canonical_ip(client_ip);
  if (!canonical || *canonical != client_ip) return std::nullopt;

  std::string out;
  out.reserve(64 + canonical->size());
  out += kPreimageMagic;
  out.push_back(':');
  out += std::to_string(issued_at);
  out.push_back(':');
  out += hex_encode(seed);
  out.push_back(':');
  out += std::to_string(difficulty);
  out.push_back(':');
  out += *canonical;
  out.push_back(':');
  return out;
}

}  // namespace

std::optional<std::string> make_preimage(std::int64_t issued_at, const Seed& seed,
                                         int difficulty, std::string_view client_ip,
                                         std::uint32_t nonce) {
  auto prefix = preimage_prefix(issued_at, seed, difficulty, client_ip);
  if (!prefix) return std::nullopt;
  append_nonce_hex(*prefix, nonce);
  return prefix;
}

int leading_zero_bits(const Digest& digest) {
  int bits = 0;
  for (std::uint8_t byte : digest) {
    if (byte == 0) {
      bits += 8;
      continue;
    }
    bits += std::countl_zero(byte);
    break;
  }
  return bits;
}

std::optional<SolveResult> solve(const PuzzleChallenge& challenge,
                                 std::string_view client_ip,
                                 std::uint64_t max_attempts) {
  auto prefix = preimage_prefix(challenge.issued_at, challenge.seed,
                                challenge.difficulty, client_ip);
  if (!prefix) {
    throw ParseError(ParseError::Kind::Malformed,
                     "solve: client IP is not canonical");
  }

  std::string buf = *prefix;
  const std::size_t nonce_at = buf.size();
  buf.resize(buf.size() + 8);

  const std::uint64_t limit = std::min<std::uint64_t>(max_attempts, std::uint64_t{1} << 32);
  for (std::uint64_t n = 0; n < limit; ++n) {
    const auto nonce = static_cast<std::uint32_t>(n);
    char hex[9];
    std::snprintf(hex, sizeof(hex), "%08x", nonce);
    buf.replace(nonce_at, 8, hex, 8);
    if (leading_zero_bits(sha256(buf)) >= challenge.difficulty) {
      SolveResult result;
      result.solution = {challenge.version, challenge.seed, challenge.issued_at,
                         challenge.difficulty, nonce};
      result.attempts = n + 1;
      return result;
    }
  }
  return std::nullopt;  // nonce space (or budget) exhausted
}

}  // namespace apw
