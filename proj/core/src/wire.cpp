#include "apw/wire.hpp"

#include <charconv>
#include <cstdio>
#include <system_error>

#include <nlohmann/json.hpp>

#include "apw/hex.hpp"

namespace apw {
namespace {

std::optional<Seed> seed_from_hex(std::string_view hex) {
  if (hex.size() != 2 * kSeedBytes) return std::nullopt;
  auto bytes = hex_decode(hex);
  if (!bytes) return std::nullopt;
  Seed seed{};
  std::copy(bytes->begin(), bytes->end(), seed.begin());
  return seed;
}

template <typename T>
std::optional<T> parse_int(std::string_view text) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

// Consumes "<key>=" plus the value up to the next ';' (or end).
std::optional<std::string_view> take_field(std::string_view& rest,
                                           std::string_view key, bool last) {
  if (rest.size() < key.size() + 1 || rest.substr(0, key.size()) != key ||
      rest[key.size()] != '=') {
    return std::nullopt;
  }
  rest.remove_prefix(key.size() + 1);
  std::size_t end = rest.find(';');
  if (last) {
    if (end != std::string_view::npos) return std::nullopt;
    std::string_view value = rest;
    rest = {};
    return value;
  }
  if (end == std::string_view::npos) return std::nullopt;
  std::string_view value = rest.substr(0, end);
  rest.remove_prefix(end + 1);
  return value;
}

}  // namespace

std::string challenge_to_json(const PuzzleChallenge& challenge) {
  nlohmann::json j;
  j["v"] = challenge.version;
  j["alg"] = std::string(kDigestAlg);
  j["seed"] = hex_encode(challenge.seed);
  j["ts"] = challenge.issued_at;
  j["d"] = challenge.difficulty;
  j["ttl"] = challenge.ttl;
  return j.dump();
}

std::optional<PuzzleChallenge> challenge_from_json(std::string_view json) {
  nlohmann::json j = nlohmann::json::parse(json, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  if (!j.contains("v") || !j["v"].is_number_integer() || j["v"] != 1) {
    return std::nullopt;
  }
  if (!j.contains("alg") || j["alg"] != std::string(kDigestAlg)) return std::nullopt;
  if (!j.contains("seed") || !j["seed"].is_string()) return std::nullopt;
  if (!j.contains("ts") || !j["ts"].is_number_integer()) return std::nullopt;
  if (!j.contains("d") || !j["d"].is_number_integer()) return std::nullopt;
  if (!j.contains("ttl") || !j["ttl"].is_number_integer()) return std::nullopt;

  auto seed = seed_from_hex(j["seed"].get<std::string>());
  if (!seed) return std::nullopt;

  PuzzleChallenge challenge;
  challenge.version = 1;
  challenge.seed = *seed;
  challenge.issued_at = j["ts"].get<std::int64_t>();
  challenge.difficulty = j["d"].get<int>();
  challenge.ttl = j["ttl"].get<std::int64_t>();
  if (challenge.difficulty < 0 || challenge.ttl <= 0) return std::nullopt;
  return challenge;
}

std::string format_pow_header(const PuzzleSolution& solution) {
  char nonce_hex[9];
  std::snprintf(nonce_hex, sizeof(nonce_hex), "%08x", solution.nonce);
  std::string out = "v=1;seed=";
  out += hex_encode(solution.seed);
  out += ";ts=";
  out += std::to_string(solution.issued_at);
  out += ";d=";
  out += std::to_string(solution.difficulty);
  out += ";nonce=";
  out.append(nonce_hex, 8);
  return out;
}

std::optional<PuzzleSolution> parse_pow_header(std::string_view value) {
  std::string_view rest = value;
  auto v = take_field(rest, "v", false);
  if (!v || *v != "1") return std::nullopt;
  auto seed_hex = take_field(rest, "seed", false);
  if (!seed_hex) return std::nullopt;
  auto ts = take_field(rest, "ts", false);
  if (!ts) return std::nullopt;
  auto d = take_field(rest, "d", false);
  if (!d) return std::nullopt;
  auto nonce_hex = take_field(rest, "nonce", true);
  if (!nonce_hex || nonce_hex->size() != 8) return std::nullopt;

  auto seed = seed_from_hex(*seed_hex);
  auto issued_at = parse_int<std::int64_t>(*ts);
  auto difficulty = parse_int<int>(*d);
  auto nonce_bytes = hex_decode(*nonce_hex);
  if (!seed || !issued_at || !difficulty || !nonce_bytes) return std::nullopt;
  if (*difficulty < 0) return std::nullopt;

  std::uint32_t nonce = 0;
  for (std::uint8_t b : *nonce_bytes) nonce = nonce << 8 | b;

  PuzzleSolution solution;
  solution.version = 1;
  solution.seed = *seed;
  solution.issued_at = *issued_at;
  solution.difficulty = *difficulty;
  solution.nonce = nonce;
  return solution;
}

}  // namespace apw
