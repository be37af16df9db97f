#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>

#include "apw/puzzle.hpp"

namespace apw {

struct VerifyOutcome {
  enum class Code {
    Accept,
    UnknownSeed,
    Expired,
    Replayed,
    WrongClient,
    DifficultyMismatch,
    BadHash,
    Malformed,
  };

  Code code = Code::Accept;

  bool accepted() const { return code == Code::Accept; }
};

std::string_view to_string(VerifyOutcome::Code code);

// Tracks issued seeds until they expire so that each one is solvable at most
// once. Shared mutable state: all operations are safe to call concurrently,
// and consuming a seed is atomic with the Accept decision.
class SeedStore {
public:
  SeedStore(std::size_t capacity, std::int64_t ttl_seconds);

  // Fresh challenge for client_ip, recorded unconsumed. nullopt when the
  // store is at capacity even after dropping expired entries (load shedding).
  std::optional<PuzzleChallenge> issue(std::string client_ip, int difficulty,
                                       std::mt19937_64& rng, std::int64_t now);

  // Checks, in order: seed known, not expired, not consumed, difficulty
  // match, client match, digest has enough leading zero bits. The digest is
  // evaluated exactly once and only after every cheap check passes.
  VerifyOutcome verify(const PuzzleSolution& solution,
                       std::string_view presented_client_ip, std::int64_t now);

  // Drops entries past issued_at + ttl; returns how many were removed.
  std::size_t purge_expired(std::int64_t now);

  std::size_t size() const;
  std::int64_t ttl() const { return ttl_; }

private:
  struct Entry {
    std::int64_t issued_at = 0;
    int difficulty = 0;
    std::string client_ip;
    bool consumed = false;
  };

  bool expired(const Entry& e, std::int64_t now) const {
    return e.issued_at + ttl_ < now;
  }
  std::size_t purge_locked(std::int64_t now);

  mutable std::mutex mu_;
  std::unordered_map<std::string, Entry> entries_;  // keyed by raw seed bytes
  std::size_t capacity_;
  std::int64_t ttl_;
};

}  // namespace apw
