#include "apw/seed_store.hpp"

namespace apw {
namespace {

std::string seed_key(const Seed& seed) {
  return std::string(seed.begin(), seed.end());
}

Seed random_seed(std::mt19937_64& rng) {
  Seed seed{};
  for (std::size_t i = 0; i < seed.size(); i += 8) {
    std::uint64_t word = rng();
    for (std::size_t b = 0; b < 8; ++b) {
      seed[i + b] = static_cast<std::uint8_t>(word >> (8 * b));
    }
  }
  return seed;
}

}  // namespace

std::string_view to_string(VerifyOutcome::Code code) {
  switch (code) {
    case VerifyOutcome::Code::Accept: return "Accept";
    case VerifyOutcome::Code::UnknownSeed: return "UnknownSeed";
    case VerifyOutcome::Code::Expired: return "Expired";
    case VerifyOutcome::Code::Replayed: return "Replayed";
    case VerifyOutcome::Code::WrongClient: return "WrongClient";
    case VerifyOutcome::Code::DifficultyMismatch: return "DifficultyMismatch";
    case VerifyOutcome::Code::BadHash: return "BadHash";
    case VerifyOutcome::Code::Malformed: return "Malformed";
  }
  return "Unknown";
}

SeedStore::SeedStore(std::size_t capacity, std::int64_t ttl_seconds)
    : capacity_(capacity), ttl_(ttl_seconds) {}

std::optional<PuzzleChallenge> SeedStore::issue(std::string client_ip,
                                                int difficulty,
                                                std::mt19937_64& rng,
                                                std::int64_t now) {
  std::lock_guard lock(mu_);
  if (entries_.size() >= capacity_) {
    purge_locked(now);
    if (entries_.size() >= capacity_) return std::nullopt;
  }

  Seed seed{};
  std::string key;
  while (true) {
    seed = random_seed(rng);
    key = seed_key(seed);
    auto it = entries_.find(key);
    if (it == entries_.end()) break;
    if (expired(it->second, now) || it->second.consumed) {
      entries_.erase(it);  // stale entry may be displaced
      break;
    }
    // live collision (vanishingly rare): redraw
  }

  entries_[key] = Entry{now, difficulty, client_ip, false};

  PuzzleChallenge challenge;
  challenge.seed = seed;
  challenge.issued_at = now;
  challenge.difficulty = difficulty;
  challenge.ttl = ttl_;
  challenge.client_ip = std::move(client_ip);
  return challenge;
}

VerifyOutcome SeedStore::verify(const PuzzleSolution& solution,
                                std::string_view presented_client_ip,
                                std::int64_t now) {
  using Code = VerifyOutcome::Code;
  const std::string key = seed_key(solution.seed);

  {
    std::lock_guard lock(mu_);
    auto it = entries_.find(key);
    if (it == entries_.end()) return {Code::UnknownSeed};
    const Entry& e = it->second;
    if (expired(e, now)) return {Code::Expired};
    if (e.consumed) return {Code::Replayed};
    if (e.difficulty != solution.difficulty) return {Code::DifficultyMismatch};
    if (e.client_ip != presented_client_ip) return {Code::WrongClient};
  }

  if (solution.version != 1) return {Code::Malformed};
  auto preimage = make_preimage(solution.issued_at, solution.seed,
                                solution.difficulty, presented_client_ip,
                                solution.nonce);
  if (!preimage) return {Code::Malformed};
  if (leading_zero_bits(sha256(*preimage)) < solution.difficulty) {
    return {Code::BadHash};
  }

  // The digest was computed outside the lock; re-check and consume
  // atomically so concurrent verifiers race to exactly one Accept.
  std::lock_guard lock(mu_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return {Code::UnknownSeed};
  if (expired(it->second, now)) return {Code::Expired};
  if (it->second.consumed) return {Code::Replayed};
  it->second.consumed = true;
  return {Code::Accept};
}

std::size_t SeedStore::purge_expired(std::int64_t now) {
  std::lock_guard lock(mu_);
  return purge_locked(now);
}

std::size_t SeedStore::purge_locked(std::int64_t now) {
  std::size_t removed = 0;
  for (auto it = entries_.begin(); it != entries_.end();) {
    if (expired(it->second, now)) {
      it = entries_.erase(it);
      ++removed;
    } else {
      ++it;
    }
  }
  return removed;
}

std::size_t SeedStore::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

}  // namespace apw
