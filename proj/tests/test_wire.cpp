#include <doctest.h>

#include <random>

#include "apw/hex.hpp"
#include "apw/wire.hpp"

using namespace apw;

namespace {

PuzzleChallenge sample_challenge() {
  PuzzleChallenge c;
  c.seed = {0x00, 0x01, 0x02, 0x03, 0x04, 0x05, 0x06, 0x07,
            0x08, 0x09, 0x0a, 0x0b, 0x0c, 0x0d, 0x0e, 0x0f};
  c.issued_at = 1700000000;
  c.difficulty = 7;
  c.ttl = 120;
  c.client_ip = "10.0.0.1";
  return c;
}

}  // namespace

TEST_CASE("challenge JSON carries the fixed schema") {
  auto json = challenge_to_json(sample_challenge());
  CHECK(json.find("\"v\":1") != std::string::npos);
  CHECK(json.find("\"alg\":\"sha256-lzb\"") != std::string::npos);
  CHECK(json.find("\"seed\":\"000102030405060708090a0b0c0d0e0f\"") != std::string::npos);
  CHECK(json.find("\"ts\":1700000000") != std::string::npos);
  CHECK(json.find("\"d\":7") != std::string::npos);
  CHECK(json.find("\"ttl\":120") != std::string::npos);
}

TEST_CASE("challenge JSON parse-serialize round trip") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 100; ++i) {
    PuzzleChallenge c;
    for (auto& b : c.seed) b = static_cast<std::uint8_t>(rng());
    c.issued_at = static_cast<std::int64_t>(rng() % 4000000000ull);
    c.difficulty = static_cast<int>(rng() % 31);
    c.ttl = 1 + static_cast<std::int64_t>(rng() % 600);

    auto parsed = challenge_from_json(challenge_to_json(c));
    REQUIRE(parsed.has_value());
    CHECK(parsed->seed == c.seed);
    CHECK(parsed->issued_at == c.issued_at);
    CHECK(parsed->difficulty == c.difficulty);
    CHECK(parsed->ttl == c.ttl);
  }
}

TEST_CASE("challenge JSON rejects malformed bodies") {
  CHECK(!challenge_from_json("").has_value());
  CHECK(!challenge_from_json("{}").has_value());
  CHECK(!challenge_from_json("[1,2]").has_value());
  CHECK(!challenge_from_json("not json").has_value());

  auto json = challenge_to_json(sample_challenge());
  SUBCASE("wrong version") {
    auto bad = json;
    bad.replace(bad.find("\"v\":1"), 5, "\"v\":2");
    CHECK(!challenge_from_json(bad).has_value());
  }
  SUBCASE("wrong algorithm") {
    auto bad = json;
    bad.replace(bad.find("sha256-lzb"), 10, "md5-digest");
    CHECK(!challenge_from_json(bad).has_value());
  }
  SUBCASE("short seed") {
    auto bad = json;
    bad.replace(bad.find("000102"), 6, "0001");
    CHECK(!challenge_from_json(bad).has_value());
  }
}

TEST_CASE("X-PoW header has the fixed field order") {
  PuzzleSolution s;
  s.seed = sample_challenge().seed;
  s.issued_at = 1700000000;
  s.difficulty = 7;
  s.nonce = 0xdeadbeef;
  CHECK(format_pow_header(s) ==
        "v=1;seed=000102030405060708090a0b0c0d0e0f;ts=1700000000;d=7;nonce=deadbeef");
}

TEST_CASE("X-PoW header round trip") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 100; ++i) {
    PuzzleSolution s;
    for (auto& b : s.seed) b = static_cast<std::uint8_t>(rng());
    s.issued_at = static_cast<std::int64_t>(rng() % 4000000000ull);
    s.difficulty = static_cast<int>(rng() % 31);
    s.nonce = static_cast<std::uint32_t>(rng());

    auto parsed = parse_pow_header(format_pow_header(s));
    REQUIRE(parsed.has_value());
    CHECK(parsed->seed == s.seed);
    CHECK(parsed->issued_at == s.issued_at);
    CHECK(parsed->difficulty == s.difficulty);
    CHECK(parsed->nonce == s.nonce);
  }
}

TEST_CASE("X-PoW header parser is strict") {
  const std::string good =
      "v=1;seed=000102030405060708090a0b0c0d0e0f;ts=1700000000;d=7;nonce=deadbeef";
  CHECK(parse_pow_header(good).has_value());

  CHECK(!parse_pow_header("").has_value());
  CHECK(!parse_pow_header("v=2;" + good.substr(4)).has_value());
  // fields out of order
  CHECK(!parse_pow_header(
             "seed=000102030405060708090a0b0c0d0e0f;v=1;ts=1;d=7;nonce=deadbeef")
             .has_value());
  // missing field
  CHECK(!parse_pow_header("v=1;seed=000102030405060708090a0b0c0d0e0f;d=7;nonce=deadbeef")
             .has_value());
  // uppercase hex
  CHECK(!parse_pow_header(
             "v=1;seed=000102030405060708090A0B0C0D0E0F;ts=1;d=7;nonce=deadbeef")
             .has_value());
  // short nonce
  CHECK(!parse_pow_header(
             "v=1;seed=000102030405060708090a0b0c0d0e0f;ts=1;d=7;nonce=beef")
             .has_value());
  // trailing garbage
  CHECK(!parse_pow_header(good + ";x=1").has_value());
  CHECK(!parse_pow_header(good + " ").has_value());
  // negative difficulty
  CHECK(!parse_pow_header(
             "v=1;seed=000102030405060708090a0b0c0d0e0f;ts=1;d=-3;nonce=deadbeef")
             .has_value());
}
