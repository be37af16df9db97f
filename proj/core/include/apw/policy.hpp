#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>

namespace apw {

// Difficulty = required leading zero bits of the puzzle digest. Policies
// always emit at least 1; 0 is reserved for explicit operator exemptions.
inline constexpr int kDefaultMaxDifficulty = 30;
inline constexpr double kDefaultEpsilon = 1.0;

struct PolicySpec {
  enum class Kind { Linear, ErrorRange };

  Kind kind = Kind::Linear;
  int offset = 1;        // Linear: difficulty added to the rounded score (>= 1)
  double epsilon = kDefaultEpsilon;  // ErrorRange half-width (>= 0)
  int d_max = kDefaultMaxDifficulty;

  static PolicySpec linear(int offset, int d_max = kDefaultMaxDifficulty) {
    return {Kind::Linear, offset, 0.0, d_max};
  }
  static PolicySpec error_range(double epsilon, int d_max = kDefaultMaxDifficulty) {
    return {Kind::ErrorRange, 1, epsilon, d_max};
  }

  // "policy1" = linear/offset 1, "policy2" = linear/offset 5,
  // "policy3" = error-range. "linear" and "error-range" use the given knobs.
  static std::optional<PolicySpec> preset(std::string_view name,
                                          int offset = 1,
                                          double epsilon = kDefaultEpsilon,
                                          int d_max = kDefaultMaxDifficulty);
};

// Linear mapping: round the score half-up to an integer R in {0,...,10},
// then clamp(R + offset, 1, d_max).
int map_linear(double score, int offset, int d_max);

// Pre-clamp integer interval for the error-range policy:
// d_i = ceil(score + 1), lo = ceil(d_i - epsilon), hi = ceil(d_i + epsilon).
std::pair<long long, long long> error_range_interval(double score, double epsilon);

// Uniform integer draw from the interval, clamped into [1, d_max].
int map_error_range(double score, double epsilon, std::mt19937_64& rng, int d_max);

int apply_policy(const PolicySpec& spec, double score, std::mt19937_64& rng);

}  // namespace apw
