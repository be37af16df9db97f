#include "apw/policy.hpp"

#include <algorithm>
#include <cmath>

namespace apw {

std::optional<PolicySpec> PolicySpec::preset(std::string_view name, int offset,
                                             double epsilon, int d_max) {
  if (name == "policy1") return linear(1, d_max);
  if (name == "policy2") return linear(5, d_max);
  if (name == "policy3") return error_range(epsilon, d_max);
  if (name == "linear") return linear(offset, d_max);
  if (name == "error-range") return error_range(epsilon, d_max);
  return std::nullopt;
}

int map_linear(double score, int offset, int d_max) {
  int rounded = static_cast<int>(std::floor(score + 0.5));  // half-up
  return std::clamp(rounded + offset, 1, d_max);
}

std::pair<long long, long long> error_range_interval(double score, double epsilon) {
  double d_i = std::ceil(score + 1.0);
  auto lo = static_cast<long long>(std::ceil(d_i - epsilon));
  auto hi = static_cast<long long>(std::ceil(d_i + epsilon));
  return {lo, hi};
}

int map_error_range(double score, double epsilon, std::mt19937_64& rng, int d_max) {
  auto [lo, hi] = error_range_interval(score, epsilon);
  std::uniform_int_distribution<long long> draw(lo, hi);
  long long d = std::clamp<long long>(draw(rng), 1, d_max);
  return static_cast<int>(d);
}

int apply_policy(const PolicySpec& spec, double score, std::mt19937_64& rng) {
  switch (spec.kind) {
    case PolicySpec::Kind::ErrorRange:
      return map_error_range(score, spec.epsilon, rng, spec.d_max);
    case PolicySpec::Kind::Linear:
    default:
      return map_linear(score, spec.offset, spec.d_max);
  }
}

}  // namespace apw
