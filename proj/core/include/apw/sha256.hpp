#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

namespace apw {

using Digest = std::array<std::uint8_t, 32>;

Digest sha256(std::span<const std::uint8_t> data);
Digest sha256(std::string_view data);

// Process-wide count of digest evaluations. Lets tests pin the cost of
// verification (exactly one evaluation per verify).
std::uint64_t sha256_invocations() noexcept;

}  // namespace apw
