#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace apw {

// Canonical text form of an IP address: dotted quad for IPv4, lowercase
// compressed form for IPv6. nullopt when the input parses as neither.
std::optional<std::string> canonical_ip(std::string_view text);

}  // namespace apw
