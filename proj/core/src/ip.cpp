#include "apw/ip.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>

namespace apw {

std::optional<std::string> canonical_ip(std::string_view text) {
  if (text.empty() || text.size() >= INET6_ADDRSTRLEN) return std::nullopt;
  std::string buf(text);  // inet_pton wants a terminated string

  char out[INET6_ADDRSTRLEN];
  in_addr v4{};
  if (inet_pton(AF_INET, buf.c_str(), &v4) == 1) {
    if (!inet_ntop(AF_INET, &v4, out, sizeof(out))) return std::nullopt;
    return std::string(out);
  }
  in6_addr v6{};
  if (inet_pton(AF_INET6, buf.c_str(), &v6) == 1) {
    if (!inet_ntop(AF_INET6, &v6, out, sizeof(out))) return std::nullopt;
    return std::string(out);
  }
  return std::nullopt;
}

}  // namespace apw
