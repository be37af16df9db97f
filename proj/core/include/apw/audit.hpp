#pragma once

#include <cstdint>
#include <mutex>
#include <string>
#include <vector>

namespace apw {

// One line per gate decision. "serve" events must always be preceded by an
// "accept" for the same seed; the acceptance suite audits this.
struct AuditEvent {
  std::int64_t at = 0;
  std::string kind;       // challenge | reject | accept | serve | error
  std::string client_ip;
  std::string seed_hex;
  std::string detail;     // difficulty, reject reason, or HTTP status
};

class AuditLog {
public:
  void append(AuditEvent event) {
    std::lock_guard lock(mu_);
    events_.push_back(std::move(event));
  }

  std::vector<AuditEvent> snapshot() const {
    std::lock_guard lock(mu_);
    return events_;
  }

  std::size_t size() const {
    std::lock_guard lock(mu_);
    return events_.size();
  }

private:
  mutable std::mutex mu_;
  std::vector<AuditEvent> events_;
};

}  // namespace apw
