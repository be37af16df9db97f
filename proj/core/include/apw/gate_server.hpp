#pragma once

#include <functional>
#include <memory>

#include "apw/gate.hpp"

namespace apw {

// HTTP front door around GateCore. start() binds the configured listen
// address (port 0 picks an ephemeral port) and serves on a background
// thread until stop().
class GateServer {
public:
  GateServer(GateConfig config, std::shared_ptr<Scorer> scorer,
             std::function<std::int64_t()> clock = {});
  ~GateServer();

  GateServer(const GateServer&) = delete;
  GateServer& operator=(const GateServer&) = delete;

  bool start();
  void stop();
  int port() const;

  GateCore& core();

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace apw
