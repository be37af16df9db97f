#include "apw/gate_server.hpp"

#include <thread>

#include <httplib.h>

namespace apw {
namespace {

// "host:port" -> {host, port}; IPv6 hosts use "[::1]:8080".
std::pair<std::string, int> split_listen(const std::string& listen) {
  std::size_t colon = listen.rfind(':');
  if (colon == std::string::npos) return {listen, 8080};
  std::string host = listen.substr(0, colon);
  int port = std::stoi(listen.substr(colon + 1));
  if (host.size() >= 2 && host.front() == '[' && host.back() == ']') {
    host = host.substr(1, host.size() - 2);
  }
  return {host, port};
}

GateRequest to_gate_request(const httplib::Request& req) {
  GateRequest out;
  out.method = req.method;
  out.path = req.path;
  out.peer_addr = req.remote_addr;
  if (req.has_header(std::string(kPowHeader))) {
    out.pow_header = req.get_header_value(std::string(kPowHeader));
  }
  if (req.has_header(std::string(kClientIpHeader))) {
    out.client_ip_header = req.get_header_value(std::string(kClientIpHeader));
  }
  return out;
}

}  // namespace

struct GateServer::Impl {
  Impl(GateConfig config, std::shared_ptr<Scorer> scorer,
       std::function<std::int64_t()> clock)
      : core(std::move(config), std::move(scorer), std::move(clock)) {}

  GateCore core;
  httplib::Server server;
  std::thread serve_thread;
  int bound_port = 0;

  void apply(const GateResponse& decision, const httplib::Request& req,
             httplib::Response& res) {
    if (decision.serve_upstream) {
      relay(req, res);
      return;
    }
    res.status = decision.status;
    for (const auto& [name, value] : decision.headers) {
      res.set_header(name, value);
    }
    res.set_content(decision.body, decision.content_type);
  }

  void relay(const httplib::Request& req, httplib::Response& res) {
    httplib::Client origin(core.config().upstream);
    origin.set_connection_timeout(5, 0);
    origin.set_read_timeout(10, 0);

    std::string target = req.path;
    if (!req.params.empty()) {
      target += "?" + httplib::detail::params_to_query_str(req.params);
    }

    httplib::Result upstream;
    const std::string content_type = req.has_header("Content-Type")
                                         ? req.get_header_value("Content-Type")
                                         : "application/octet-stream";
    if (req.method == "GET") {
      upstream = origin.Get(target);
    } else if (req.method == "POST") {
      upstream = origin.Post(target, req.body, content_type);
    } else if (req.method == "PUT") {
      upstream = origin.Put(target, req.body, content_type);
    } else if (req.method == "DELETE") {
      upstream = origin.Delete(target);
    } else {
      upstream = httplib::Result{};
    }

    const std::int64_t now = std::time(nullptr);
    if (!upstream) {
      res.status = 502;
      res.set_content("upstream unreachable", "text/plain");
      core.audit().append({now, "error", req.remote_addr, "", "502 upstream"});
      return;
    }
    res.status = upstream->status;
    res.set_content(upstream->body, upstream->has_header("Content-Type")
                                        ? upstream->get_header_value("Content-Type")
                                        : "text/plain");
    core.audit().append(
        {now, "serve", req.remote_addr, "", std::to_string(upstream->status)});
  }
};

GateServer::GateServer(GateConfig config, std::shared_ptr<Scorer> scorer,
                       std::function<std::int64_t()> clock)
    : impl_(std::make_unique<Impl>(std::move(config), std::move(scorer),
                                   std::move(clock))) {
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    impl_->apply(impl_->core.handle(to_gate_request(req)), req, res);
  };
  impl_->server.Get(".*", handler);
  impl_->server.Post(".*", handler);
  impl_->server.Put(".*", handler);
  impl_->server.Delete(".*", handler);
}

GateServer::~GateServer() { stop(); }

bool GateServer::start() {
  auto [host, port] = split_listen(impl_->core.config().listen);
  if (port == 0) {
    impl_->bound_port = impl_->server.bind_to_any_port(host);
    if (impl_->bound_port <= 0) return false;
  } else {
    if (!impl_->server.bind_to_port(host, port)) return false;
    impl_->bound_port = port;
  }
  impl_->serve_thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return true;
}

void GateServer::stop() {
  if (impl_->serve_thread.joinable()) {
    impl_->server.stop();
    impl_->serve_thread.join();
  }
}

int GateServer::port() const { return impl_->bound_port; }

GateCore& GateServer::core() { return impl_->core; }

}  // namespace apw
