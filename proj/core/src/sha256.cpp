#include "apw/sha256.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <stdexcept>

namespace apw {
namespace {

std::atomic<std::uint64_t> g_invocations{0};

// One context per thread, re-initialized per digest. Avoids a heap
// allocation on every hash, which dominates in the solver loop.
EVP_MD_CTX* thread_ctx() {
  thread_local EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  return ctx;
}

}  // namespace

Digest sha256(std::span<const std::uint8_t> data) {
  g_invocations.fetch_add(1, std::memory_order_relaxed);
  Digest out{};
  unsigned int len = 0;
  EVP_MD_CTX* ctx = thread_ctx();
  if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx, out.data(), &len) != 1 || len != out.size()) {
    throw std::runtime_error("sha256: digest computation failed");
  }
  return out;
}

Digest sha256(std::string_view data) {
  return sha256(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t*>(data.data()), data.size()));
}

std::uint64_t sha256_invocations() noexcept {
  return g_invocations.load(std::memory_order_relaxed);
}

}  // namespace apw
