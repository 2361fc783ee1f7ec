#include "ndnfw/crypto.hpp"

#include <sodium.h>

#include <stdexcept>

namespace ndnfw {

namespace {

void
ensureSodium()
{
  static const bool ready = [] {
    if (sodium_init() < 0) {
      throw std::runtime_error("libsodium initialization failed");
    }
    return true;
  }();
  (void)ready;
}

} // namespace

Digest
sha256(ByteSpan message)
{
  ensureSodium();
  Digest out{};
  crypto_hash_sha256(out.data(), message.data(), message.size());
  return out;
}

Digest
hmacSha256(ByteSpan key, ByteSpan message)
{
  ensureSodium();
  crypto_auth_hmacsha256_state state;
  crypto_auth_hmacsha256_init(&state, key.data(), key.size());
  crypto_auth_hmacsha256_update(&state, message.data(), message.size());
  Digest out{};
  crypto_auth_hmacsha256_final(&state, out.data());
  return out;
}

bool
equalConstantTime(ByteSpan a, ByteSpan b)
{
  if (a.size() != b.size()) {
    return false;
  }
  if (a.empty()) {
    return true;
  }
  ensureSodium();
  return sodium_memcmp(a.data(), b.data(), a.size()) == 0;
}

SigningKey::SigningKey(std::span<const uint8_t, 32> seed)
{
  ensureSodium();
  crypto_sign_seed_keypair(m_public.bytes.data(), m_secret.data(), seed.data());
}

SigningKey
SigningKey::fromPassphrase(ByteSpan material)
{
  Digest seed = sha256(material);
  return SigningKey(seed);
}

Signature
SigningKey::sign(ByteSpan message) const
{
  Signature sig{};
  crypto_sign_detached(sig.data(), nullptr, message.data(), message.size(), m_secret.data());
  return sig;
}

bool
verifySignature(const PublicKey& key, ByteSpan message, ByteSpan signature)
{
  ensureSodium();
  if (signature.size() != crypto_sign_BYTES) {
    return false;
  }
  return crypto_sign_verify_detached(signature.data(), message.data(), message.size(),
                                     key.bytes.data()) == 0;
}

} // namespace ndnfw
