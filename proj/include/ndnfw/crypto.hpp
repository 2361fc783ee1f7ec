#ifndef NDNFW_CRYPTO_HPP
#define NDNFW_CRYPTO_HPP

#include "ndnfw/tlv.hpp"

#include <array>

namespace ndnfw {

using Digest = std::array<uint8_t, 32>;
using Signature = std::array<uint8_t, 64>;

Digest
sha256(ByteSpan message);

/// HMAC-SHA256 with a key of any length.
Digest
hmacSha256(ByteSpan key, ByteSpan message);

/// Constant-time comparison of equally sized buffers; false on size mismatch.
bool
equalConstantTime(ByteSpan a, ByteSpan b);

struct PublicKey
{
  std::array<uint8_t, 32> bytes{};

  bool operator==(const PublicKey&) const = default;
};

/// Ed25519 signing key derived deterministically from a 32-byte seed.
class SigningKey
{
public:
  explicit SigningKey(std::span<const uint8_t, 32> seed);

  /// Derives a key from an arbitrary-length seed by hashing it.
  static SigningKey
  fromPassphrase(ByteSpan material);

  const PublicKey&
  publicKey() const noexcept
  {
    return m_public;
  }

  Signature
  sign(ByteSpan message) const;

private:
  std::array<uint8_t, 64> m_secret{};
  PublicKey m_public;
};

bool
verifySignature(const PublicKey& key, ByteSpan message, ByteSpan signature);

} // namespace ndnfw

#endif // NDNFW_CRYPTO_HPP
