#ifndef NDNFW_VENDOR_HPP
#define NDNFW_VENDOR_HPP

#include "ndnfw/crypto.hpp"
#include "ndnfw/naming.hpp"

#include <optional>

namespace ndnfw {

class EmptyImage : public std::invalid_argument
{
public:
  EmptyImage()
    : std::invalid_argument("firmware image is empty")
  {
  }
};

class InvalidChunkSize : public std::invalid_argument
{
public:
  InvalidChunkSize()
    : std::invalid_argument("chunk size must be positive")
  {
  }
};

class InvalidTruncation : public std::invalid_argument
{
public:
  explicit InvalidTruncation(size_t len)
    : std::invalid_argument("tag truncation " + std::to_string(len) + " not in {8, 16, 32}")
  {
  }
};

struct FirmwareImage
{
  Bytes bytes;
  std::string deviceClass;
  uint64_t epoch = 0;
};

/// Splits @p image into fixed-length payloads; only the last may be shorter.
std::vector<Bytes>
chunkImage(ByteSpan image, size_t chunkSize);

constexpr uint64_t
chunkCountFor(uint64_t imageSize, uint64_t chunkSize)
{
  return (imageSize + chunkSize - 1) / chunkSize;
}

/// Signed release metadata. The signature covers every other field through
/// encodeBody(), whose byte layout is fixed and field-ordered.
struct Manifest
{
  BaseName baseName;
  uint64_t imageSize = 0;
  Digest imageDigest{};
  uint32_t chunkSize = 0;
  uint64_t chunkCount = 0;
  Signature signature{};

  Bytes
  encodeBody() const;

  /// Body followed by the length-prefixed signature (the manifest.bin format).
  Bytes
  encode() const;

  static Manifest
  decodeBody(ByteSpan body, ByteSpan signature);

  static Manifest
  decode(ByteSpan wire);

  bool
  verify(const PublicKey& key) const;

  /// Expected payload length of chunk @p index.
  size_t
  chunkLength(uint64_t index) const;

  bool operator==(const Manifest&) const = default;
};

Manifest
buildManifest(const BaseName& baseName, ByteSpan image, size_t chunkSize,
              const SigningKey& key);

inline bool
isValidTagLength(size_t len)
{
  return len == 8 || len == 16 || len == 32;
}

/// Bytes covered by a chunk tag: name TLV of the base name, 8-byte big-endian
/// index, payload.
Bytes
chunkTagInput(const BaseName& baseName, uint64_t index, ByteSpan payload);

/// First @p truncLen bytes of HMAC-SHA256(psk, chunkTagInput(...)).
Bytes
tagChunk(const BaseName& baseName, uint64_t index, ByteSpan payload, ByteSpan psk,
         size_t truncLen);

struct Chunk
{
  uint64_t index = 0;
  Bytes payload;
  Bytes tag;

  bool operator==(const Chunk&) const = default;
};

struct Release
{
  Manifest manifest;
  std::vector<Chunk> chunks;
};

/// Vendor-side preparation: owns the signing key and per-class pre-shared keys.
class Vendor
{
public:
  Vendor(std::string deployment, std::string name, SigningKey key, size_t tagLength = 8);

  void
  setPsk(const std::string& deviceClass, Bytes psk);

  const Bytes&
  psk(const std::string& deviceClass) const;

  const PublicKey&
  publicKey() const noexcept
  {
    return m_key.publicKey();
  }

  BaseName
  baseName(const std::string& deviceClass, uint64_t epoch) const;

  Release
  prepare(const FirmwareImage& image, size_t chunkSize) const;

private:
  std::string m_deployment;
  std::string m_name;
  SigningKey m_key;
  size_t m_tagLength;
  std::vector<std::pair<std::string, Bytes>> m_psks;
};

} // namespace ndnfw

#endif // NDNFW_VENDOR_HPP
