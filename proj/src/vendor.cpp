#include "ndnfw/vendor.hpp"

#include <algorithm>

namespace ndnfw {

namespace {

constexpr uint8_t kManifestMagic[] = {'N', 'F', 'W', 'M'};
constexpr uint8_t kManifestVersion = 1;

} // namespace

std::vector<Bytes>
chunkImage(ByteSpan image, size_t chunkSize)
{
  if (chunkSize == 0) {
    throw InvalidChunkSize();
  }
  if (image.empty()) {
    throw EmptyImage();
  }
  std::vector<Bytes> chunks;
  chunks.reserve(chunkCountFor(image.size(), chunkSize));
  for (size_t offset = 0; offset < image.size(); offset += chunkSize) {
    size_t len = std::min(chunkSize, image.size() - offset);
    auto part = image.subspan(offset, len);
    chunks.emplace_back(part.begin(), part.end());
  }
  return chunks;
}

Bytes
Manifest::encodeBody() const
{
  tlv::Encoder enc;
  enc.appendBytes(kManifestMagic);
  enc.appendUint(kManifestVersion, 1);
  Bytes name = encodeBaseName(baseName);
  enc.appendVarNumber(name.size());
  enc.appendBytes(name);
  enc.appendUint(imageSize, 8);
  enc.appendBytes(imageDigest);
  enc.appendUint(chunkSize, 4);
  enc.appendUint(chunkCount, 8);
  return enc.release();
}

Bytes
Manifest::encode() const
{
  tlv::Encoder enc;
  enc.appendBytes(encodeBody());
  enc.appendVarNumber(signature.size());
  enc.appendBytes(signature);
  return enc.release();
}

Manifest
Manifest::decodeBody(ByteSpan body, ByteSpan sig)
{
  tlv::Decoder dec(body);
  auto magic = dec.readBytes(sizeof(kManifestMagic));
  if (!std::equal(magic.begin(), magic.end(), std::begin(kManifestMagic))) {
    throw DecodeError("bad manifest magic");
  }
  if (dec.readUint(1) != kManifestVersion) {
    throw DecodeError("unsupported manifest version");
  }
  Manifest m;
  m.baseName = decodeBaseName(dec.readBytes(dec.readVarNumber()));
  m.imageSize = dec.readUint(8);
  auto digest = dec.readBytes(m.imageDigest.size());
  std::copy(digest.begin(), digest.end(), m.imageDigest.begin());
  m.chunkSize = static_cast<uint32_t>(dec.readUint(4));
  m.chunkCount = dec.readUint(8);
  if (!dec.atEnd()) {
    throw DecodeError("trailing bytes in manifest body");
  }
  if (sig.size() != m.signature.size()) {
    throw DecodeError("manifest signature must be 64 bytes");
  }
  std::copy(sig.begin(), sig.end(), m.signature.begin());
  return m;
}

Manifest
Manifest::decode(ByteSpan wire)
{
  // the body is self-delimiting only after parsing, so walk it once to find its end
  tlv::Decoder dec(wire);
  dec.readBytes(sizeof(kManifestMagic) + 1);
  dec.readBytes(dec.readVarNumber());
  dec.readBytes(8 + 32 + 4 + 8);
  size_t bodyEnd = dec.position();
  auto sig = dec.readBytes(dec.readVarNumber());
  if (!dec.atEnd()) {
    throw DecodeError("trailing bytes after manifest signature");
  }
  return decodeBody(wire.first(bodyEnd), sig);
}

bool
Manifest::verify(const PublicKey& key) const
{
  return verifySignature(key, encodeBody(), signature);
}

size_t
Manifest::chunkLength(uint64_t index) const
{
  if (index + 1 < chunkCount) {
    return chunkSize;
  }
  return static_cast<size_t>(imageSize - uint64_t(chunkSize) * (chunkCount - 1));
}

Manifest
buildManifest(const BaseName& baseName, ByteSpan image, size_t chunkSize, const SigningKey& key)
{
  if (chunkSize == 0) {
    throw InvalidChunkSize();
  }
  if (image.empty()) {
    throw EmptyImage();
  }
  // validates the identifiers
  FirmwareName::manifest(baseName);

  Manifest m;
  m.baseName = baseName;
  m.imageSize = image.size();
  m.imageDigest = sha256(image);
  m.chunkSize = static_cast<uint32_t>(chunkSize);
  m.chunkCount = chunkCountFor(image.size(), chunkSize);
  m.signature = key.sign(m.encodeBody());
  return m;
}

Bytes
chunkTagInput(const BaseName& baseName, uint64_t index, ByteSpan payload)
{
  tlv::Encoder enc;
  enc.appendBytes(encodeBaseName(baseName));
  enc.appendUint(index, 8);
  enc.appendBytes(payload);
  return enc.release();
}

Bytes
tagChunk(const BaseName& baseName, uint64_t index, ByteSpan payload, ByteSpan psk,
         size_t truncLen)
{
  if (!isValidTagLength(truncLen)) {
    throw InvalidTruncation(truncLen);
  }
  Digest mac = hmacSha256(psk, chunkTagInput(baseName, index, payload));
  return Bytes(mac.begin(), mac.begin() + truncLen);
}

Vendor::Vendor(std::string deployment, std::string name, SigningKey key, size_t tagLength)
  : m_deployment(std::move(deployment))
  , m_name(std::move(name))
  , m_key(std::move(key))
  , m_tagLength(tagLength)
{
  validateIdentifier(m_deployment, "deployment");
  validateIdentifier(m_name, "vendor");
  if (!isValidTagLength(m_tagLength)) {
    throw InvalidTruncation(m_tagLength);
  }
}

void
Vendor::setPsk(const std::string& deviceClass, Bytes psk)
{
  for (auto& [cls, key] : m_psks) {
    if (cls == deviceClass) {
      key = std::move(psk);
      return;
    }
  }
  m_psks.emplace_back(deviceClass, std::move(psk));
}

const Bytes&
Vendor::psk(const std::string& deviceClass) const
{
  for (const auto& [cls, key] : m_psks) {
    if (cls == deviceClass) {
      return key;
    }
  }
  throw std::out_of_range("no pre-shared key for device class " + deviceClass);
}

BaseName
Vendor::baseName(const std::string& deviceClass, uint64_t epoch) const
{
  return {{m_deployment, m_name, deviceClass}, epoch};
}

Release
Vendor::prepare(const FirmwareImage& image, size_t chunkSize) const
{
  BaseName base = baseName(image.deviceClass, image.epoch);
  Release release;
  release.manifest = buildManifest(base, image.bytes, chunkSize, m_key);
  const Bytes& key = psk(image.deviceClass);
  auto payloads = chunkImage(image.bytes, chunkSize);
  release.chunks.reserve(payloads.size());
  for (uint64_t i = 0; i < payloads.size(); ++i) {
    Bytes tag = tagChunk(base, i, payloads[i], key, m_tagLength);
    release.chunks.push_back({i, std::move(payloads[i]), std::move(tag)});
  }
  return release;
}

} // namespace ndnfw
