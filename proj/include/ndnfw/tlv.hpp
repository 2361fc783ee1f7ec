#ifndef NDNFW_TLV_HPP
#define NDNFW_TLV_HPP

#include "ndnfw/naming.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace ndnfw {

using Bytes = std::vector<uint8_t>;
using ByteSpan = std::span<const uint8_t>;

class DecodeError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

namespace tlv {

enum : uint8_t {
  Name = 0x07,
  GenericComponent = 0x08,
};

/// Appends big-endian integers, NDN variable-length numbers and TLV blocks.
class Encoder
{
public:
  void
  appendVarNumber(uint64_t value);

  void
  appendUint(uint64_t value, size_t width);

  void
  appendBytes(ByteSpan bytes);

  void
  appendBlock(uint8_t type, ByteSpan value);

  const Bytes&
  bytes() const noexcept
  {
    return m_buffer;
  }

  Bytes
  release() noexcept
  {
    return std::move(m_buffer);
  }

private:
  Bytes m_buffer;
};

/// Bounds-checked reader over an encoded buffer. Throws DecodeError on truncation.
class Decoder
{
public:
  explicit Decoder(ByteSpan input)
    : m_input(input)
  {
  }

  uint64_t
  readVarNumber();

  uint64_t
  readUint(size_t width);

  ByteSpan
  readBytes(size_t count);

  /// Reads a block of the given type and returns its value.
  ByteSpan
  readBlock(uint8_t expectedType);

  bool
  atEnd() const noexcept
  {
    return m_pos == m_input.size();
  }

  size_t
  position() const noexcept
  {
    return m_pos;
  }

private:
  ByteSpan m_input;
  size_t m_pos = 0;
};

} // namespace tlv

/// Length-prefixed wire form of a component sequence (Name TLV of generic components).
Bytes
encodeComponents(std::span<const std::string> components);

std::vector<std::string>
decodeComponents(ByteSpan wire);

inline Bytes
encodeName(const FirmwareName& name)
{
  return encodeComponents(formatName(name));
}

inline Bytes
encodeBaseName(const BaseName& base)
{
  return encodeComponents(formatBaseName(base));
}

FirmwareName
decodeName(ByteSpan wire);

BaseName
decodeBaseName(ByteSpan wire);

} // namespace ndnfw

#endif // NDNFW_TLV_HPP
