#include "ndnfw/tlv.hpp"


namespace ndnfw {
namespace tlv {

void
Encoder::appendVarNumber(uint64_t value)
{
  if (value < 253) {
    m_buffer.push_back(static_cast<uint8_t>(value));
  }
  else if (value <= 0xFFFF) {
    m_buffer.push_back(0xFD);
    appendUint(value, 2);
  }
  else if (value <= 0xFFFFFFFF) {
    m_buffer.push_back(0xFE);
    appendUint(value, 4);
  }
  else {
    m_buffer.push_back(0xFF);
    appendUint(value, 8);
  }
}

void
Encoder::appendUint(uint64_t value, size_t width)
{
  for (size_t i = width; i-- > 0;) {
    m_buffer.push_back(static_cast<uint8_t>(value >> (8 * i)));
  }
}

void
Encoder::appendBytes(ByteSpan bytes)
{
  m_buffer.insert(m_buffer.end(), bytes.begin(), bytes.end());
}

void
Encoder::appendBlock(uint8_t type, ByteSpan value)
{
  appendVarNumber(type);
  appendVarNumber(value.size());
  appendBytes(value);
}

uint64_t
Decoder::readVarNumber()
{
  uint8_t first = static_cast<uint8_t>(readUint(1));
  switch (first) {
    case 0xFD:
      return readUint(2);
    case 0xFE:
      return readUint(4);
    case 0xFF:
      return readUint(8);
    default:
      return first;
  }
}

uint64_t
Decoder::readUint(size_t width)
{
  auto bytes = readBytes(width);
  uint64_t value = 0;
  for (uint8_t b : bytes) {
    value = (value << 8) | b;
  }
  return value;
}

ByteSpan
Decoder::readBytes(size_t count)
{
  if (count > m_input.size() - m_pos) {
    throw DecodeError("truncated input at offset " + std::to_string(m_pos));
  }
  auto out = m_input.subspan(m_pos, count);
  m_pos += count;
  return out;
}

ByteSpan
Decoder::readBlock(uint8_t expectedType)
{
  uint64_t type = readVarNumber();
  if (type != expectedType) {
    throw DecodeError("unexpected TLV type " + std::to_string(type));
  }
  uint64_t length = readVarNumber();
  return readBytes(length);
}

} // namespace tlv

Bytes
encodeComponents(std::span<const std::string> components)
{
  tlv::Encoder inner;
  for (const auto& c : components) {
    inner.appendBlock(tlv::GenericComponent,
                      {reinterpret_cast<const uint8_t*>(c.data()), c.size()});
  }
  tlv::Encoder outer;
  outer.appendBlock(tlv::Name, inner.bytes());
  return outer.release();
}

std::vector<std::string>
decodeComponents(ByteSpan wire)
{
  tlv::Decoder outer(wire);
  tlv::Decoder inner(outer.readBlock(tlv::Name));
  if (!outer.atEnd()) {
    throw DecodeError("trailing bytes after name");
  }
  std::vector<std::string> components;
  while (!inner.atEnd()) {
    auto value = inner.readBlock(tlv::GenericComponent);
    components.emplace_back(value.begin(), value.end());
  }
  return components;
}

FirmwareName
decodeName(ByteSpan wire)
{
  auto components = decodeComponents(wire);
  return parseName(components);
}

BaseName
decodeBaseName(ByteSpan wire)
{
  auto components = decodeComponents(wire);
  if (components.size() != 4) {
    throw MalformedName("base name needs exactly 4 components");
  }
  // reuse the full-name validation by parsing it as a manifest name
  components.emplace_back("manifest");
  return parseName(components).base();
}

} // namespace ndnfw
