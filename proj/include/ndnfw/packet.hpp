#ifndef NDNFW_PACKET_HPP
#define NDNFW_PACKET_HPP

#include "ndnfw/naming.hpp"
#include "ndnfw/tlv.hpp"

#include <chrono>

namespace ndnfw {

/// Simulation and protocol time: integer microseconds since the run started.
using Timestamp = std::chrono::microseconds;

using namespace std::chrono_literals;

struct Interest
{
  FirmwareName name;
  uint32_t nonce = 0;
  std::chrono::milliseconds lifetime{4000};
};

struct HmacTag
{
  Bytes bytes;
};

struct ManifestSignature
{
  Bytes bytes;
};

struct NoAuth
{
};

using DataAuth = std::variant<NoAuth, HmacTag, ManifestSignature>;

struct Data
{
  FirmwareName name;
  Bytes payload;
  DataAuth auth;
  std::chrono::milliseconds freshness{0};
};

enum class NackReason : uint8_t {
  NoData = 1,
  NoRoute = 2,
};

struct Nack
{
  FirmwareName name;
  NackReason reason = NackReason::NoData;
  std::chrono::milliseconds freshness{0};
};

using Packet = std::variant<Interest, Data, Nack>;

const FirmwareName&
packetName(const Packet& packet);

size_t
authLength(const DataAuth& auth);

/// Serialized packet size model: name size from the name model plus fixed
/// structural overhead per packet type.
struct PacketSizeModel
{
  NameEncodingModel name = NameEncodingModel::ndnTlv();
  size_t interestStructural = 12; ///< outer TL, nonce TLV, lifetime TLV
  size_t dataStructural = 7;      ///< outer TL, content TL, signature info + value TL
  size_t nackStructural = 5;

  size_t
  size(const Packet& packet) const;
};

} // namespace ndnfw

#endif // NDNFW_PACKET_HPP
