#include "ndnfw/packet.hpp"

namespace ndnfw {

const FirmwareName&
packetName(const Packet& packet)
{
  return std::visit([](const auto& p) -> const FirmwareName& { return p.name; }, packet);
}

size_t
authLength(const DataAuth& auth)
{
  if (auto* tag = std::get_if<HmacTag>(&auth)) {
    return tag->bytes.size();
  }
  if (auto* sig = std::get_if<ManifestSignature>(&auth)) {
    return sig->bytes.size();
  }
  return 0;
}

size_t
PacketSizeModel::size(const Packet& packet) const
{
  size_t nameBytes = encodedSize(packetName(packet), name);
  if (std::holds_alternative<Interest>(packet)) {
    return nameBytes + interestStructural;
  }
  if (auto* d = std::get_if<Data>(&packet)) {
    return nameBytes + d->payload.size() + authLength(d->auth) + dataStructural;
  }
  return nameBytes + nackStructural;
}

} // namespace ndnfw
