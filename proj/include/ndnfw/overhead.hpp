#ifndef NDNFW_OVERHEAD_HPP
#define NDNFW_OVERHEAD_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>

namespace ndnfw {

class NoPayloadRoom : public std::invalid_argument
{
public:
  explicit NoPayloadRoom(int64_t capacity)
    : std::invalid_argument("no room for payload: capacity " + std::to_string(capacity) + " bytes")
  {
  }
};

/// Per-frame byte budget when every chunk carries its own signature.
struct OverheadModel
{
  size_t mtu = 128;
  size_t nameBytes = 16;
  size_t structuralBytes = 16;
  size_t linkHeaderBytes = 23;
  size_t signatureBytes = 64;
  /// Header compression: the name is elided and the structural overhead
  /// shrinks to compressedStructuralBytes.
  bool compressionEnabled = false;
  size_t compressedStructuralBytes = 6;

  /// May be zero or negative for infeasible models.
  int64_t
  payloadCapacity() const;
};

struct OverheadReport
{
  uint64_t payloadCapacity = 0;
  uint64_t chunkCount = 0;
  uint64_t signatureOverheadBytes = 0;

  bool operator==(const OverheadReport&) const = default;
};

/// Chunk count and total signature bytes for @p firmwareSize bytes. Exact
/// integer arithmetic; throws NoPayloadRoom if nothing fits.
OverheadReport
overheadReport(const OverheadModel& model, uint64_t firmwareSize);

} // namespace ndnfw

#endif // NDNFW_OVERHEAD_HPP
