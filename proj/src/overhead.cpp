#include "ndnfw/overhead.hpp"

#include <string>

namespace ndnfw {

int64_t
OverheadModel::payloadCapacity() const
{
  auto name = compressionEnabled ? 0 : static_cast<int64_t>(nameBytes);
  auto structural = static_cast<int64_t>(compressionEnabled ? compressedStructuralBytes
                                                            : structuralBytes);
  return static_cast<int64_t>(mtu) - name - structural - static_cast<int64_t>(linkHeaderBytes) -
         static_cast<int64_t>(signatureBytes);
}

OverheadReport
overheadReport(const OverheadModel& model, uint64_t firmwareSize)
{
  int64_t capacity = model.payloadCapacity();
  if (capacity <= 0) {
    throw NoPayloadRoom(capacity);
  }
  OverheadReport report;
  report.payloadCapacity = static_cast<uint64_t>(capacity);
  report.chunkCount = (firmwareSize + report.payloadCapacity - 1) / report.payloadCapacity;
  report.signatureOverheadBytes = report.chunkCount * model.signatureBytes;
  return report;
}

} // namespace ndnfw
