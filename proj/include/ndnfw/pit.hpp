#ifndef NDNFW_PIT_HPP
#define NDNFW_PIT_HPP

#include "ndnfw/packet.hpp"

#include <map>
#include <set>

namespace ndnfw {

using FaceId = uint32_t;
using ConsumerId = uint32_t;

struct PitEntry
{
  Interest interest; ///< last Interest sent upstream for this name
  FaceId upstream = 0;
  std::set<FaceId> downstreamFaces;
  std::set<ConsumerId> localConsumers;
  int retxBudget = 0;
  Timestamp created{0};
  Timestamp nextRetxAt{0};
};

/// Pending Interest table keyed by exact name, bounded in size.
class Pit
{
public:
  explicit Pit(size_t capacity = 16)
    : m_capacity(capacity)
  {
  }

  PitEntry*
  find(const FirmwareName& name);

  bool
  full() const noexcept
  {
    return m_entries.size() >= m_capacity;
  }

  /// Precondition: !full() and no entry for the name exists.
  PitEntry&
  insert(PitEntry entry);

  void
  erase(const FirmwareName& name);

  size_t
  size() const noexcept
  {
    return m_entries.size();
  }

  size_t
  capacity() const noexcept
  {
    return m_capacity;
  }

  std::map<FirmwareName, PitEntry>&
  entries() noexcept
  {
    return m_entries;
  }

  const std::map<FirmwareName, PitEntry>&
  entries() const noexcept
  {
    return m_entries;
  }

private:
  size_t m_capacity;
  std::map<FirmwareName, PitEntry> m_entries;
};

} // namespace ndnfw

#endif // NDNFW_PIT_HPP
