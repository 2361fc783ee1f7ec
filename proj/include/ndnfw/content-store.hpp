#ifndef NDNFW_CONTENT_STORE_HPP
#define NDNFW_CONTENT_STORE_HPP

#include "ndnfw/packet.hpp"

#include <list>
#include <map>

namespace ndnfw {

/// Bounded in-network cache with least-recently-used replacement.
class ContentStore
{
public:
  struct Entry
  {
    Data data;
    Timestamp arrival;
    Timestamp lastUse;
  };

  explicit ContentStore(size_t capacity = 64);

  /// Inserts or refreshes @p data. Returns the evicted name, if any.
  std::optional<FirmwareName>
  insert(const Data& data, Timestamp now);

  /// Returns the cached Data and marks it used, or nullptr on a miss.
  const Data*
  find(const FirmwareName& name, Timestamp now);

  bool
  contains(const FirmwareName& name) const
  {
    return m_entries.count(name) != 0;
  }

  const Entry*
  peek(const FirmwareName& name) const;

  bool
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

  /// Names from least to most recently used.
  std::vector<FirmwareName>
  lruOrder() const;

private:
  void
  touch(const FirmwareName& name);

private:
  size_t m_capacity;
  std::map<FirmwareName, std::pair<Entry, std::list<FirmwareName>::iterator>> m_entries;
  std::list<FirmwareName> m_lru; // front = least recently used
};

} // namespace ndnfw

#endif // NDNFW_CONTENT_STORE_HPP
