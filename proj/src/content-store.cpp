#include "ndnfw/content-store.hpp"

namespace ndnfw {

ContentStore::ContentStore(size_t capacity)
  : m_capacity(capacity)
{
}

void
ContentStore::touch(const FirmwareName& name)
{
  auto& slot = m_entries.at(name);
  m_lru.splice(m_lru.end(), m_lru, slot.second);
}

std::optional<FirmwareName>
ContentStore::insert(const Data& data, Timestamp now)
{
  if (m_capacity == 0) {
    return std::nullopt;
  }
  auto it = m_entries.find(data.name);
  if (it != m_entries.end()) {
    it->second.first.data = data;
    it->second.first.lastUse = now;
    touch(data.name);
    return std::nullopt;
  }

  std::optional<FirmwareName> evicted;
  if (m_entries.size() >= m_capacity) {
    evicted = m_lru.front();
    m_lru.pop_front();
    m_entries.erase(*evicted);
  }
  auto pos = m_lru.insert(m_lru.end(), data.name);
  m_entries.emplace(data.name, std::make_pair(Entry{data, now, now}, pos));
  return evicted;
}

const Data*
ContentStore::find(const FirmwareName& name, Timestamp now)
{
  auto it = m_entries.find(name);
  if (it == m_entries.end()) {
    return nullptr;
  }
  it->second.first.lastUse = now;
  touch(name);
  return &it->second.first.data;
}

const ContentStore::Entry*
ContentStore::peek(const FirmwareName& name) const
{
  auto it = m_entries.find(name);
  return it == m_entries.end() ? nullptr : &it->second.first;
}

bool
ContentStore::erase(const FirmwareName& name)
{
  auto it = m_entries.find(name);
  if (it == m_entries.end()) {
    return false;
  }
  m_lru.erase(it->second.second);
  m_entries.erase(it);
  return true;
}

std::vector<FirmwareName>
ContentStore::lruOrder() const
{
  return {m_lru.begin(), m_lru.end()};
}

} // namespace ndnfw
