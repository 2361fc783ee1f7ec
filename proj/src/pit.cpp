#include "ndnfw/pit.hpp"

namespace ndnfw {

PitEntry*
Pit::find(const FirmwareName& name)
{
  auto it = m_entries.find(name);
  return it == m_entries.end() ? nullptr : &it->second;
}

PitEntry&
Pit::insert(PitEntry entry)
{
  auto name = entry.interest.name;
  auto [it, inserted] = m_entries.emplace(std::move(name), std::move(entry));
  if (!inserted) {
    throw std::logic_error("duplicate PIT entry for " + it->first.toUri());
  }
  return it->second;
}

void
Pit::erase(const FirmwareName& name)
{
  m_entries.erase(name);
}

} // namespace ndnfw
