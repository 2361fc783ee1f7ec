#include "ndnfw/fib.hpp"

namespace ndnfw {

void
Fib::addRoute(std::vector<std::string> prefix, FaceId face)
{
  if (prefix.empty()) {
    m_default = face;
    return;
  }
  m_routes[std::move(prefix)] = face;
}

std::optional<FaceId>
Fib::lookup(const FirmwareName& name) const
{
  if (m_routes.empty()) {
    return m_default;
  }
  auto components = formatName(name);
  for (size_t len = components.size(); len > 0; --len) {
    std::vector<std::string> prefix(components.begin(), components.begin() + len);
    auto it = m_routes.find(prefix);
    if (it != m_routes.end()) {
      return it->second;
    }
  }
  return m_default;
}

} // namespace ndnfw
