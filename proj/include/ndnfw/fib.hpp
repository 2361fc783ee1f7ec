#ifndef NDNFW_FIB_HPP
#define NDNFW_FIB_HPP

#include "ndnfw/pit.hpp"

namespace ndnfw {

/// Prefix to next-hop table with an optional default route.
class Fib
{
public:
  void
  addRoute(std::vector<std::string> prefix, FaceId face);

  void
  setDefaultRoute(FaceId face)
  {
    m_default = face;
  }

  void
  clearDefaultRoute()
  {
    m_default.reset();
  }

  /// Longest-prefix match over the formatted name components; the default
  /// route (empty prefix) matches every name.
  std::optional<FaceId>
  lookup(const FirmwareName& name) const;

  bool
  empty() const noexcept
  {
    return m_routes.empty() && !m_default;
  }

private:
  std::map<std::vector<std::string>, FaceId> m_routes;
  std::optional<FaceId> m_default;
};

} // namespace ndnfw

#endif // NDNFW_FIB_HPP
