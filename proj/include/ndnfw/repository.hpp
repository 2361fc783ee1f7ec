#ifndef NDNFW_REPOSITORY_HPP
#define NDNFW_REPOSITORY_HPP

#include "ndnfw/vendor.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <shared_mutex>

namespace ndnfw {

class InconsistentPublication : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

class DuplicateEpoch : public std::invalid_argument
{
public:
  explicit DuplicateEpoch(const BaseName& base)
    : std::invalid_argument("release already published: " + base.toUri())
  {
  }
};

/**
 * Versioned firmware store of the deployment operator.
 *
 * Releases are keyed by device identity and epoch and are immutable once
 * published. Lookups are safe from concurrent readers; publication takes an
 * exclusive lock.
 */
class Repository
{
public:
  Repository() = default;
  Repository(const Repository&) = delete;
  Repository& operator=(const Repository&) = delete;
  Repository(Repository&& other) noexcept;

  /// Checks chunk count, per-chunk sizes, tag lengths and the image digest
  /// against @p manifest before storing the release.
  void
  publish(const Manifest& manifest, std::vector<Chunk> chunks);

  std::optional<Manifest>
  manifest(const BaseName& base) const;

  std::optional<Chunk>
  chunk(const BaseName& base, uint64_t index) const;

  std::vector<uint64_t>
  epochs(const DeviceIdentity& identity) const;

  size_t
  releaseCount() const;

  /// Writes every release below @p root as <base name>/manifest.bin + chunks.bin.
  void
  save(const std::filesystem::path& root) const;

  static Repository
  load(const std::filesystem::path& root);

  /// Writes a single release directory; used by the publisher tool.
  static void
  writeRelease(const std::filesystem::path& root, const Release& release);

  static Release
  readRelease(const std::filesystem::path& releaseDir);

private:
  mutable std::shared_mutex m_mutex;
  std::map<DeviceIdentity, std::map<uint64_t, std::shared_ptr<const Release>>> m_releases;
};

} // namespace ndnfw

#endif // NDNFW_REPOSITORY_HPP
