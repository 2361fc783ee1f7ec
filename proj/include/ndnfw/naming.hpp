#ifndef NDNFW_NAMING_HPP
#define NDNFW_NAMING_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ndnfw {

class MalformedName : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Deployment, vendor and device class: everything that selects a firmware line
/// independently of its version.
struct DeviceIdentity
{
  std::string deployment;
  std::string vendor;
  std::string deviceClass;

  auto operator<=>(const DeviceIdentity&) const = default;
};

/// The four-component prefix /deployment/vendor/class/epoch shared by the
/// manifest, the image and every chunk of one release.
struct BaseName
{
  DeviceIdentity identity;
  uint64_t epoch = 0;

  auto operator<=>(const BaseName&) const = default;

  std::string toUri() const;
};

struct ManifestSuffix
{
  auto operator<=>(const ManifestSuffix&) const = default;
};

struct FirmwareSuffix
{
  auto operator<=>(const FirmwareSuffix&) const = default;
};

struct ChunkSuffix
{
  uint64_t id = 0;

  auto operator<=>(const ChunkSuffix&) const = default;
};

using NameSuffix = std::variant<ManifestSuffix, FirmwareSuffix, ChunkSuffix>;

/**
 * A structured firmware name: /<deployment>/<vendor>/<class>/<epoch>/<suffix...>.
 *
 * Identifier components are validated on construction, so every FirmwareName in
 * circulation formats to a component sequence that parses back to itself.
 */
class FirmwareName
{
public:
  FirmwareName(BaseName base, NameSuffix suffix);

  static FirmwareName
  manifest(const BaseName& base)
  {
    return {base, ManifestSuffix{}};
  }

  static FirmwareName
  firmware(const BaseName& base)
  {
    return {base, FirmwareSuffix{}};
  }

  static FirmwareName
  chunk(const BaseName& base, uint64_t id)
  {
    return {base, ChunkSuffix{id}};
  }

  const BaseName&
  base() const noexcept
  {
    return m_base;
  }

  const DeviceIdentity&
  identity() const noexcept
  {
    return m_base.identity;
  }

  uint64_t
  epoch() const noexcept
  {
    return m_base.epoch;
  }

  const NameSuffix&
  suffix() const noexcept
  {
    return m_suffix;
  }

  bool
  isManifest() const noexcept
  {
    return std::holds_alternative<ManifestSuffix>(m_suffix);
  }

  bool
  isChunk() const noexcept
  {
    return std::holds_alternative<ChunkSuffix>(m_suffix);
  }

  std::optional<uint64_t>
  chunkId() const noexcept;

  std::string
  toUri() const;

  auto operator<=>(const FirmwareName&) const = default;

private:
  BaseName m_base;
  NameSuffix m_suffix;
};

/// Throws MalformedName unless @p component is a usable identifier.
void
validateIdentifier(std::string_view component, std::string_view what);

FirmwareName
parseName(std::span<const std::string> components);

/// Parses the textual form "/dep/vendor/class/epoch/suffix...".
FirmwareName
parseUri(std::string_view uri);

std::vector<std::string>
formatName(const FirmwareName& name);

std::vector<std::string>
formatBaseName(const BaseName& base);

/// Epoch quantization. The aligned epochs are the values congruent to
/// `offset` modulo `period`, e.g. {86400, -7200} yields local midnights in UTC+2.
struct Granularity
{
  int64_t period = 86400;
  int64_t offset = 0;

  Granularity() = default;
  Granularity(int64_t period, int64_t offset);
};

/// Greatest aligned epoch not later than @p t.
uint64_t
alignEpoch(uint64_t t, const Granularity& g);

/// Parameters of the name size model. All counts are bytes.
struct NameEncodingModel
{
  size_t nameOverhead = 0;      ///< outer name TLV type + length
  size_t componentOverhead = 0; ///< per-component type + length
  size_t chunkIdWidth = 0;      ///< fixed chunk id width; 0 = decimal text length

  /// Compact NDN TLV: 2-byte outer header, 2-byte component headers,
  /// chunk id as a 2-byte non-negative integer.
  static NameEncodingModel
  ndnTlv()
  {
    return {2, 2, 2};
  }

  static NameEncodingModel
  raw()
  {
    return {0, 0, 0};
  }
};

size_t
encodedSize(const FirmwareName& name, const NameEncodingModel& model);

} // namespace ndnfw

#endif // NDNFW_NAMING_HPP
