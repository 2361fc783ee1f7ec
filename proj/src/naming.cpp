#include "ndnfw/naming.hpp"

#include <charconv>

namespace ndnfw {

namespace {

constexpr std::string_view kManifest = "manifest";
constexpr std::string_view kFirmware = "firmware";
constexpr std::string_view kChunk = "chunk";

// Canonical unsigned decimal: digits only, no sign, no leading zeros.
uint64_t
parseCanonicalNumber(std::string_view text, std::string_view what)
{
  if (text.empty() || (text.size() > 1 && text.front() == '0')) {
    throw MalformedName(std::string(what) + " '" + std::string(text) + "' is not canonical decimal");
  }
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw MalformedName(std::string(what) + " '" + std::string(text) + "' is not a number");
    }
  }
  uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw MalformedName(std::string(what) + " '" + std::string(text) + "' out of range");
  }
  return value;
}

} // namespace

std::string
BaseName::toUri() const
{
  std::string uri;
  for (const auto& c : formatBaseName(*this)) {
    uri += '/';
    uri += c;
  }
  return uri;
}

void
validateIdentifier(std::string_view component, std::string_view what)
{
  if (component.empty()) {
    throw MalformedName(std::string(what) + " must not be empty");
  }
  for (char c : component) {
    if (c == '/' || c == '\0') {
      throw MalformedName(std::string(what) + " '" + std::string(component) +
                          "' contains a separator character");
    }
  }
}

FirmwareName::FirmwareName(BaseName base, NameSuffix suffix)
  : m_base(std::move(base))
  , m_suffix(suffix)
{
  validateIdentifier(m_base.identity.deployment, "deployment");
  validateIdentifier(m_base.identity.vendor, "vendor");
  validateIdentifier(m_base.identity.deviceClass, "device class");
}

std::optional<uint64_t>
FirmwareName::chunkId() const noexcept
{
  if (auto* c = std::get_if<ChunkSuffix>(&m_suffix)) {
    return c->id;
  }
  return std::nullopt;
}

std::string
FirmwareName::toUri() const
{
  std::string uri;
  for (const auto& c : formatName(*this)) {
    uri += '/';
    uri += c;
  }
  return uri;
}

FirmwareName
parseName(std::span<const std::string> components)
{
  if (components.size() < 5) {
    throw MalformedName("firmware name needs at least 5 components, got " +
                        std::to_string(components.size()));
  }
  BaseName base{{components[0], components[1], components[2]},
                parseCanonicalNumber(components[3], "epoch")};

  const std::string& suffix = components[4];
  if (suffix == kManifest || suffix == kFirmware) {
    if (components.size() != 5) {
      throw MalformedName("trailing components after /" + suffix);
    }
    if (suffix == kManifest) {
      return FirmwareName::manifest(base);
    }
    return FirmwareName::firmware(base);
  }
  if (suffix == kChunk) {
    if (components.size() != 6) {
      throw MalformedName("chunk names need exactly one chunk id component");
    }
    return FirmwareName::chunk(base, parseCanonicalNumber(components[5], "chunk id"));
  }
  throw MalformedName("unknown suffix '" + suffix + "'");
}

FirmwareName
parseUri(std::string_view uri)
{
  if (uri.empty() || uri.front() != '/') {
    throw MalformedName("name URI must start with '/'");
  }
  std::vector<std::string> components;
  size_t pos = 1;
  while (pos <= uri.size()) {
    size_t next = uri.find('/', pos);
    if (next == std::string_view::npos) {
      next = uri.size();
    }
    components.emplace_back(uri.substr(pos, next - pos));
    pos = next + 1;
  }
  return parseName(components);
}

std::vector<std::string>
formatBaseName(const BaseName& base)
{
  return {base.identity.deployment, base.identity.vendor, base.identity.deviceClass,
          std::to_string(base.epoch)};
}

std::vector<std::string>
formatName(const FirmwareName& name)
{
  auto components = formatBaseName(name.base());
  std::visit(
    [&](const auto& s) {
      using T = std::decay_t<decltype(s)>;
      if constexpr (std::is_same_v<T, ManifestSuffix>) {
        components.emplace_back(kManifest);
      }
      else if constexpr (std::is_same_v<T, FirmwareSuffix>) {
        components.emplace_back(kFirmware);
      }
      else {
        components.emplace_back(kChunk);
        components.push_back(std::to_string(s.id));
      }
    },
    name.suffix());
  return components;
}

Granularity::Granularity(int64_t p, int64_t o)
  : period(p)
  , offset(o)
{
  if (period <= 0) {
    throw std::invalid_argument("granularity period must be positive");
  }
  if (offset <= -period || offset >= period) {
    throw std::invalid_argument("granularity offset must be smaller than the period");
  }
}

uint64_t
alignEpoch(uint64_t t, const Granularity& g)
{
  const auto time = static_cast<int64_t>(t);
  int64_t phase = (time - g.offset) % g.period;
  if (phase < 0) {
    phase += g.period;
  }
  int64_t aligned = time - phase;
  // nothing aligned lies at or before t; clamp to the epoch origin
  return aligned < 0 ? 0 : static_cast<uint64_t>(aligned);
}

size_t
encodedSize(const FirmwareName& name, const NameEncodingModel& model)
{
  auto components = formatName(name);
  size_t size = model.nameOverhead;
  for (size_t i = 0; i < components.size(); ++i) {
    size += model.componentOverhead;
    bool isChunkId = name.isChunk() && i + 1 == components.size();
    if (isChunkId && model.chunkIdWidth > 0) {
      size += model.chunkIdWidth;
    }
    else {
      size += components[i].size();
    }
  }
  return size;
}

} // namespace ndnfw
