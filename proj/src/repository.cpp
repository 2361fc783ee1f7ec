#include "ndnfw/repository.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <mutex>

namespace ndnfw {

namespace {

constexpr size_t kMaxTag = 32;

size_t
recordLength(const Manifest& m)
{
  // index(8) | payload length(2) | payload padded to chunkSize | tag length(1) | tag padded to 32
  return 8 + 2 + m.chunkSize + 1 + kMaxTag;
}

std::filesystem::path
releaseDir(const std::filesystem::path& root, const BaseName& base)
{
  auto dir = root;
  for (const auto& c : formatBaseName(base)) {
    dir /= c;
  }
  return dir;
}

Bytes
readFile(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void
writeFile(const std::filesystem::path& path, ByteSpan data)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
}

} // namespace

Repository::Repository(Repository&& other) noexcept
{
  std::unique_lock lock(other.m_mutex);
  m_releases = std::move(other.m_releases);
}

void
Repository::publish(const Manifest& manifest, std::vector<Chunk> chunks)
{
  if (chunks.size() != manifest.chunkCount) {
    throw InconsistentPublication("manifest announces " + std::to_string(manifest.chunkCount) +
                                  " chunks, got " + std::to_string(chunks.size()));
  }
  if (manifest.chunkSize == 0 ||
      manifest.chunkCount != chunkCountFor(manifest.imageSize, manifest.chunkSize)) {
    throw InconsistentPublication("manifest chunk parameters do not match the image size");
  }
  Bytes image;
  image.reserve(manifest.imageSize);
  for (uint64_t i = 0; i < chunks.size(); ++i) {
    const Chunk& c = chunks[i];
    if (c.index != i) {
      throw InconsistentPublication("chunk " + std::to_string(i) + " carries index " +
                                    std::to_string(c.index));
    }
    if (c.payload.size() != manifest.chunkLength(i)) {
      throw InconsistentPublication("chunk " + std::to_string(i) + " has wrong length");
    }
    if (!isValidTagLength(c.tag.size()) || c.tag.size() != chunks.front().tag.size()) {
      throw InconsistentPublication("chunk " + std::to_string(i) + " has a bad tag length");
    }
    image.insert(image.end(), c.payload.begin(), c.payload.end());
  }
  if (sha256(image) != manifest.imageDigest) {
    throw InconsistentPublication("chunks do not reassemble to the manifest digest");
  }

  auto release = std::make_shared<const Release>(Release{manifest, std::move(chunks)});
  std::unique_lock lock(m_mutex);
  auto& versions = m_releases[manifest.baseName.identity];
  if (versions.count(manifest.baseName.epoch) != 0) {
    throw DuplicateEpoch(manifest.baseName);
  }
  versions.emplace(manifest.baseName.epoch, std::move(release));
}

std::optional<Manifest>
Repository::manifest(const BaseName& base) const
{
  std::shared_lock lock(m_mutex);
  auto it = m_releases.find(base.identity);
  if (it == m_releases.end()) {
    return std::nullopt;
  }
  auto rel = it->second.find(base.epoch);
  if (rel == it->second.end()) {
    return std::nullopt;
  }
  return rel->second->manifest;
}

std::optional<Chunk>
Repository::chunk(const BaseName& base, uint64_t index) const
{
  std::shared_lock lock(m_mutex);
  auto it = m_releases.find(base.identity);
  if (it == m_releases.end()) {
    return std::nullopt;
  }
  auto rel = it->second.find(base.epoch);
  if (rel == it->second.end() || index >= rel->second->chunks.size()) {
    return std::nullopt;
  }
  return rel->second->chunks[index];
}

std::vector<uint64_t>
Repository::epochs(const DeviceIdentity& identity) const
{
  std::shared_lock lock(m_mutex);
  std::vector<uint64_t> out;
  auto it = m_releases.find(identity);
  if (it != m_releases.end()) {
    for (const auto& [epoch, rel] : it->second) {
      out.push_back(epoch);
    }
  }
  return out;
}

size_t
Repository::releaseCount() const
{
  std::shared_lock lock(m_mutex);
  size_t n = 0;
  for (const auto& [id, versions] : m_releases) {
    n += versions.size();
  }
  return n;
}

void
Repository::writeRelease(const std::filesystem::path& root, const Release& release)
{
  const Manifest& m = release.manifest;
  auto dir = releaseDir(root, m.baseName);
  std::filesystem::create_directories(dir);
  writeFile(dir / "manifest.bin", m.encode());

  const size_t recLen = recordLength(m);
  Bytes records;
  records.reserve(recLen * release.chunks.size());
  for (const Chunk& c : release.chunks) {
    tlv::Encoder rec;
    rec.appendUint(c.index, 8);
    rec.appendUint(c.payload.size(), 2);
    rec.appendBytes(c.payload);
    Bytes pad(m.chunkSize - c.payload.size(), 0);
    rec.appendBytes(pad);
    rec.appendUint(c.tag.size(), 1);
    rec.appendBytes(c.tag);
    Bytes tagPad(kMaxTag - c.tag.size(), 0);
    rec.appendBytes(tagPad);
    records.insert(records.end(), rec.bytes().begin(), rec.bytes().end());
  }
  writeFile(dir / "chunks.bin", records);
}

Release
Repository::readRelease(const std::filesystem::path& dir)
{
  Release release;
  release.manifest = Manifest::decode(readFile(dir / "manifest.bin"));
  const Manifest& m = release.manifest;
  Bytes records = readFile(dir / "chunks.bin");
  const size_t recLen = recordLength(m);
  if (records.size() != recLen * m.chunkCount) {
    throw DecodeError("chunks.bin size does not match the manifest");
  }
  for (uint64_t i = 0; i < m.chunkCount; ++i) {
    tlv::Decoder dec(ByteSpan(records).subspan(i * recLen, recLen));
    Chunk c;
    c.index = dec.readUint(8);
    size_t len = dec.readUint(2);
    if (len > m.chunkSize) {
      throw DecodeError("chunk record payload exceeds chunk size");
    }
    auto payload = dec.readBytes(m.chunkSize);
    c.payload.assign(payload.begin(), payload.begin() + len);
    size_t tagLen = dec.readUint(1);
    if (tagLen > kMaxTag) {
      throw DecodeError("chunk record tag too long");
    }
    auto tag = dec.readBytes(kMaxTag);
    c.tag.assign(tag.begin(), tag.begin() + tagLen);
    release.chunks.push_back(std::move(c));
  }
  return release;
}

void
Repository::save(const std::filesystem::path& root) const
{
  std::shared_lock lock(m_mutex);
  for (const auto& [id, versions] : m_releases) {
    for (const auto& [epoch, rel] : versions) {
      writeRelease(root, *rel);
    }
  }
}

Repository
Repository::load(const std::filesystem::path& root)
{
  Repository repo;
  if (!std::filesystem::exists(root)) {
    return repo;
  }
  std::vector<std::filesystem::path> dirs;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
    if (entry.is_regular_file() && entry.path().filename() == "manifest.bin") {
      dirs.push_back(entry.path().parent_path());
    }
  }
  std::sort(dirs.begin(), dirs.end());
  for (const auto& dir : dirs) {
    Release rel = readRelease(dir);
    repo.publish(rel.manifest, std::move(rel.chunks));
  }
  return repo;
}

} // namespace ndnfw
