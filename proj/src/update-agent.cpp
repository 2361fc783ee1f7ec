#include "ndnfw/update-agent.hpp"

namespace ndnfw {

const char*
toString(Strategy s)
{
  return s == Strategy::Concurrent ? "concurrent" : "cascading";
}

const char*
toString(Phase p)
{
  switch (p) {
    case Phase::Idle:
      return "Idle";
    case Phase::AwaitManifest:
      return "AwaitManifest";
    case Phase::Fetching:
      return "Fetching";
    case Phase::VerifyingImage:
      return "VerifyingImage";
    case Phase::Installing:
      return "Installing";
    case Phase::Serving:
      return "Serving";
  }
  return "?";
}

std::optional<Strategy>
parseStrategy(std::string_view text)
{
  if (text == "concurrent") {
    return Strategy::Concurrent;
  }
  if (text == "cascading") {
    return Strategy::Cascading;
  }
  return std::nullopt;
}

UpdateAgent::UpdateAgent(AgentConfig config, InstalledFirmware factory)
  : m_config(std::move(config))
  , m_rng(m_config.rngSeed)
{
  if (!isValidTagLength(m_config.tagLength)) {
    throw InvalidTruncation(m_config.tagLength);
  }
  m_state.installed = std::move(factory);
  m_state.phase = restingPhase();
}

void
UpdateAgent::emit(AgentEventKind kind, std::optional<uint64_t> chunk, std::string detail)
{
  m_events.push_back({kind, chunk, std::move(detail)});
}

std::vector<AgentEvent>
UpdateAgent::drainEvents()
{
  return std::exchange(m_events, {});
}

void
UpdateAgent::setPhase(Phase next, std::string reason)
{
  if (next == m_state.phase) {
    return;
  }
  std::string detail = std::string(toString(m_state.phase)) + "->" + toString(next);
  if (!reason.empty()) {
    detail += ";" + reason;
  }
  m_state.phase = next;
  emit(AgentEventKind::PhaseChange, std::nullopt, std::move(detail));
}

Phase
UpdateAgent::restingPhase() const
{
  return m_state.installed.manifest ? Phase::Serving : Phase::Idle;
}

std::optional<Interest>
UpdateAgent::pollVersion(Timestamp, uint64_t wallClockSeconds)
{
  if (!isQuiescent()) {
    return std::nullopt;
  }
  uint64_t epoch = alignEpoch(wallClockSeconds, m_config.granularity);
  if (epoch <= m_state.installed.epoch || m_state.abortedEpochs.count(epoch) != 0) {
    return std::nullopt;
  }
  m_state.pendingEpoch = epoch;
  setPhase(Phase::AwaitManifest, "poll");
  Interest interest{FirmwareName::manifest({m_config.identity, epoch}),
                    static_cast<uint32_t>(m_rng() >> 32)};
  emit(AgentEventKind::InterestSent, std::nullopt, "manifest");
  return interest;
}

bool
UpdateAgent::implicitDiscovery(const Interest& forwarded)
{
  const auto& name = forwarded.name;
  if (!name.isManifest() || name.identity() != m_config.identity || !isQuiescent()) {
    return false;
  }
  if (name.epoch() <= m_state.installed.epoch || m_state.abortedEpochs.count(name.epoch()) != 0) {
    return false;
  }
  m_state.pendingEpoch = name.epoch();
  setPhase(Phase::AwaitManifest, "implicit");
  return true;
}

Phase
UpdateAgent::onManifest(const Data& data, Timestamp now)
{
  if (m_state.phase != Phase::AwaitManifest || !data.name.isManifest() ||
      data.name.identity() != m_config.identity) {
    return m_state.phase;
  }
  m_state.pendingEpoch.reset();

  const auto* sig = std::get_if<ManifestSignature>(&data.auth);
  std::optional<Manifest> manifest;
  if (sig != nullptr) {
    try {
      manifest = Manifest::decodeBody(data.payload, sig->bytes);
    }
    catch (const std::exception&) {
      manifest.reset();
    }
  }
  if (!manifest || manifest->baseName != data.name.base() ||
      !manifest->verify(m_config.vendorKey)) {
    emit(AgentEventKind::Abort, std::nullopt, "signature-invalid;reported");
    setPhase(restingPhase(), "signature-invalid");
    return m_state.phase;
  }
  if (manifest->baseName.epoch <= m_state.installed.epoch) {
    setPhase(restingPhase(), "not-newer");
    return m_state.phase;
  }
  if (manifest->chunkSize == 0 || manifest->imageSize == 0 ||
      manifest->imageSize > m_config.maxImageSize ||
      manifest->chunkCount != chunkCountFor(manifest->imageSize, manifest->chunkSize)) {
    emit(AgentEventKind::Abort, std::nullopt, "manifest-inconsistent;reported");
    setPhase(restingPhase(), "manifest-inconsistent");
    return m_state.phase;
  }
  startFetch(*manifest, now);
  return m_state.phase;
}

void
UpdateAgent::resetBuffer()
{
  const Manifest& m = *m_state.activeManifest;
  m_state.buffer.assign(m.imageSize, 0);
  m_state.received.assign(m.chunkCount, false);
  m_state.receivedCount = 0;
  m_state.progress = 0;
  m_state.failCounts.clear();
  m_state.outstanding.reset();
  m_state.timedOut.clear();
}

void
UpdateAgent::startFetch(const Manifest& manifest, Timestamp now)
{
  m_state.activeManifest = manifest;
  resetBuffer();
  m_state.nextRequestAt = now;
  m_state.digestRetriesLeft = m_config.digestRetries;
  setPhase(Phase::Fetching, "manifest-verified");
}

std::optional<Interest>
UpdateAgent::nextRequest(Timestamp now)
{
  if (m_state.phase != Phase::Fetching || m_state.outstanding || now < m_state.nextRequestAt) {
    return std::nullopt;
  }
  const Manifest& m = *m_state.activeManifest;
  uint64_t index = m_state.progress;
  if (index >= m.chunkCount) {
    return std::nullopt;
  }
  m_state.outstanding = index;
  if (m_state.timedOut.erase(index) != 0) {
    emit(AgentEventKind::AppRetx, index);
  }
  else {
    emit(AgentEventKind::InterestSent, index);
  }
  return Interest{FirmwareName::chunk(m.baseName, index), static_cast<uint32_t>(m_rng() >> 32)};
}

Phase
UpdateAgent::onChunk(const Data& data, Timestamp now, ChunkSource source)
{
  if (m_state.phase != Phase::Fetching || !data.name.isChunk() ||
      data.name.base() != m_state.activeManifest->baseName) {
    return m_state.phase;
  }
  const Manifest& m = *m_state.activeManifest;
  const uint64_t index = *data.name.chunkId();
  if (index >= m.chunkCount) {
    return m_state.phase;
  }
  if (source == ChunkSource::Requested && m_state.outstanding == index) {
    m_state.outstanding.reset();
  }
  if (m_state.received[index]) {
    return m_state.phase;
  }

  const auto* tag = std::get_if<HmacTag>(&data.auth);
  bool valid = tag != nullptr && data.payload.size() == m.chunkLength(index) &&
               equalConstantTime(tag->bytes, tagChunk(m.baseName, index, data.payload,
                                                      m_config.psk, m_config.tagLength));
  if (!valid) {
    if (source == ChunkSource::Diverted) {
      return m_state.phase;
    }
    int failures = ++m_state.failCounts[index];
    emit(AgentEventKind::TagFail, index, "failures=" + std::to_string(failures));
    if (failures >= m_config.maxTagFailures) {
      abort("irrecoverable;chunk=" + std::to_string(index) + ";reported");
    }
    else {
      m_state.nextRequestAt = now;
    }
    return m_state.phase;
  }

  std::copy(data.payload.begin(), data.payload.end(),
            m_state.buffer.begin() + static_cast<std::ptrdiff_t>(index * m.chunkSize));
  m_state.received[index] = true;
  ++m_state.receivedCount;
  m_state.failCounts.erase(index);
  m_state.timedOut.erase(index);
  while (m_state.progress < m.chunkCount && m_state.received[m_state.progress]) {
    ++m_state.progress;
  }
  emit(AgentEventKind::ChunkStored, index,
       source == ChunkSource::Requested ? "requested" : "diverted");
  if (source == ChunkSource::Requested) {
    m_state.nextRequestAt = now + m_config.flashWriteLatency;
  }
  if (m_state.receivedCount == m.chunkCount) {
    m_state.outstanding.reset();
    setPhase(Phase::VerifyingImage);
  }
  return m_state.phase;
}

std::optional<Timestamp>
UpdateAgent::onTimeout(const FirmwareName& name, Timestamp now)
{
  if (name.isManifest()) {
    if (m_state.phase == Phase::AwaitManifest && m_state.pendingEpoch == name.epoch()) {
      m_state.pendingEpoch.reset();
      setPhase(restingPhase(), "manifest-timeout");
    }
    return std::nullopt;
  }
  if (m_state.phase != Phase::Fetching || !name.isChunk() ||
      name.base() != m_state.activeManifest->baseName || m_state.outstanding != name.chunkId()) {
    return std::nullopt;
  }
  uint64_t index = *name.chunkId();
  m_state.outstanding.reset();
  m_state.timedOut.insert(index);

  auto jitterSpan = static_cast<uint64_t>(m_config.appRetxJitter.count());
  auto offset = static_cast<int64_t>(m_rng() % (2 * jitterSpan + 1)) -
                static_cast<int64_t>(jitterSpan);
  m_state.nextRequestAt = now + m_config.appRetxBase + Timestamp(offset);
  return m_state.nextRequestAt;
}

void
UpdateAgent::abort(std::string reason)
{
  if (m_state.activeManifest) {
    m_state.abortedEpochs.insert(m_state.activeManifest->baseName.epoch);
  }
  emit(AgentEventKind::Abort, std::nullopt, reason);
  m_state.activeManifest.reset();
  m_state.buffer.clear();
  m_state.received.clear();
  m_state.receivedCount = 0;
  m_state.progress = 0;
  m_state.failCounts.clear();
  m_state.outstanding.reset();
  m_state.timedOut.clear();
  setPhase(restingPhase(), "abort");
}

Phase
UpdateAgent::finalize(Timestamp now)
{
  if (m_state.phase != Phase::VerifyingImage) {
    return m_state.phase;
  }
  const Manifest manifest = *m_state.activeManifest;
  if (sha256(m_state.buffer) != manifest.imageDigest) {
    if (m_state.digestRetriesLeft > 0) {
      --m_state.digestRetriesLeft;
      resetBuffer();
      m_state.nextRequestAt = now;
      setPhase(Phase::Fetching, "digest-mismatch;refetch");
    }
    else {
      abort("irrecoverable;digest-mismatch;reported");
    }
    return m_state.phase;
  }

  setPhase(Phase::Installing);
  InstalledFirmware& flash = m_state.installed;
  flash.previous = std::move(flash.bytes);
  flash.bytes = std::move(m_state.buffer);
  flash.epoch = manifest.baseName.epoch;
  flash.manifest = manifest;
  m_state.buffer.clear();
  m_state.received.clear();
  m_state.receivedCount = 0;
  m_state.progress = 0;
  m_state.failCounts.clear();
  m_state.timedOut.clear();
  emit(AgentEventKind::InstallComplete, std::nullopt, "epoch=" + std::to_string(flash.epoch));
  setPhase(Phase::Serving);
  return m_state.phase;
}

Data
UpdateAgent::makeChunkData(const Manifest& m, uint64_t index, ByteSpan source) const
{
  auto slice = source.subspan(index * m.chunkSize, m.chunkLength(index));
  Data data{FirmwareName::chunk(m.baseName, index), Bytes(slice.begin(), slice.end()), NoAuth{}};
  data.auth = HmacTag{tagChunk(m.baseName, index, slice, m_config.psk, m_config.tagLength)};
  return data;
}

std::optional<Data>
UpdateAgent::serveChunk(const Interest& interest) const
{
  const auto& name = interest.name;
  if (!name.isChunk()) {
    return std::nullopt;
  }
  const uint64_t index = *name.chunkId();
  const auto& installed = m_state.installed;
  if (installed.manifest && installed.manifest->baseName == name.base()) {
    if (index >= installed.manifest->chunkCount) {
      return std::nullopt;
    }
    return makeChunkData(*installed.manifest, index, installed.bytes);
  }
  if (deniesChunk(interest)) {
    return std::nullopt;
  }
  if (m_state.phase == Phase::Fetching && m_state.activeManifest->baseName == name.base() &&
      index < m_state.activeManifest->chunkCount && m_state.received[index]) {
    return makeChunkData(*m_state.activeManifest, index, m_state.buffer);
  }
  return std::nullopt;
}

std::optional<Data>
UpdateAgent::serveManifest(const Interest& interest) const
{
  const auto& name = interest.name;
  if (!name.isManifest()) {
    return std::nullopt;
  }
  for (const auto* m : {m_state.installed.manifest ? &*m_state.installed.manifest : nullptr,
                        m_state.activeManifest ? &*m_state.activeManifest : nullptr}) {
    if (m != nullptr && m->baseName == name.base()) {
      return Data{name, m->encodeBody(),
                  ManifestSignature{Bytes(m->signature.begin(), m->signature.end())}};
    }
  }
  return std::nullopt;
}

bool
UpdateAgent::deniesChunk(const Interest& interest) const
{
  const auto& name = interest.name;
  return m_config.strategy == Strategy::Cascading && name.isChunk() &&
         name.identity() == m_config.identity && name.epoch() > m_state.installed.epoch;
}

bool
UpdateAgent::wantsChunk(const Data& data) const
{
  if (m_config.strategy != Strategy::Concurrent || m_state.phase != Phase::Fetching ||
      !data.name.isChunk() || data.name.base() != m_state.activeManifest->baseName) {
    return false;
  }
  uint64_t index = *data.name.chunkId();
  return index >= m_state.progress && index < m_state.activeManifest->chunkCount &&
         !m_state.received[index];
}

} // namespace ndnfw
