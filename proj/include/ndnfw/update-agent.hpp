#ifndef NDNFW_UPDATE_AGENT_HPP
#define NDNFW_UPDATE_AGENT_HPP

#include "ndnfw/forwarder.hpp"
#include "ndnfw/vendor.hpp"

#include <random>

namespace ndnfw {

enum class Strategy {
  Concurrent,
  Cascading,
};

enum class Phase {
  Idle,
  AwaitManifest,
  Fetching,
  VerifyingImage,
  Installing,
  Serving,
};

const char*
toString(Strategy s);

const char*
toString(Phase p);

std::optional<Strategy>
parseStrategy(std::string_view text);

struct AgentConfig
{
  DeviceIdentity identity;
  Strategy strategy = Strategy::Concurrent;
  Granularity granularity;
  Bytes psk;
  PublicKey vendorKey;
  size_t tagLength = 8;
  Timestamp appRetxBase = 10s;
  Timestamp appRetxJitter = 5s;
  int maxTagFailures = 3;
  int digestRetries = 1;
  /// Cost of persisting one chunk; delays the next request.
  Timestamp flashWriteLatency = 0us;
  uint64_t maxImageSize = 4u << 20;
  uint64_t rngSeed = 0;
};

/// Contents of the firmware flash region.
struct InstalledFirmware
{
  Bytes bytes;
  uint64_t epoch = 0;
  std::optional<Bytes> previous;
  std::optional<Manifest> manifest; ///< unknown for the factory image
};

struct AgentState
{
  Phase phase = Phase::Idle;
  InstalledFirmware installed;
  std::optional<uint64_t> pendingEpoch;
  std::optional<Manifest> activeManifest;
  Bytes buffer;
  std::vector<bool> received;
  uint64_t receivedCount = 0;
  uint64_t progress = 0; ///< smallest index not yet stored
  std::map<uint64_t, int> failCounts;
  std::optional<uint64_t> outstanding;
  std::set<uint64_t> timedOut;
  Timestamp nextRequestAt{0};
  int digestRetriesLeft = 0;
  std::set<uint64_t> abortedEpochs;
};

enum class AgentEventKind {
  InterestSent,
  AppRetx,
  PhaseChange,
  ChunkStored,
  TagFail,
  Abort,
  InstallComplete,
};

struct AgentEvent
{
  AgentEventKind kind;
  std::optional<uint64_t> chunk;
  std::string detail;
};

enum class ChunkSource {
  Requested,
  Diverted,
};

/**
 * Device-side update process.
 *
 * Polls for the manifest of the latest aligned epoch, verifies it, fetches
 * chunks one at a time (stop-and-wait), checks each chunk tag, verifies the
 * reassembled image and installs it. Emitted events are collected and drained
 * by the owner.
 */
class UpdateAgent
{
public:
  UpdateAgent(AgentConfig config, InstalledFirmware factory);

  /// Manifest Interest for the current aligned epoch, if it is newer than the
  /// installed one and the agent is not busy.
  std::optional<Interest>
  pollVersion(Timestamp now, uint64_t wallClockSeconds);

  /// Registration decision for a manifest Interest this node forwards.
  bool
  implicitDiscovery(const Interest& forwarded);

  Phase
  onManifest(const Data& data, Timestamp now);

  /// The next chunk Interest, if stop-and-wait allows one at @p now.
  std::optional<Interest>
  nextRequest(Timestamp now);

  Phase
  onChunk(const Data& data, Timestamp now, ChunkSource source = ChunkSource::Requested);

  /// Network-layer timeout (or Nack) for a locally expressed Interest.
  /// Returns when the agent next wants to be woken, if at all.
  std::optional<Timestamp>
  onTimeout(const FirmwareName& name, Timestamp now);

  Phase
  finalize(Timestamp now);

  std::optional<Data>
  serveChunk(const Interest& interest) const;

  std::optional<Data>
  serveManifest(const Interest& interest) const;

  bool
  deniesChunk(const Interest& interest) const;

  bool
  wantsChunk(const Data& data) const;

  std::vector<AgentEvent>
  drainEvents();

  const AgentState&
  state() const noexcept
  {
    return m_state;
  }

  /// Direct state access for fault injection in tests.
  AgentState&
  mutableState() noexcept
  {
    return m_state;
  }

  const AgentConfig&
  config() const noexcept
  {
    return m_config;
  }

  Phase
  phase() const noexcept
  {
    return m_state.phase;
  }

  bool
  isQuiescent() const noexcept
  {
    return m_state.phase == Phase::Idle || m_state.phase == Phase::Serving;
  }

private:
  void
  setPhase(Phase next, std::string reason = {});

  Phase
  restingPhase() const;

  void
  startFetch(const Manifest& manifest, Timestamp now);

  void
  resetBuffer();

  void
  abort(std::string reason);

  Data
  makeChunkData(const Manifest& manifest, uint64_t index, ByteSpan source) const;

  void
  emit(AgentEventKind kind, std::optional<uint64_t> chunk = std::nullopt, std::string detail = {});

private:
  AgentConfig m_config;
  AgentState m_state;
  std::mt19937_64 m_rng;
  std::vector<AgentEvent> m_events;
};

} // namespace ndnfw

#endif // NDNFW_UPDATE_AGENT_HPP
