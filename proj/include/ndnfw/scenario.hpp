#ifndef NDNFW_SCENARIO_HPP
#define NDNFW_SCENARIO_HPP

#include "ndnfw/topology.hpp"
#include "ndnfw/update-agent.hpp"

#include <filesystem>

namespace ndnfw {

/// Validation failure with the offending field path and, when it can be
/// located in the source text, its 1-based line.
class ScenarioInvalid : public std::invalid_argument
{
public:
  ScenarioInvalid(std::string field, const std::string& message, size_t line = 0);

  const std::string&
  field() const noexcept
  {
    return m_field;
  }

  size_t
  line() const noexcept
  {
    return m_line;
  }

private:
  std::string m_field;
  size_t m_line;
};

/// Shared-medium radio parameters.
struct LinkModel
{
  double lossProb = 0.10;
  /// Extra loss factor per overlapping transmission on an interfering link.
  double collisionPenalty = 0.5;
  Timestamp propagationDelay = 100us;
  uint64_t bandwidthBps = 250000;
  /// Fixed per-attempt cost: preamble, turnaround and acknowledgement.
  Timestamp macOverhead = 700us;
  Timestamp backoffSlot = 1ms;
  int maxRetries = 3;
  size_t mtu = 128;
  size_t linkHeaderBytes = 23;
  size_t fragmentHeaderBytes = 5;
  size_t queueCapacity = 8;
  bool overhearing = true;
};

struct NodeModel
{
  Timestamp processingDelay = 4ms;
  Timestamp flashWriteLatency = 8ms;
  size_t csCapacity = 64;
  size_t pitCapacity = 16;
  int netRetxBudget = 3;
  Timestamp netRetxInterval = 2000ms;
  bool nacks = false;
  Timestamp pollPeriod = 60s;
  Timestamp pollJitter = 2s;
  Timestamp appRetxBase = 10s;
  Timestamp appRetxJitter = 5s;
  int maxTagFailures = 3;
  int digestRetries = 1;
};

enum class AttackMode {
  TamperPayload,
  ForgeTag,
  ReplayStale,
};

const char*
toString(AttackMode mode);

struct Attacker
{
  NodeId edge = 0; ///< child endpoint of the attacked link
  AttackMode mode = AttackMode::TamperPayload;
  double rate = 1.0;
};

struct Outage
{
  NodeId edge = 0; ///< child endpoint of the severed link
  Timestamp at{0};
};

enum class ClassAssignment {
  Shared, ///< every device runs the same device class
  Unique, ///< one device class per device
};

struct Scenario
{
  Topology topology = buildPaperTopology();
  Strategy strategy = Strategy::Concurrent;
  ClassAssignment classes = ClassAssignment::Shared;
  uint64_t imageSize = 32000;
  uint32_t chunkSize = 32;
  size_t tagLength = 8;
  uint64_t seed = 1;
  Timestamp duration = 4h;

  std::string deployment = "iotlab";
  std::string vendor = "haw";
  std::string deviceClass = "m3-fw";
  /// Wall clock at simulation start, seconds since the Unix epoch.
  uint64_t wallClockStart = 1632311220;
  Granularity granularity{86400, -7200};

  LinkModel link;
  NodeModel node;
  std::vector<Attacker> attackers;
  std::vector<Outage> outages;

  uint64_t
  chunkCount() const
  {
    return (imageSize + chunkSize - 1) / chunkSize;
  }

  /// Epoch of the release under test.
  uint64_t
  releaseEpoch() const
  {
    return alignEpoch(wallClockStart, granularity);
  }

  /// Device class run by node @p id.
  std::string
  classOf(NodeId id) const;

  /// Throws ScenarioInvalid naming the first offending field.
  void
  validate() const;
};

/// Parses the JSON scenario format documented in the README. Unspecified
/// fields keep their defaults.
Scenario
parseScenario(std::string_view text);

Scenario
loadScenario(const std::filesystem::path& path);

std::string
scenarioToJson(const Scenario& scenario);

Scenario
injectAttacker(Scenario scenario, const Attacker& attacker);

Scenario
severUplink(Scenario scenario, NodeId edge, Timestamp at);

/// Numeric fields that parameter sweeps may vary.
const std::vector<std::string>&
sweepAxes();

/// Sets axis @p axis to @p value; throws ScenarioInvalid for unknown axes.
void
applyAxis(Scenario& scenario, const std::string& axis, double value);

} // namespace ndnfw

#endif // NDNFW_SCENARIO_HPP
