#ifndef NDNFW_SIMULATOR_HPP
#define NDNFW_SIMULATOR_HPP

#include "ndnfw/metrics.hpp"
#include "ndnfw/repository.hpp"
#include "ndnfw/scenario.hpp"

#include <memory>

namespace ndnfw {

class MtuExceeded : public std::invalid_argument
{
public:
  MtuExceeded(size_t frame, size_t mtu)
    : std::invalid_argument("frame of " + std::to_string(frame) + " bytes exceeds MTU " +
                            std::to_string(mtu))
  {
  }
};

using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits of one draw.
double
uniform01(Rng& rng);

/// Uniform integer in [0, bound].
uint64_t
uniformUpTo(Rng& rng, uint64_t bound);

/// Medium occupancy of one attempt. Throws MtuExceeded for oversized frames.
Timestamp
airtime(const LinkModel& link, size_t frameBytes);

/// Random backoff before attempt @p attempt (0-based): uniform in [0, 2^k slots].
Timestamp
backoffDelay(const LinkModel& link, int attempt, Rng& rng);

/// Number of link frames needed for a network packet of @p packetBytes.
size_t
fragmentCount(const LinkModel& link, size_t packetBytes);

struct TransmitOutcome
{
  bool delivered = false;
  int attempts = 0;
  Timestamp at{0}; ///< delivery time, or the end of the last attempt
};

/// One frame over an otherwise idle link: up to 1 + maxRetries attempts, each
/// after its backoff and lost with probability lossProb.
TransmitOutcome
transmit(const LinkModel& link, size_t frameBytes, Timestamp now, Rng& rng);

/// Shared-medium accounting. Group v holds every link with an endpoint at
/// most one hop from node v.
struct MediumStats
{
  std::vector<Timestamp> groupBusy; ///< union of attempt intervals per group
  uint64_t attempts = 0;
  uint64_t overlappedAttempts = 0; ///< attempts that met at least one interferer
};

struct SimResult
{
  std::vector<MetricsRecord> records;
  RunSummary summary;
};

/**
 * Discrete-event simulation of one scenario.
 *
 * The gateway serves the repository; every other node runs a forwarder and an
 * update agent. All randomness derives from the scenario seed, so equal
 * scenarios produce identical traces. Attackers draw from a separate stream
 * so a rate-0 attacker leaves the trace unchanged.
 */
class Simulator
{
public:
  explicit Simulator(Scenario scenario);
  ~Simulator();

  SimResult
  run();

  const Scenario&
  scenario() const noexcept;

  /// nullptr for the gateway.
  const UpdateAgent*
  agent(NodeId id) const;

  /// The vendor image node @p id is expected to install.
  const Bytes&
  releaseImage(NodeId id) const;

  const Repository&
  repository() const noexcept;

  const MediumStats&
  medium() const noexcept;

private:
  struct Impl;
  std::unique_ptr<Impl> m_impl;
};

SimResult
runScenario(const Scenario& scenario);

} // namespace ndnfw

#endif // NDNFW_SIMULATOR_HPP
