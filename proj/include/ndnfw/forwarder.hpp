#ifndef NDNFW_FORWARDER_HPP
#define NDNFW_FORWARDER_HPP

#include "ndnfw/content-store.hpp"
#include "ndnfw/fib.hpp"
#include "ndnfw/pit.hpp"

#include <deque>
#include <random>

namespace ndnfw {

struct ForwarderConfig
{
  size_t csCapacity = 64;
  size_t pitCapacity = 16;
  size_t seenNonceCapacity = 128;
  int retxBudget = 3;
  Timestamp retxInterval = 2000ms;
  bool nacks = false;
  uint64_t nonceSeed = 0;
};

/**
 * Application-side hooks consulted by the forwarder. A node's update agent or
 * the gateway's repository producer implements them; the defaults describe a
 * plain router.
 */
class LocalHooks
{
public:
  virtual ~LocalHooks() = default;

  /// Cascading roll-out: refuse same-class chunk requests until updated.
  virtual bool
  deniesInterest(const Interest&)
  {
    return false;
  }

  /// Answer from flash, chunk buffer or repository.
  virtual std::optional<Data>
  produce(const Interest&)
  {
    return std::nullopt;
  }

  /// Called for every Interest forwarded or aggregated on behalf of a
  /// neighbor; returning a consumer registers it on the PIT entry.
  virtual std::optional<ConsumerId>
  onForward(const Interest&)
  {
    return std::nullopt;
  }

  /// Whether Data not addressed to a local consumer should still be copied
  /// into the local chunk buffer.
  virtual bool
  wantsDiversion(const Data&)
  {
    return false;
  }
};

enum class DropReason {
  Loop,
  NoRoute,
  PitFull,
  Unsolicited,
};

const char*
toString(DropReason reason);

namespace action {

struct ServeData
{
  FaceId face;
  Data data;
};

struct ServeNack
{
  FaceId face;
  Nack nack;
};

struct Aggregate
{
  FirmwareName name;
  size_t downstreamCount;
};

struct Forward
{
  FaceId face;
  Interest interest;
};

struct Drop
{
  DropReason reason;
};

struct DenyCascading
{
  FirmwareName name;
};

struct RegisterLocal
{
  ConsumerId consumer;
  FirmwareName name;
};

struct DeliverLocal
{
  std::vector<ConsumerId> consumers;
  Data data;
};

struct ForwardDownstream
{
  std::vector<FaceId> faces;
  Data data;
};

struct CacheInsert
{
  FirmwareName name;
  std::optional<FirmwareName> evicted;
};

struct DivertToBuffer
{
  Data data;
};

struct NackDownstream
{
  std::vector<FaceId> faces;
  Nack nack;
};

struct NackLocal
{
  std::vector<ConsumerId> consumers;
  Nack nack;
};

} // namespace action

using Action = std::variant<action::ServeData, action::ServeNack, action::Aggregate,
                            action::Forward, action::Drop, action::DenyCascading,
                            action::RegisterLocal, action::DeliverLocal,
                            action::ForwardDownstream, action::CacheInsert,
                            action::DivertToBuffer, action::NackDownstream, action::NackLocal>;

using ActionList = std::vector<Action>;

struct PitExpiry
{
  FirmwareName name;
  std::vector<ConsumerId> consumers;
};

struct RetxResult
{
  std::vector<action::Forward> retransmissions;
  std::vector<PitExpiry> expired;
};

/**
 * Minimal NDN forwarder with hop-wise Interest retransmission.
 *
 * Every PIT entry retransmits its Interest upstream with a fresh nonce up to
 * `retxBudget` times at fixed `retxInterval` spacing and expires one interval
 * after the last retransmission, notifying local consumers.
 *
 * Single-owner: callers serialize all calls on one instance.
 */
class Forwarder
{
public:
  explicit Forwarder(const ForwarderConfig& config = {});

  ActionList
  onInterest(FaceId face, const Interest& interest, Timestamp now, LocalHooks& hooks);

  /// Interest originated by a local application.
  ActionList
  expressInterest(ConsumerId consumer, const Interest& interest, Timestamp now, LocalHooks& hooks);

  ActionList
  onData(FaceId face, const Data& data, Timestamp now, LocalHooks& hooks);

  /// Data overheard on the shared medium but addressed to another node.
  ActionList
  onOverheardData(const Data& data, LocalHooks& hooks);

  ActionList
  onNack(FaceId face, const Nack& nack, Timestamp now);

  /// Retransmissions due at @p now, ordered by deadline then name.
  RetxResult
  tickRetransmissions(Timestamp now);

  std::optional<Timestamp>
  nextRetxDeadline() const;

  uint32_t
  freshNonce();

  Pit&
  pit() noexcept
  {
    return m_pit;
  }

  ContentStore&
  cs() noexcept
  {
    return m_cs;
  }

  Fib&
  fib() noexcept
  {
    return m_fib;
  }

  const ForwarderConfig&
  config() const noexcept
  {
    return m_config;
  }

private:
  /// Records (name, nonce); returns false if it was already seen.
  bool
  rememberNonce(const FirmwareName& name, uint32_t nonce);

  ActionList
  forwardNew(std::optional<FaceId> downstream, std::optional<ConsumerId> consumer,
             const Interest& interest, Timestamp now, LocalHooks& hooks);

private:
  ForwarderConfig m_config;
  Pit m_pit;
  ContentStore m_cs;
  Fib m_fib;
  std::set<std::pair<FirmwareName, uint32_t>> m_seen;
  std::deque<std::pair<FirmwareName, uint32_t>> m_seenOrder;
  std::mt19937_64 m_nonceRng;
};

} // namespace ndnfw

#endif // NDNFW_FORWARDER_HPP
