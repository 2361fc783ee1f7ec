#include "ndnfw/forwarder.hpp"

#include <algorithm>

namespace ndnfw {

const char*
toString(DropReason reason)
{
  switch (reason) {
    case DropReason::Loop:
      return "loop";
    case DropReason::NoRoute:
      return "no-route";
    case DropReason::PitFull:
      return "pit-full";
    case DropReason::Unsolicited:
      return "unsolicited";
  }
  return "unknown";
}

Forwarder::Forwarder(const ForwarderConfig& config)
  : m_config(config)
  , m_pit(config.pitCapacity)
  , m_cs(config.csCapacity)
  , m_nonceRng(config.nonceSeed)
{
}

uint32_t
Forwarder::freshNonce()
{
  return static_cast<uint32_t>(m_nonceRng() >> 32);
}

bool
Forwarder::rememberNonce(const FirmwareName& name, uint32_t nonce)
{
  auto key = std::make_pair(name, nonce);
  if (m_seen.count(key) != 0) {
    return false;
  }
  if (m_config.seenNonceCapacity == 0) {
    return true;
  }
  if (m_seenOrder.size() >= m_config.seenNonceCapacity) {
    m_seen.erase(m_seenOrder.front());
    m_seenOrder.pop_front();
  }
  m_seen.insert(key);
  m_seenOrder.push_back(std::move(key));
  return true;
}

ActionList
Forwarder::onInterest(FaceId face, const Interest& interest, Timestamp now, LocalHooks& hooks)
{
  const auto& name = interest.name;
  if (!rememberNonce(name, interest.nonce)) {
    return {action::Drop{DropReason::Loop}};
  }
  // cascading denial takes precedence over the cache: a node that is still
  // updating must not hand out chunks of the image it is fetching itself
  if (hooks.deniesInterest(interest)) {
    return {action::DenyCascading{name}};
  }
  if (const Data* cached = m_cs.find(name, now)) {
    return {action::ServeData{face, *cached}};
  }
  if (auto produced = hooks.produce(interest)) {
    return {action::ServeData{face, std::move(*produced)}};
  }
  if (PitEntry* entry = m_pit.find(name)) {
    entry->downstreamFaces.insert(face);
    ActionList out{action::Aggregate{name, entry->downstreamFaces.size()}};
    if (auto consumer = hooks.onForward(interest)) {
      if (entry->localConsumers.insert(*consumer).second) {
        out.push_back(action::RegisterLocal{*consumer, name});
      }
    }
    return out;
  }
  return forwardNew(face, std::nullopt, interest, now, hooks);
}

ActionList
Forwarder::expressInterest(ConsumerId consumer, const Interest& interest, Timestamp now,
                           LocalHooks& hooks)
{
  const auto& name = interest.name;
  rememberNonce(name, interest.nonce);
  if (const Data* cached = m_cs.find(name, now)) {
    return {action::DeliverLocal{{consumer}, *cached}};
  }
  if (PitEntry* entry = m_pit.find(name)) {
    entry->localConsumers.insert(consumer);
    return {action::Aggregate{name, entry->downstreamFaces.size()}};
  }
  return forwardNew(std::nullopt, consumer, interest, now, hooks);
}

ActionList
Forwarder::forwardNew(std::optional<FaceId> downstream, std::optional<ConsumerId> consumer,
                      const Interest& interest, Timestamp now, LocalHooks& hooks)
{
  const auto& name = interest.name;
  auto upstream = m_fib.lookup(name);
  if (!upstream) {
    if (m_config.nacks) {
      Nack nack{name, NackReason::NoRoute, 0ms};
      if (downstream) {
        return {action::ServeNack{*downstream, nack}};
      }
      return {action::NackLocal{{*consumer}, nack}};
    }
    return {action::Drop{DropReason::NoRoute}};
  }
  if (m_pit.full()) {
    return {action::Drop{DropReason::PitFull}};
  }

  PitEntry entry{interest, *upstream, {}, {}, 0, now, now};
  entry.retxBudget = m_config.retxBudget;
  entry.created = now;
  entry.nextRetxAt = now + m_config.retxInterval;
  if (downstream) {
    entry.downstreamFaces.insert(*downstream);
  }
  if (consumer) {
    entry.localConsumers.insert(*consumer);
  }

  ActionList out{action::Forward{*upstream, interest}};
  if (downstream) {
    if (auto registered = hooks.onForward(interest)) {
      entry.localConsumers.insert(*registered);
      out.push_back(action::RegisterLocal{*registered, name});
    }
  }
  m_pit.insert(std::move(entry));
  return out;
}

ActionList
Forwarder::onData(FaceId, const Data& data, Timestamp now, LocalHooks& hooks)
{
  PitEntry* entry = m_pit.find(data.name);
  if (entry == nullptr) {
    if (hooks.wantsDiversion(data)) {
      return {action::DivertToBuffer{data}};
    }
    return {action::Drop{DropReason::Unsolicited}};
  }

  std::vector<FaceId> faces(entry->downstreamFaces.begin(), entry->downstreamFaces.end());
  std::vector<ConsumerId> consumers(entry->localConsumers.begin(), entry->localConsumers.end());
  m_pit.erase(data.name);

  ActionList out;
  if (!faces.empty()) {
    auto evicted = m_cs.insert(data, now);
    out.push_back(action::CacheInsert{data.name, std::move(evicted)});
    out.push_back(action::ForwardDownstream{std::move(faces), data});
  }
  if (!consumers.empty()) {
    out.push_back(action::DeliverLocal{std::move(consumers), data});
  }
  else if (hooks.wantsDiversion(data)) {
    out.push_back(action::DivertToBuffer{data});
  }
  return out;
}

ActionList
Forwarder::onOverheardData(const Data& data, LocalHooks& hooks)
{
  if (m_pit.find(data.name) == nullptr && hooks.wantsDiversion(data)) {
    return {action::DivertToBuffer{data}};
  }
  return {action::Drop{DropReason::Unsolicited}};
}

ActionList
Forwarder::onNack(FaceId, const Nack& nack, Timestamp)
{
  PitEntry* entry = m_pit.find(nack.name);
  if (entry == nullptr) {
    return {action::Drop{DropReason::Unsolicited}};
  }
  std::vector<FaceId> faces(entry->downstreamFaces.begin(), entry->downstreamFaces.end());
  std::vector<ConsumerId> consumers(entry->localConsumers.begin(), entry->localConsumers.end());
  m_pit.erase(nack.name);

  ActionList out;
  if (!faces.empty()) {
    out.push_back(action::NackDownstream{std::move(faces), nack});
  }
  if (!consumers.empty()) {
    out.push_back(action::NackLocal{std::move(consumers), nack});
  }
  return out;
}

RetxResult
Forwarder::tickRetransmissions(Timestamp now)
{
  std::vector<std::pair<Timestamp, const FirmwareName*>> due;
  for (auto& [name, entry] : m_pit.entries()) {
    if (entry.nextRetxAt <= now) {
      due.emplace_back(entry.nextRetxAt, &name);
    }
  }
  std::sort(due.begin(), due.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first < b.first : *a.second < *b.second;
  });

  RetxResult result;
  std::vector<FirmwareName> expired;
  for (const auto& [deadline, namePtr] : due) {
    PitEntry& entry = *m_pit.find(*namePtr);
    if (entry.retxBudget > 0) {
      --entry.retxBudget;
      entry.nextRetxAt = deadline + m_config.retxInterval;
      entry.interest.nonce = freshNonce();
      rememberNonce(entry.interest.name, entry.interest.nonce);
      result.retransmissions.push_back({entry.upstream, entry.interest});
    }
    else {
      result.expired.push_back(
        {entry.interest.name, {entry.localConsumers.begin(), entry.localConsumers.end()}});
      expired.push_back(entry.interest.name);
    }
  }
  for (const auto& name : expired) {
    m_pit.erase(name);
  }
  return result;
}

std::optional<Timestamp>
Forwarder::nextRetxDeadline() const
{
  std::optional<Timestamp> next;
  for (const auto& [name, entry] : m_pit.entries()) {
    if (!next || entry.nextRetxAt < *next) {
      next = entry.nextRetxAt;
    }
  }
  return next;
}

} // namespace ndnfw
