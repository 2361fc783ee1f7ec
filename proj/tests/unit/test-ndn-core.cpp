#include "ndnfw/forwarder.hpp"

#include "doctest.h"

#include <random>

using namespace ndnfw;

namespace {

const BaseName base{{"iotlab", "haw", "m3-fw"}, 1632261600};
constexpr FaceId upstreamFace = 100;

Interest
interestFor(uint64_t chunk, uint32_t nonce)
{
  return Interest{FirmwareName::chunk(base, chunk), nonce};
}

Data
dataFor(uint64_t chunk, uint8_t fill = 0)
{
  Bytes payload(32, fill);
  payload[0] = static_cast<uint8_t>(chunk);
  return Data{FirmwareName::chunk(base, chunk), payload, HmacTag{Bytes(8, 0xAB)}};
}

/// Scriptable hooks for a node's local application.
struct TestHooks : LocalHooks
{
  bool deny = false;
  std::map<FirmwareName, Data> flash;
  std::optional<ConsumerId> registerAs;
  std::optional<uint64_t> divertAbove;

  bool
  deniesInterest(const Interest&) override
  {
    return deny;
  }

  std::optional<Data>
  produce(const Interest& i) override
  {
    auto it = flash.find(i.name);
    if (it == flash.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  std::optional<ConsumerId>
  onForward(const Interest&) override
  {
    return registerAs;
  }

  bool
  wantsDiversion(const Data& d) override
  {
    return divertAbove && d.name.chunkId() && *d.name.chunkId() > *divertAbove;
  }
};

template<typename T>
const T*
find(const ActionList& actions)
{
  for (const auto& a : actions) {
    if (auto* p = std::get_if<T>(&a)) {
      return p;
    }
  }
  return nullptr;
}

Forwarder
routedForwarder(ForwarderConfig cfg = {})
{
  Forwarder f(cfg);
  f.fib().setDefaultRoute(upstreamFace);
  return f;
}

} // namespace

TEST_CASE("packet sizes of the experiment configuration")
{
  PacketSizeModel model;
  CHECK(model.size(Packet{interestFor(0, 1)}) == 57);
  CHECK(model.size(Packet{dataFor(0)}) == 92);
  CHECK(model.size(Packet{dataFor(999)}) == 92);
}

TEST_CASE("on_interest: CS hit serves cached Data")
{
  auto fwd = routedForwarder();
  TestHooks hooks;
  fwd.cs().insert(dataFor(3, 7), 0us);
  auto out = fwd.onInterest(1, interestFor(3, 1), 1ms, hooks);
  REQUIRE(out.size() == 1);
  auto* serve = find<action::ServeData>(out);
  REQUIRE(serve);
  CHECK(serve->face == 1u);
  CHECK(serve->data.payload == dataFor(3, 7).payload);
  CHECK(fwd.pit().size() == 0);
}

TEST_CASE("on_interest: local flash answers before the PIT")
{
  auto fwd = routedForwarder();
  TestHooks hooks;
  hooks.flash.emplace(dataFor(4).name, dataFor(4, 9));
  auto out = fwd.onInterest(2, interestFor(4, 1), 0us, hooks);
  auto* serve = find<action::ServeData>(out);
  REQUIRE(serve);
  CHECK(serve->data.payload == dataFor(4, 9).payload);
  CHECK(fwd.pit().size() == 0);
}

TEST_CASE("on_interest: second face aggregates without a new upstream transmission")
{
  auto fwd = routedForwarder();
  TestHooks hooks;
  auto first = fwd.onInterest(1, interestFor(5, 1), 0us, hooks);
  REQUIRE(find<action::Forward>(first) != nullptr);
  CHECK(find<action::Forward>(first)->face == upstreamFace);
  auto second = fwd.onInterest(2, interestFor(5, 2), 1ms, hooks);
  CHECK(find<action::Forward>(second) == nullptr);
  auto* agg = find<action::Aggregate>(second);
  REQUIRE(agg);
  CHECK(agg->downstreamCount == 2);
  CHECK(fwd.pit().find(FirmwareName::chunk(base, 5))->downstreamFaces.size() == 2);
}

TEST_CASE("on_interest: duplicate nonce is a loop")
{
  auto fwd = routedForwarder();
  TestHooks hooks;
  fwd.onInterest(1, interestFor(5, 42), 0us, hooks);
  auto out = fwd.onInterest(2, interestFor(5, 42), 0us, hooks);
  REQUIRE(find<action::Drop>(out) != nullptr);
  CHECK(std::string(toString(find<action::Drop>(out)->reason)) == toString(DropReason::Loop));
}

TEST_CASE("on_interest: cascading denial leaves no state")
{
  auto fwd = routedForwarder();
  TestHooks hooks;
  hooks.deny = true;
  fwd.cs().insert(dataFor(6), 0us);
  auto out = fwd.onInterest(1, interestFor(6, 1), 0us, hooks);
  REQUIRE(out.size() == 1);
  CHECK(find<action::DenyCascading>(out) != nullptr);
  CHECK(fwd.pit().size() == 0);
}

TEST_CASE("on_interest: no route drops, or Nacks when enabled")
{
  Forwarder plain;
  TestHooks hooks;
  auto out = plain.onInterest(1, interestFor(0, 1), 0us, hooks);
  REQUIRE(find<action::Drop>(out) != nullptr);
  CHECK(std::string(toString(find<action::Drop>(out)->reason)) == toString(DropReason::NoRoute));

  ForwarderConfig cfg;
  cfg.nacks = true;
  Forwarder nacking(cfg);
  out = nacking.onInterest(1, interestFor(0, 1), 0us, hooks);
  REQUIRE(find<action::ServeNack>(out) != nullptr);
  CHECK(find<action::ServeNack>(out)->face == 1u);
  CHECK(nacking.pit().size() == 0);
}

TEST_CASE("on_interest: full PIT drops")
{
  ForwarderConfig cfg;
  cfg.pitCapacity = 2;
  auto fwd = routedForwarder(cfg);
  TestHooks hooks;
  fwd.onInterest(1, interestFor(0, 1), 0us, hooks);
  fwd.onInterest(1, interestFor(1, 2), 0us, hooks);
  auto out = fwd.onInterest(1, interestFor(2, 3), 0us, hooks);
  REQUIRE(find<action::Drop>(out) != nullptr);
  CHECK(std::string(toString(find<action::Drop>(out)->reason)) == toString(DropReason::PitFull));
}

TEST_CASE("FIB longest-prefix match")
{
  Fib fib;
  CHECK_FALSE(fib.lookup(FirmwareName::manifest(base)));
  fib.addRoute({"iotlab"}, 1);
  fib.addRoute({"iotlab", "haw"}, 2);
  fib.addRoute({"iotlab", "haw", "other"}, 3);
  CHECK(fib.lookup(FirmwareName::manifest(base)) == 2u);
  CHECK(fib.lookup(FirmwareName::manifest({{"iotlab", "x", "y"}, 1})) == 1u);
  CHECK_FALSE(fib.lookup(FirmwareName::manifest({{"lab", "x", "y"}, 1})));
  fib.setDefaultRoute(9);
  CHECK(fib.lookup(FirmwareName::manifest({{"lab", "x", "y"}, 1})) == 9u);
  CHECK(fib.lookup(FirmwareName::manifest(base)) == 2u);
}

TEST_CASE("on_data: two faces and a local consumer")
{
  auto fwd = routedForwarder();
  TestHooks hooks;
  fwd.onInterest(1, interestFor(8, 1), 0us, hooks);
  fwd.onInterest(2, interestFor(8, 2), 0us, hooks);
  fwd.expressInterest(77, interestFor(8, 3), 0us, hooks);
  auto out = fwd.onData(upstreamFace, dataFor(8), 1ms, hooks);
  auto* down = find<action::ForwardDownstream>(out);
  REQUIRE(down);
  CHECK(down->faces == std::vector<FaceId>{1, 2});
  auto* local = find<action::DeliverLocal>(out);
  REQUIRE(local);
  CHECK(local->consumers == std::vector<ConsumerId>{77});
  CHECK(find<action::CacheInsert>(out) != nullptr);
  CHECK(fwd.cs().contains(dataFor(8).name));
  CHECK(fwd.pit().size() == 0);
}

TEST_CASE("on_data: Data for a local consumer only is not cached")
{
  auto fwd = routedForwarder();
  TestHooks hooks;
  fwd.expressInterest(1, interestFor(8, 3), 0us, hooks);
  auto out = fwd.onData(upstreamFace, dataFor(8), 1ms, hooks);
  CHECK(find<action::DeliverLocal>(out) != nullptr);
  CHECK(find<action::CacheInsert>(out) == nullptr);
  CHECK(fwd.cs().size() == 0);
}

TEST_CASE("on_data: unsolicited Data diverts or drops")
{
  auto fwd = routedForwarder();
  TestHooks hooks;
  hooks.divertAbove = 10;
  auto diverted = fwd.onData(upstreamFace, dataFor(12), 0us, hooks);
  CHECK(find<action::DivertToBuffer>(diverted) != nullptr);
  auto old = fwd.onData(upstreamFace, dataFor(3), 0us, hooks);
  REQUIRE(find<action::Drop>(old) != nullptr);
  CHECK(std::string(toString(find<action::Drop>(old)->reason)) == toString(DropReason::Unsolicited));
  hooks.divertAbove.reset();
  auto idle = fwd.onData(upstreamFace, dataFor(12), 0us, hooks);
  CHECK(find<action::Drop>(idle) != nullptr);
  CHECK(fwd.cs().size() == 0);
}

TEST_CASE("implicit registration on forwarded Interests")
{
  auto fwd = routedForwarder();
  TestHooks hooks;
  hooks.registerAs = 5;
  auto out = fwd.onInterest(1, Interest{FirmwareName::manifest(base), 1}, 0us, hooks);
  CHECK(find<action::Forward>(out) != nullptr);
  REQUIRE(find<action::RegisterLocal>(out) != nullptr);
  auto delivered = fwd.onData(upstreamFace, Data{FirmwareName::manifest(base), {1}, ManifestSignature{}},
                              1ms, hooks);
  REQUIRE(find<action::DeliverLocal>(delivered) != nullptr);
  CHECK(find<action::DeliverLocal>(delivered)->consumers == std::vector<ConsumerId>{5});
  CHECK(find<action::ForwardDownstream>(delivered)->faces == std::vector<FaceId>{1});
}

TEST_CASE("tick_retransmissions schedule")
{
  auto fwd = routedForwarder();
  TestHooks hooks;
  fwd.expressInterest(1, interestFor(1, 11), 0us, hooks);
  std::vector<Timestamp> retx;
  std::set<uint32_t> nonces{11};
  std::optional<Timestamp> expiry;
  std::vector<ConsumerId> notified;
  for (Timestamp t = 0us; t <= 10s; t += 100ms) {
    auto r = fwd.tickRetransmissions(t);
    for (const auto& f : r.retransmissions) {
      retx.push_back(t);
      CHECK(f.face == upstreamFace);
      nonces.insert(f.interest.nonce);
    }
    if (!r.expired.empty()) {
      expiry = t;
      notified = r.expired.front().consumers;
    }
  }
  CHECK(retx == std::vector<Timestamp>{2s, 4s, 6s});
  CHECK(nonces.size() == 4);
  CHECK(expiry == Timestamp(8s));
  CHECK(notified == std::vector<ConsumerId>{1});
  CHECK(fwd.pit().size() == 0);
}

TEST_CASE("tick_retransmissions: satisfied before the timer")
{
  auto fwd = routedForwarder();
  TestHooks hooks;
  fwd.expressInterest(1, interestFor(1, 11), 0us, hooks);
  fwd.onData(upstreamFace, dataFor(1), 1500ms, hooks);
  for (Timestamp t = 0us; t <= 10s; t += 100ms) {
    auto r = fwd.tickRetransmissions(t);
    CHECK(r.retransmissions.empty());
    CHECK(r.expired.empty());
  }
}

TEST_CASE("tick_retransmissions orders by deadline then name")
{
  auto fwd = routedForwarder();
  TestHooks hooks;
  fwd.expressInterest(1, interestFor(9, 1), 0us, hooks);
  fwd.expressInterest(1, interestFor(2, 2), 0us, hooks);
  fwd.expressInterest(1, interestFor(5, 3), 100ms, hooks);
  auto r = fwd.tickRetransmissions(3s);
  REQUIRE(r.retransmissions.size() == 3);
  CHECK(r.retransmissions[0].interest.name.chunkId() == 2u);
  CHECK(r.retransmissions[1].interest.name.chunkId() == 9u);
  CHECK(r.retransmissions[2].interest.name.chunkId() == 5u);

  // replaying the same schedule with the same nonce seed is bit-identical
  auto replay = routedForwarder();
  replay.expressInterest(1, interestFor(9, 1), 0us, hooks);
  replay.expressInterest(1, interestFor(2, 2), 0us, hooks);
  replay.expressInterest(1, interestFor(5, 3), 100ms, hooks);
  auto again = replay.tickRetransmissions(3s);
  for (size_t i = 0; i < 3; ++i) {
    CHECK(again.retransmissions[i].interest.nonce == r.retransmissions[i].interest.nonce);
  }
}

TEST_CASE("on_nack propagates to downstream and local consumers")
{
  auto fwd = routedForwarder();
  TestHooks hooks;
  fwd.onInterest(1, interestFor(3, 1), 0us, hooks);
  fwd.expressInterest(4, interestFor(3, 2), 0us, hooks);
  auto out = fwd.onNack(upstreamFace, Nack{FirmwareName::chunk(base, 3)}, 1ms);
  CHECK(find<action::NackDownstream>(out)->faces == std::vector<FaceId>{1});
  CHECK(find<action::NackLocal>(out)->consumers == std::vector<ConsumerId>{4});
  CHECK(fwd.pit().size() == 0);
}

TEST_CASE("cs_insert examples")
{
  ContentStore cs(64);
  for (uint64_t i = 0; i < 64; ++i) {
    CHECK_FALSE(cs.insert(dataFor(i), Timestamp(i)));
  }
  CHECK(cs.size() == 64);
  CHECK_FALSE(cs.insert(dataFor(10), 100us));
  auto evicted = cs.insert(dataFor(64), 101us);
  REQUIRE(evicted);
  CHECK(evicted->chunkId() == 0u);

  // the refreshed entry survives the next eviction
  evicted = cs.insert(dataFor(65), 102us);
  CHECK(evicted->chunkId() == 1u);
  CHECK(cs.contains(dataFor(10).name));

  const Data* hit = cs.find(dataFor(20).name, 103us);
  REQUIRE(hit);
  CHECK(hit->payload == dataFor(20).payload);
}

TEST_CASE("property: CS matches a reference LRU under random operations")
{
  std::mt19937_64 rng(17);
  for (int round = 0; round < 200; ++round) {
    size_t capacity = 1 + rng() % 8;
    ContentStore cs(capacity);
    std::vector<uint64_t> ref; // front = least recently used
    for (int op = 0; op < 200; ++op) {
      uint64_t key = rng() % 12;
      Timestamp now(op);
      auto it = std::find(ref.begin(), ref.end(), key);
      if (rng() % 2 == 0) {
        std::optional<uint64_t> expected;
        if (it != ref.end()) {
          ref.erase(it);
        }
        else if (ref.size() == capacity) {
          expected = ref.front();
          ref.erase(ref.begin());
        }
        ref.push_back(key);
        auto evicted = cs.insert(dataFor(key, static_cast<uint8_t>(key)), now);
        CHECK((evicted ? evicted->chunkId() : std::nullopt) == expected);
      }
      else {
        const Data* hit = cs.find(dataFor(key).name, now);
        CHECK((hit != nullptr) == (it != ref.end()));
        if (hit != nullptr) {
          CHECK(hit->payload == dataFor(key, static_cast<uint8_t>(key)).payload);
          ref.erase(it);
          ref.push_back(key);
        }
      }
      REQUIRE(cs.size() == ref.size());
      auto order = cs.lruOrder();
      for (size_t i = 0; i < ref.size(); ++i) {
        CHECK(order[i].chunkId() == ref[i]);
      }
    }
  }
}

TEST_CASE("property: PIT entries exist only while pending and never lack a requester")
{
  std::mt19937_64 rng(23);
  auto fwd = routedForwarder();
  TestHooks hooks;
  uint32_t nonce = 1;
  for (int step = 0; step < 3000; ++step) {
    Timestamp now = std::chrono::milliseconds(step * 10);
    uint64_t key = rng() % 20;
    switch (rng() % 4) {
      case 0:
        fwd.onInterest(static_cast<FaceId>(1 + rng() % 3), interestFor(key, nonce++), now, hooks);
        break;
      case 1:
        fwd.expressInterest(static_cast<ConsumerId>(rng() % 2), interestFor(key, nonce++), now, hooks);
        break;
      case 2:
        fwd.onData(upstreamFace, dataFor(key), now, hooks);
        CHECK(fwd.pit().find(dataFor(key).name) == nullptr);
        break;
      default:
        fwd.tickRetransmissions(now);
    }
    CHECK(fwd.pit().size() <= fwd.pit().capacity());
    for (const auto& [name, entry] : fwd.pit().entries()) {
      CHECK(!(entry.downstreamFaces.empty() && entry.localConsumers.empty()));
      CHECK(entry.retxBudget >= 0);
      CHECK(entry.nextRetxAt > now - fwd.config().retxInterval);
    }
  }
}
