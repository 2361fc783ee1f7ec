#include "ndnfw/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>

namespace ndnfw {

double
uniform01(Rng& rng)
{
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

uint64_t
uniformUpTo(Rng& rng, uint64_t bound)
{
  if (bound == std::numeric_limits<uint64_t>::max()) {
    return rng();
  }
  return rng() % (bound + 1);
}

Timestamp
airtime(const LinkModel& link, size_t frameBytes)
{
  if (frameBytes > link.mtu) {
    throw MtuExceeded(frameBytes, link.mtu);
  }
  auto bits = static_cast<uint64_t>(frameBytes) * 8;
  auto us = (bits * 1000000 + link.bandwidthBps - 1) / link.bandwidthBps;
  return Timestamp(static_cast<int64_t>(us)) + link.macOverhead;
}

Timestamp
backoffDelay(const LinkModel& link, int attempt, Rng& rng)
{
  auto window = static_cast<uint64_t>(link.backoffSlot.count()) << attempt;
  return Timestamp(static_cast<int64_t>(uniformUpTo(rng, window)));
}

size_t
fragmentCount(const LinkModel& link, size_t packetBytes)
{
  if (packetBytes + link.linkHeaderBytes <= link.mtu) {
    return 1;
  }
  size_t room = link.mtu - link.linkHeaderBytes - link.fragmentHeaderBytes;
  return (packetBytes + room - 1) / room;
}

TransmitOutcome
transmit(const LinkModel& link, size_t frameBytes, Timestamp now, Rng& rng)
{
  Timestamp air = airtime(link, frameBytes);
  TransmitOutcome out;
  out.at = now;
  for (int k = 0; k <= link.maxRetries; ++k) {
    out.at += backoffDelay(link, k, rng) + air;
    ++out.attempts;
    if (uniform01(rng) >= link.lossProb) {
      out.delivered = true;
      out.at += link.propagationDelay;
      return out;
    }
  }
  return out;
}

namespace {

constexpr ConsumerId agentConsumer = 1;

uint64_t
splitmix64(uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t
seedFor(uint64_t seed, std::string_view purpose)
{
  Bytes material(purpose.begin(), purpose.end());
  auto digest = sha256(material);
  uint64_t h = 0;
  for (int i = 0; i < 8; ++i) {
    h = (h << 8) | digest[i];
  }
  return splitmix64(seed ^ h);
}

Bytes
randomImage(uint64_t seed, std::string_view purpose, uint64_t size)
{
  Rng rng(seedFor(seed, purpose));
  Bytes out(size);
  for (size_t i = 0; i < size; i += 8) {
    uint64_t word = rng();
    for (size_t j = i; j < std::min<size_t>(i + 8, size); ++j) {
      out[j] = static_cast<uint8_t>(word);
      word >>= 8;
    }
  }
  return out;
}

Bytes
toBytes(std::string_view text)
{
  return Bytes(text.begin(), text.end());
}

template<class... Ts>
struct Overloaded : Ts...
{
  using Ts::operator()...;
};
template<class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

struct Event
{
  Timestamp at;
  uint64_t seq;
  std::function<void()> fn;
};

struct EventAfter
{
  bool
  operator()(const Event& a, const Event& b) const
  {
    return a.at != b.at ? a.at > b.at : a.seq > b.seq;
  }
};

struct OutFrame
{
  NodeId to;
  Packet packet;
  size_t packetBytes;
  size_t fragments;
};

struct Inbound
{
  NodeId from;
  Packet packet;
  bool overheard;
};

struct Attempt
{
  uint64_t id;
  NodeId link;
  Timestamp start;
  Timestamp end;
};

} // namespace

struct Simulator::Impl
{
  struct Node : LocalHooks
  {
    Impl* sim = nullptr;
    NodeId id = 0;
    std::string label;
    Forwarder fwd;
    std::optional<UpdateAgent> agent;

    std::deque<OutFrame> txQueue;
    bool radioBusy = false;
    int attempt = 0;
    size_t fragment = 0;

    std::deque<Inbound> cpuQueue;
    bool cpuBusy = false;

    std::optional<Timestamp> retxTimerAt;
    std::optional<Timestamp> wakeAt;
    bool done = false;

    explicit Node(const ForwarderConfig& config)
      : fwd(config)
    {
    }

    bool
    deniesInterest(const Interest& interest) override
    {
      return agent && agent->deniesChunk(interest);
    }

    std::optional<Data>
    produce(const Interest& interest) override
    {
      if (!agent) {
        return sim->produceFromRepository(interest);
      }
      if (interest.name.isManifest()) {
        return agent->serveManifest(interest);
      }
      return agent->serveChunk(interest);
    }

    std::optional<ConsumerId>
    onForward(const Interest& interest) override
    {
      if (agent && agent->implicitDiscovery(interest)) {
        sim->drain(*this);
        return agentConsumer;
      }
      return std::nullopt;
    }

    bool
    wantsDiversion(const Data& data) override
    {
      return agent && agent->wantsChunk(data);
    }
  };

  Scenario sc;
  Repository repo;
  PacketSizeModel sizes;
  uint64_t releaseEpoch = 0;
  std::vector<Bytes> images;
  std::map<std::string, Release> staleReleases;
  std::vector<std::unique_ptr<Node>> nodes;

  std::vector<Event> heap;
  uint64_t nextSeq = 0;
  Timestamp now{0};
  bool stopped = false;
  size_t remaining = 0;
  Rng rng;
  Rng attackRng;

  std::vector<std::vector<bool>> interferes;
  std::vector<std::vector<NodeId>> groupsOfLink;
  std::vector<Timestamp> busyUntil;
  std::deque<Attempt> active;
  uint64_t nextAttemptId = 0;
  Timestamp maxAirtime{0};
  MediumStats medium;

  std::vector<MetricsRecord> records;

  explicit Impl(Scenario scenario)
    : sc(std::move(scenario))
    , rng(seedFor(sc.seed, "medium"))
    , attackRng(seedFor(sc.seed, "attacker"))
  {
    sc.validate();
    sizes = PacketSizeModel{};
    releaseEpoch = sc.releaseEpoch();
    uint64_t period = static_cast<uint64_t>(sc.granularity.period);
    uint64_t factoryEpoch = releaseEpoch >= period ? releaseEpoch - period : 0;

    Vendor vendor(sc.deployment, sc.vendor, SigningKey::fromPassphrase(toBytes("vendor/" + sc.vendor)),
                  sc.tagLength);
    const size_t n = sc.topology.size();
    images.resize(n);
    std::map<std::string, Bytes> releaseImages;
    std::map<std::string, Bytes> factoryImages;
    for (NodeId id = 1; id < n; ++id) {
      auto cls = sc.classOf(id);
      if (releaseImages.count(cls) == 0) {
        auto psk = sha256(toBytes("psk/" + cls));
        vendor.setPsk(cls, Bytes(psk.begin(), psk.end()));
        auto image = randomImage(sc.seed, "image/" + cls, sc.imageSize);
        auto factory = randomImage(sc.seed, "factory/" + cls, sc.imageSize);
        auto release = vendor.prepare({image, cls, releaseEpoch}, sc.chunkSize);
        repo.publish(release.manifest, release.chunks);
        auto stale = vendor.prepare({factory, cls, factoryEpoch}, sc.chunkSize);
        repo.publish(stale.manifest, stale.chunks);
        staleReleases.emplace(cls, std::move(stale));
        releaseImages.emplace(cls, std::move(image));
        factoryImages.emplace(cls, std::move(factory));
      }
      images[id] = releaseImages.at(cls);
    }

    for (NodeId id = 0; id < n; ++id) {
      ForwarderConfig fc;
      fc.csCapacity = sc.node.csCapacity;
      fc.pitCapacity = sc.node.pitCapacity;
      fc.retxBudget = sc.node.netRetxBudget;
      fc.retxInterval = sc.node.netRetxInterval;
      fc.nacks = sc.node.nacks;
      fc.nonceSeed = seedFor(sc.seed, "nonce/" + std::to_string(id));
      auto node = std::make_unique<Node>(fc);
      node->sim = this;
      node->id = id;
      node->label = sc.topology.label(id);
      if (auto parent = sc.topology.parent(id)) {
        node->fwd.fib().setDefaultRoute(*parent);
        auto cls = sc.classOf(id);
        AgentConfig ac;
        ac.identity = {sc.deployment, sc.vendor, cls};
        ac.strategy = sc.strategy;
        ac.granularity = sc.granularity;
        ac.psk = vendor.psk(cls);
        ac.vendorKey = vendor.publicKey();
        ac.tagLength = sc.tagLength;
        ac.appRetxBase = sc.node.appRetxBase;
        ac.appRetxJitter = sc.node.appRetxJitter;
        ac.maxTagFailures = sc.node.maxTagFailures;
        ac.digestRetries = sc.node.digestRetries;
        ac.flashWriteLatency = sc.node.flashWriteLatency;
        ac.rngSeed = seedFor(sc.seed, "agent/" + std::to_string(id));
        node->agent.emplace(std::move(ac),
                            InstalledFirmware{factoryImages.at(cls), factoryEpoch, std::nullopt,
                                              std::nullopt});
        ++remaining;
      }
      nodes.push_back(std::move(node));
    }

    interferes.assign(n, std::vector<bool>(n, false));
    groupsOfLink.assign(n, {});
    for (NodeId a = 1; a < n; ++a) {
      for (NodeId b = 1; b < n; ++b) {
        interferes[a][b] = sc.topology.linksInterfere(a, b);
      }
      NodeId p = *sc.topology.parent(a);
      for (NodeId v = 0; v < n; ++v) {
        if (sc.topology.hopDistance(v, a) <= 1 || sc.topology.hopDistance(v, p) <= 1) {
          groupsOfLink[a].push_back(v);
        }
      }
    }
    busyUntil.assign(n, Timestamp{0});
    medium.groupBusy.assign(n, Timestamp{0});
    maxAirtime = airtime(sc.link, sc.link.mtu);
  }

  // event queue

  void
  schedule(Timestamp at, std::function<void()> fn)
  {
    heap.push_back({at, nextSeq++, std::move(fn)});
    std::push_heap(heap.begin(), heap.end(), EventAfter{});
  }

  void
  loop()
  {
    while (!heap.empty() && !stopped) {
      std::pop_heap(heap.begin(), heap.end(), EventAfter{});
      Event ev = std::move(heap.back());
      heap.pop_back();
      if (ev.at >= sc.duration) {
        break;
      }
      now = ev.at;
      ev.fn();
    }
  }

  // metrics

  void
  record(const Node& n, MetricEvent event, std::optional<uint64_t> chunk, std::string detail = {})
  {
    records.push_back({now, n.label, event, chunk, std::move(detail)});
  }

  void
  drain(Node& n)
  {
    for (auto& e : n.agent->drainEvents()) {
      MetricEvent kind = MetricEvent::PhaseChange;
      switch (e.kind) {
        case AgentEventKind::InterestSent:
          kind = MetricEvent::InterestSent;
          break;
        case AgentEventKind::AppRetx:
          kind = MetricEvent::AppRetx;
          break;
        case AgentEventKind::PhaseChange:
          kind = MetricEvent::PhaseChange;
          break;
        case AgentEventKind::ChunkStored:
          kind = MetricEvent::DataRecv;
          break;
        case AgentEventKind::TagFail:
          kind = MetricEvent::TagFail;
          break;
        case AgentEventKind::Abort:
          kind = MetricEvent::Abort;
          break;
        case AgentEventKind::InstallComplete:
          kind = MetricEvent::InstallComplete;
          break;
      }
      record(n, kind, e.chunk, std::move(e.detail));
    }
  }

  // gateway

  std::optional<Data>
  produceFromRepository(const Interest& interest)
  {
    const auto& name = interest.name;
    if (name.isManifest()) {
      if (auto m = repo.manifest(name.base())) {
        return Data{name, m->encodeBody(),
                    ManifestSignature{Bytes(m->signature.begin(), m->signature.end())}};
      }
    }
    else if (name.isChunk()) {
      if (auto c = repo.chunk(name.base(), *name.chunkId())) {
        return Data{name, std::move(c->payload), HmacTag{std::move(c->tag)}};
      }
    }
    return std::nullopt;
  }

  // agent driving

  void
  poll(Node& n)
  {
    if (n.done) {
      return;
    }
    uint64_t wall = sc.wallClockStart + static_cast<uint64_t>(now / 1s);
    if (auto interest = n.agent->pollVersion(now, wall)) {
      drain(n);
      express(n, *interest);
    }
    drain(n);
    schedule(now + sc.node.pollPeriod, [this, &n] { poll(n); });
  }

  void
  express(Node& n, const Interest& interest)
  {
    auto actions = n.fwd.expressInterest(agentConsumer, interest, now, n);
    bool dropped = std::any_of(actions.begin(), actions.end(), [](const Action& a) {
      return std::holds_alternative<action::Drop>(a);
    });
    execute(n, actions);
    if (dropped) {
      n.agent->onTimeout(interest.name, now);
      pump(n);
    }
    armRetx(n);
  }

  void
  wake(Node& n)
  {
    if (!n.wakeAt || *n.wakeAt != now) {
      return;
    }
    n.wakeAt.reset();
    if (auto interest = n.agent->nextRequest(now)) {
      drain(n);
      express(n, *interest);
    }
    pump(n);
  }

  void
  pump(Node& n)
  {
    auto& agent = *n.agent;
    if (agent.phase() == Phase::VerifyingImage) {
      agent.finalize(now);
    }
    drain(n);
    if (agent.phase() == Phase::Fetching && !agent.state().outstanding) {
      Timestamp at = std::max(now, agent.state().nextRequestAt);
      if (!n.wakeAt || *n.wakeAt > at) {
        n.wakeAt = at;
        schedule(at, [this, &n] { wake(n); });
      }
    }
    const auto& st = agent.state();
    if (!n.done && (st.installed.epoch >= releaseEpoch || st.abortedEpochs.count(releaseEpoch))) {
      n.done = true;
      if (--remaining == 0) {
        stopped = true;
      }
    }
  }

  void
  deliverLocal(Node& n, const Data& data)
  {
    if (data.name.isManifest()) {
      n.agent->onManifest(data, now);
    }
    else if (data.name.isChunk()) {
      auto source = n.agent->state().outstanding == data.name.chunkId() ? ChunkSource::Requested
                                                                         : ChunkSource::Diverted;
      n.agent->onChunk(data, now, source);
    }
    pump(n);
  }

  void
  execute(Node& n, const ActionList& actions)
  {
    for (const auto& act : actions) {
      std::visit(Overloaded{
                   [&](const action::ServeData& a) { send(n, a.face, a.data); },
                   [&](const action::ServeNack& a) { send(n, a.face, a.nack); },
                   [&](const action::Forward& a) { send(n, a.face, a.interest); },
                   [&](const action::ForwardDownstream& a) {
                     for (FaceId f : a.faces) {
                       send(n, f, a.data);
                     }
                   },
                   [&](const action::NackDownstream& a) {
                     for (FaceId f : a.faces) {
                       send(n, f, a.nack);
                     }
                   },
                   [&](const action::DeliverLocal& a) {
                     if (n.agent) {
                       deliverLocal(n, a.data);
                     }
                   },
                   [&](const action::DivertToBuffer& a) {
                     if (n.agent) {
                       n.agent->onChunk(a.data, now, ChunkSource::Diverted);
                       pump(n);
                     }
                   },
                   [&](const action::NackLocal& a) {
                     if (n.agent) {
                       n.agent->onTimeout(a.nack.name, now);
                       pump(n);
                     }
                   },
                   [](const auto&) {},
                 },
                 act);
    }
  }

  void
  armRetx(Node& n)
  {
    auto deadline = n.fwd.nextRetxDeadline();
    if (!deadline || (n.retxTimerAt && *n.retxTimerAt <= *deadline)) {
      return;
    }
    n.retxTimerAt = *deadline;
    schedule(*deadline, [this, &n] { retxTick(n); });
  }

  void
  retxTick(Node& n)
  {
    if (!n.retxTimerAt || *n.retxTimerAt != now) {
      return;
    }
    n.retxTimerAt.reset();
    auto result = n.fwd.tickRetransmissions(now);
    for (auto& f : result.retransmissions) {
      record(n, MetricEvent::NetRetx, f.interest.name.chunkId(),
             "to=" + nodes[f.face]->label);
      send(n, f.face, std::move(f.interest));
    }
    for (const auto& expiry : result.expired) {
      if (n.agent && !expiry.consumers.empty()) {
        n.agent->onTimeout(expiry.name, now);
        pump(n);
      }
    }
    armRetx(n);
  }

  // packet processing

  void
  arrive(NodeId to, NodeId from, Packet packet, bool overheard)
  {
    Node& n = *nodes[to];
    n.cpuQueue.push_back({from, std::move(packet), overheard});
    if (!n.cpuBusy) {
      n.cpuBusy = true;
      schedule(now + sc.node.processingDelay, [this, &n] { process(n); });
    }
  }

  void
  process(Node& n)
  {
    Inbound in = std::move(n.cpuQueue.front());
    n.cpuQueue.pop_front();
    ActionList actions;
    if (auto* interest = std::get_if<Interest>(&in.packet)) {
      actions = n.fwd.onInterest(in.from, *interest, now, n);
    }
    else if (auto* data = std::get_if<Data>(&in.packet)) {
      actions = in.overheard ? n.fwd.onOverheardData(*data, n) : n.fwd.onData(in.from, *data, now, n);
    }
    else {
      actions = n.fwd.onNack(in.from, std::get<Nack>(in.packet), now);
    }
    execute(n, actions);
    armRetx(n);
    if (n.cpuQueue.empty()) {
      n.cpuBusy = false;
    }
    else {
      schedule(now + sc.node.processingDelay, [this, &n] { process(n); });
    }
  }

  // radio

  NodeId
  linkOf(NodeId a, NodeId b) const
  {
    return sc.topology.parent(a) == b ? a : b;
  }

  bool
  severed(NodeId link) const
  {
    return std::any_of(sc.outages.begin(), sc.outages.end(),
                       [&](const Outage& o) { return o.edge == link && now >= o.at; });
  }

  void
  send(Node& n, NodeId to, Packet packet)
  {
    if (n.txQueue.size() >= sc.link.queueCapacity) {
      return;
    }
    size_t bytes = sizes.size(packet);
    n.txQueue.push_back({to, std::move(packet), bytes, fragmentCount(sc.link, bytes)});
    if (!n.radioBusy) {
      startFrame(n);
    }
  }

  void
  startFrame(Node& n)
  {
    if (n.txQueue.empty()) {
      n.radioBusy = false;
      return;
    }
    n.radioBusy = true;
    n.attempt = 0;
    n.fragment = 0;
    scheduleAttempt(n);
  }

  void
  scheduleAttempt(Node& n)
  {
    schedule(now + backoffDelay(sc.link, n.attempt, rng), [this, &n] { beginAttempt(n); });
  }

  size_t
  frameBytes(const OutFrame& f, size_t fragment) const
  {
    if (f.fragments == 1) {
      return f.packetBytes + sc.link.linkHeaderBytes;
    }
    size_t room = sc.link.mtu - sc.link.linkHeaderBytes - sc.link.fragmentHeaderBytes;
    size_t len = std::min(room, f.packetBytes - fragment * room);
    return len + sc.link.linkHeaderBytes + sc.link.fragmentHeaderBytes;
  }

  void
  beginAttempt(Node& n)
  {
    const auto& f = n.txQueue.front();
    NodeId link = linkOf(n.id, f.to);
    Timestamp end = now + airtime(sc.link, frameBytes(f, n.fragment));
    uint64_t id = nextAttemptId++;
    active.push_back({id, link, now, end});
    ++medium.attempts;
    for (NodeId g : groupsOfLink[link]) {
      Timestamp from = std::max(now, busyUntil[g]);
      if (end > from) {
        medium.groupBusy[g] += end - from;
      }
      busyUntil[g] = std::max(busyUntil[g], end);
    }
    schedule(end, [this, &n, id] { endAttempt(n, id); });
  }

  void
  endAttempt(Node& n, uint64_t attemptId)
  {
    auto self = std::find_if(active.begin(), active.end(),
                             [&](const Attempt& a) { return a.id == attemptId; });
    const Attempt mine = *self;
    int overlaps = 0;
    for (const auto& other : active) {
      if (other.id != mine.id && other.start < mine.end && other.end > mine.start &&
          interferes[mine.link][other.link]) {
        ++overlaps;
      }
    }
    while (!active.empty() && active.front().end + maxAirtime < now) {
      active.pop_front();
    }
    if (overlaps > 0) {
      ++medium.overlappedAttempts;
    }

    double success = (1.0 - sc.link.lossProb) * std::pow(1.0 - sc.link.collisionPenalty, overlaps);
    double draw = uniform01(rng);
    bool ok = draw < success && !severed(mine.link);

    auto& f = n.txQueue.front();
    if (ok) {
      if (++n.fragment < f.fragments) {
        n.attempt = 0;
        scheduleAttempt(n);
        return;
      }
      deliver(n, f, success);
      n.txQueue.pop_front();
      startFrame(n);
    }
    else if (n.attempt < sc.link.maxRetries) {
      ++n.attempt;
      record(n, MetricEvent::LinkRetx, packetName(f.packet).chunkId(),
             "to=" + nodes[f.to]->label + ";attempt=" + std::to_string(n.attempt + 1));
      scheduleAttempt(n);
    }
    else {
      n.txQueue.pop_front();
      startFrame(n);
    }
  }

  void
  deliver(Node& sender, const OutFrame& f, double success)
  {
    Packet packet = f.packet;
    NodeId link = linkOf(sender.id, f.to);
    if (auto* data = std::get_if<Data>(&packet); data != nullptr && data->name.isChunk()) {
      for (const auto& attacker : sc.attackers) {
        if (attacker.edge == link && uniform01(attackRng) < attacker.rate) {
          tamper(*data, attacker.mode);
        }
      }
    }
    NodeId to = f.to;
    NodeId from = sender.id;
    schedule(now + sc.link.propagationDelay,
             [this, to, from, packet] { arrive(to, from, packet, false); });

    const auto* data = std::get_if<Data>(&f.packet);
    if (!sc.link.overhearing || data == nullptr || !data->name.isChunk() || f.fragments != 1) {
      return;
    }
    for (NodeId v : sc.topology.neighbors(sender.id)) {
      if (v == to) {
        continue;
      }
      bool heard = uniform01(rng) < success && !severed(linkOf(sender.id, v));
      if (heard && nodes[v]->agent && nodes[v]->agent->wantsChunk(*data)) {
        Data copy = *data;
        schedule(now + sc.link.propagationDelay,
                 [this, v, from, copy] { arrive(v, from, copy, true); });
      }
    }
  }

  void
  tamper(Data& data, AttackMode mode)
  {
    switch (mode) {
      case AttackMode::TamperPayload: {
        auto pos = uniformUpTo(attackRng, data.payload.size() - 1);
        data.payload[pos] ^= static_cast<uint8_t>(1 + uniformUpTo(attackRng, 254));
        break;
      }
      case AttackMode::ForgeTag: {
        auto& tag = std::get<HmacTag>(data.auth).bytes;
        for (auto& b : tag) {
          b = static_cast<uint8_t>(attackRng());
        }
        break;
      }
      case AttackMode::ReplayStale: {
        const auto& stale = staleReleases.at(data.name.identity().deviceClass);
        auto index = *data.name.chunkId();
        if (index < stale.chunks.size()) {
          data.payload = stale.chunks[index].payload;
          data.auth = HmacTag{stale.chunks[index].tag};
        }
        break;
      }
    }
  }

  SimResult
  run()
  {
    for (NodeId id = 1; id < nodes.size(); ++id) {
      Timestamp jitter(static_cast<int64_t>(uniformUpTo(rng, sc.node.pollJitter.count())));
      Node& n = *nodes[id];
      schedule(jitter, [this, &n] { poll(n); });
    }
    if (remaining == 0) {
      stopped = true;
    }
    loop();

    std::vector<std::string> labels;
    std::vector<unsigned> ranks;
    for (NodeId id = 0; id < nodes.size(); ++id) {
      labels.push_back(nodes[id]->label);
      ranks.push_back(sc.topology.rank(id));
    }
    SimResult result;
    result.summary = summarize(records, labels, ranks);
    result.summary.seed = sc.seed;
    result.summary.endTime = now;
    for (NodeId id = 1; id < nodes.size(); ++id) {
      const auto& installed = nodes[id]->agent->state().installed;
      result.summary.nodes[id].imageMatches =
        installed.epoch == releaseEpoch && installed.bytes == images[id];
    }
    result.records = records;
    return result;
  }
};

Simulator::Simulator(Scenario scenario)
  : m_impl(std::make_unique<Impl>(std::move(scenario)))
{
}

Simulator::~Simulator() = default;

SimResult
Simulator::run()
{
  return m_impl->run();
}

const Scenario&
Simulator::scenario() const noexcept
{
  return m_impl->sc;
}

const UpdateAgent*
Simulator::agent(NodeId id) const
{
  const auto& node = m_impl->nodes.at(id);
  return node->agent ? &*node->agent : nullptr;
}

const Bytes&
Simulator::releaseImage(NodeId id) const
{
  return m_impl->images.at(id);
}

const Repository&
Simulator::repository() const noexcept
{
  return m_impl->repo;
}

const MediumStats&
Simulator::medium() const noexcept
{
  return m_impl->medium;
}

SimResult
runScenario(const Scenario& scenario)
{
  return Simulator(scenario).run();
}

} // namespace ndnfw
