#include "ndnfw/scenario.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace ndnfw {

using json = nlohmann::json;

ScenarioInvalid::ScenarioInvalid(std::string field, const std::string& message, size_t line)
  : std::invalid_argument((line != 0 ? "line " + std::to_string(line) + ": " : std::string{}) +
                          (field.empty() ? std::string{} : field + ": ") + message)
  , m_field(std::move(field))
  , m_line(line)
{
}

const char*
toString(AttackMode mode)
{
  switch (mode) {
    case AttackMode::TamperPayload:
      return "tamper_payload";
    case AttackMode::ForgeTag:
      return "forge_tag";
    case AttackMode::ReplayStale:
      return "replay_stale";
  }
  return "?";
}

std::string
Scenario::classOf(NodeId id) const
{
  if (classes == ClassAssignment::Shared) {
    return deviceClass;
  }
  return deviceClass + "-" + topology.label(id);
}

namespace {

void
require(bool ok, const char* field, const std::string& message)
{
  if (!ok) {
    throw ScenarioInvalid(field, message);
  }
}

} // namespace

void
Scenario::validate() const
{
  require(topology.size() >= 2, "topology", "needs a gateway and at least one device");
  require(imageSize > 0, "image_size", "must be positive");
  require(imageSize <= AgentConfig{}.maxImageSize, "image_size", "exceeds the device image limit");
  require(chunkSize > 0, "chunk_size", "must be positive");
  require(isValidTagLength(tagLength), "tag_length", "must be 8, 16 or 32");
  require(duration.count() >= 0, "duration_s", "must not be negative");
  for (const auto& [field, value] : {std::pair{"naming.deployment", &deployment},
                                     std::pair{"naming.vendor", &vendor},
                                     std::pair{"naming.class", &deviceClass}}) {
    try {
      validateIdentifier(*value, field);
    }
    catch (const MalformedName& e) {
      throw ScenarioInvalid(field, e.what());
    }
  }
  require(releaseEpoch() > 0, "naming.wall_clock_start", "aligns to epoch 0");

  require(link.lossProb >= 0.0 && link.lossProb < 1.0, "link.loss_prob", "must be in [0, 1)");
  require(link.collisionPenalty >= 0.0 && link.collisionPenalty <= 1.0, "link.collision_penalty",
          "must be in [0, 1]");
  require(link.bandwidthBps > 0, "link.bandwidth_bps", "must be positive");
  require(link.propagationDelay.count() >= 0, "link.propagation_delay_us", "must not be negative");
  require(link.macOverhead.count() >= 0, "link.mac_overhead_us", "must not be negative");
  require(link.backoffSlot.count() >= 0, "link.backoff_slot_us", "must not be negative");
  require(link.maxRetries >= 0 && link.maxRetries <= 7, "link.max_retries", "must be in [0, 7]");
  require(link.mtu > link.linkHeaderBytes + link.fragmentHeaderBytes, "link.mtu",
          "leaves no room after link and fragment headers");
  require(link.queueCapacity >= 1, "link.queue_capacity", "must be at least 1");

  require(node.processingDelay.count() >= 0, "node.processing_delay_us", "must not be negative");
  require(node.flashWriteLatency.count() >= 0, "node.flash_write_us", "must not be negative");
  require(node.csCapacity >= 1, "node.cs_capacity", "must be at least 1");
  require(node.pitCapacity >= 1, "node.pit_capacity", "must be at least 1");
  require(node.netRetxBudget >= 0, "node.net_retx_budget", "must not be negative");
  require(node.netRetxInterval.count() > 0, "node.net_retx_interval_ms", "must be positive");
  require(node.pollPeriod.count() > 0, "node.poll_period_s", "must be positive");
  require(node.pollJitter.count() >= 0, "node.poll_jitter_ms", "must not be negative");
  require(node.appRetxJitter.count() >= 0, "node.app_retx_jitter_ms", "must not be negative");
  require(node.appRetxBase >= node.appRetxJitter, "node.app_retx_base_ms",
          "must not be smaller than the jitter");
  require(node.maxTagFailures >= 1, "node.max_tag_failures", "must be at least 1");
  require(node.digestRetries >= 0, "node.digest_retries", "must not be negative");

  for (const auto& a : attackers) {
    require(a.edge != 0 && a.edge < topology.size(), "attackers.edge", "must name a non-root node");
    require(a.rate >= 0.0 && a.rate <= 1.0, "attackers.rate", "must be in [0, 1]");
  }
  for (const auto& o : outages) {
    require(o.edge != 0 && o.edge < topology.size(), "outages.edge", "must name a non-root node");
    require(o.at.count() >= 0, "outages.at_s", "must not be negative");
  }
}

namespace {

Timestamp
fromUnits(double value, double perSecond)
{
  return Timestamp(static_cast<int64_t>(std::llround(value * 1e6 / perSecond)));
}

/// JSON reader that reports failures with field paths and source lines.
class Reader
{
public:
  explicit Reader(std::string_view text)
    : m_text(text)
  {
  }

  [[noreturn]] void
  fail(const std::string& path, const std::string& message) const
  {
    throw ScenarioInvalid(path, message, lineOf(path));
  }

  /// Rejects keys outside @p allowed.
  void
  checkKeys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) const
  {
    if (!obj.is_object()) {
      fail(path, "expected an object");
    }
    for (const auto& [key, value] : obj.items()) {
      bool known = false;
      for (const char* a : allowed) {
        known = known || key == a;
      }
      if (!known) {
        fail(join(path, key), "unknown field");
      }
    }
  }

  double
  number(const json& obj, const std::string& path, const char* key, double fallback) const
  {
    if (!obj.contains(key)) {
      return fallback;
    }
    const auto& v = obj.at(key);
    if (!v.is_number()) {
      fail(join(path, key), "expected a number");
    }
    return v.get<double>();
  }

  uint64_t
  count(const json& obj, const std::string& path, const char* key, uint64_t fallback) const
  {
    if (!obj.contains(key)) {
      return fallback;
    }
    const auto& v = obj.at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<int64_t>() >= 0)) {
      fail(join(path, key), "expected a non-negative integer");
    }
    return v.get<uint64_t>();
  }

  int64_t
  integer(const json& obj, const std::string& path, const char* key, int64_t fallback) const
  {
    if (!obj.contains(key)) {
      return fallback;
    }
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) {
      fail(join(path, key), "expected an integer");
    }
    return v.get<int64_t>();
  }

  bool
  boolean(const json& obj, const std::string& path, const char* key, bool fallback) const
  {
    if (!obj.contains(key)) {
      return fallback;
    }
    const auto& v = obj.at(key);
    if (!v.is_boolean()) {
      fail(join(path, key), "expected true or false");
    }
    return v.get<bool>();
  }

  std::string
  string(const json& obj, const std::string& path, const char* key, std::string fallback) const
  {
    if (!obj.contains(key)) {
      return fallback;
    }
    const auto& v = obj.at(key);
    if (!v.is_string()) {
      fail(join(path, key), "expected a string");
    }
    return v.get<std::string>();
  }

  Timestamp
  duration(const json& obj, const std::string& path, const char* key, double perSecond,
           Timestamp fallback) const
  {
    if (!obj.contains(key)) {
      return fallback;
    }
    double v = number(obj, path, key, 0);
    if (v < 0) {
      fail(join(path, key), "must not be negative");
    }
    return fromUnits(v, perSecond);
  }

  static std::string
  join(const std::string& path, const std::string& key)
  {
    return path.empty() ? key : path + "." + key;
  }

  /// Line of the first occurrence of the last path component as a key.
  size_t
  lineOf(const std::string& path) const
  {
    auto dot = path.rfind('.');
    std::string key = "\"" + (dot == std::string::npos ? path : path.substr(dot + 1)) + "\"";
    auto pos = m_text.find(key);
    if (pos == std::string_view::npos) {
      return 0;
    }
    return 1 + static_cast<size_t>(std::count(m_text.begin(), m_text.begin() + pos, '\n'));
  }

private:
  std::string_view m_text;
};

Topology
readTopology(const Reader& r, const json& value)
{
  try {
    if (value.is_string()) {
      auto preset = value.get<std::string>();
      if (preset == "paper") {
        return buildPaperTopology();
      }
      r.fail("topology", "unknown preset '" + preset + "'");
    }
    r.checkKeys(value, "topology", {"preset", "hops", "nodes"});
    if (value.contains("preset")) {
      auto preset = r.string(value, "topology", "preset", "");
      if (preset == "paper") {
        return buildPaperTopology();
      }
      if (preset == "line") {
        auto hops = r.count(value, "topology", "hops", 3);
        if (hops == 0) {
          r.fail("topology.hops", "must be positive");
        }
        return buildLineTopology(hops);
      }
      r.fail("topology.preset", "unknown preset '" + preset + "'");
    }
    if (!value.contains("nodes") || !value.at("nodes").is_array()) {
      r.fail("topology.nodes", "expected an array of {name, parent} objects");
    }
    std::vector<NodeSpec> specs;
    for (const auto& n : value.at("nodes")) {
      r.checkKeys(n, "topology.nodes", {"name", "parent"});
      specs.emplace_back(r.string(n, "topology.nodes", "name", ""),
                         r.string(n, "topology.nodes", "parent", ""));
    }
    return Topology::fromParents(specs);
  }
  catch (const TopologyInvalid& e) {
    r.fail("topology", e.what());
  }
}

NodeId
readEdge(const Reader& r, const json& obj, const std::string& path, const Topology& topo)
{
  auto label = r.string(obj, path, "edge", "");
  auto id = topo.find(label);
  if (!id || *id == 0) {
    r.fail(path + ".edge", "'" + label + "' is not a non-root node");
  }
  return *id;
}

} // namespace

Scenario
parseScenario(std::string_view text)
{
  Reader r(text);
  json doc;
  try {
    doc = json::parse(text);
  }
  catch (const json::parse_error& e) {
    size_t line = 1 + static_cast<size_t>(
                        std::count(text.begin(), text.begin() + std::min(e.byte, text.size()), '\n'));
    throw ScenarioInvalid("", std::string("syntax error: ") + e.what(), line);
  }

  r.checkKeys(doc, "", {"topology", "strategy", "device_classes", "image_size", "chunks",
                        "chunk_size", "tag_length", "seed", "duration_s", "naming", "link", "node",
                        "attackers", "outages"});
  Scenario s;
  if (doc.contains("topology")) {
    s.topology = readTopology(r, doc.at("topology"));
  }

  auto strategy = r.string(doc, "", "strategy", toString(s.strategy));
  if (auto parsed = parseStrategy(strategy)) {
    s.strategy = *parsed;
  }
  else {
    r.fail("strategy", "unknown strategy '" + strategy + "' (concurrent, cascading)");
  }

  auto classes = r.string(doc, "", "device_classes", "shared");
  if (classes == "shared") {
    s.classes = ClassAssignment::Shared;
  }
  else if (classes == "unique") {
    s.classes = ClassAssignment::Unique;
  }
  else {
    r.fail("device_classes", "unknown assignment '" + classes + "' (shared, unique)");
  }

  s.chunkSize = static_cast<uint32_t>(r.count(doc, "", "chunk_size", s.chunkSize));
  if (doc.contains("chunks") && doc.contains("image_size")) {
    r.fail("chunks", "give either chunks or image_size, not both");
  }
  if (doc.contains("chunks")) {
    s.imageSize = r.count(doc, "", "chunks", 0) * s.chunkSize;
  }
  s.imageSize = r.count(doc, "", "image_size", s.imageSize);
  s.tagLength = r.count(doc, "", "tag_length", s.tagLength);
  s.seed = r.count(doc, "", "seed", s.seed);
  s.duration = r.duration(doc, "", "duration_s", 1, s.duration);

  if (doc.contains("naming")) {
    const auto& n = doc.at("naming");
    r.checkKeys(n, "naming", {"deployment", "vendor", "class", "wall_clock_start", "period_s",
                              "offset_s"});
    s.deployment = r.string(n, "naming", "deployment", s.deployment);
    s.vendor = r.string(n, "naming", "vendor", s.vendor);
    s.deviceClass = r.string(n, "naming", "class", s.deviceClass);
    s.wallClockStart = r.count(n, "naming", "wall_clock_start", s.wallClockStart);
    try {
      s.granularity = Granularity(r.integer(n, "naming", "period_s", s.granularity.period),
                                  r.integer(n, "naming", "offset_s", s.granularity.offset));
    }
    catch (const std::invalid_argument& e) {
      r.fail("naming.period_s", e.what());
    }
  }

  if (doc.contains("link")) {
    const auto& l = doc.at("link");
    const std::string p = "link";
    r.checkKeys(l, p, {"loss_prob", "collision_penalty", "propagation_delay_us", "bandwidth_bps",
                       "mac_overhead_us", "backoff_slot_us", "max_retries", "mtu",
                       "link_header_bytes", "fragment_header_bytes", "queue_capacity",
                       "overhearing"});
    auto& m = s.link;
    m.lossProb = r.number(l, p, "loss_prob", m.lossProb);
    m.collisionPenalty = r.number(l, p, "collision_penalty", m.collisionPenalty);
    m.propagationDelay = r.duration(l, p, "propagation_delay_us", 1e6, m.propagationDelay);
    m.bandwidthBps = r.count(l, p, "bandwidth_bps", m.bandwidthBps);
    m.macOverhead = r.duration(l, p, "mac_overhead_us", 1e6, m.macOverhead);
    m.backoffSlot = r.duration(l, p, "backoff_slot_us", 1e6, m.backoffSlot);
    m.maxRetries = static_cast<int>(r.count(l, p, "max_retries", m.maxRetries));
    m.mtu = r.count(l, p, "mtu", m.mtu);
    m.linkHeaderBytes = r.count(l, p, "link_header_bytes", m.linkHeaderBytes);
    m.fragmentHeaderBytes = r.count(l, p, "fragment_header_bytes", m.fragmentHeaderBytes);
    m.queueCapacity = r.count(l, p, "queue_capacity", m.queueCapacity);
    m.overhearing = r.boolean(l, p, "overhearing", m.overhearing);
  }

  if (doc.contains("node")) {
    const auto& n = doc.at("node");
    const std::string p = "node";
    r.checkKeys(n, p, {"processing_delay_us", "flash_write_us", "cs_capacity", "pit_capacity",
                       "net_retx_budget", "net_retx_interval_ms", "nacks", "poll_period_s",
                       "poll_jitter_ms", "app_retx_base_ms", "app_retx_jitter_ms",
                       "max_tag_failures", "digest_retries"});
    auto& m = s.node;
    m.processingDelay = r.duration(n, p, "processing_delay_us", 1e6, m.processingDelay);
    m.flashWriteLatency = r.duration(n, p, "flash_write_us", 1e6, m.flashWriteLatency);
    m.csCapacity = r.count(n, p, "cs_capacity", m.csCapacity);
    m.pitCapacity = r.count(n, p, "pit_capacity", m.pitCapacity);
    m.netRetxBudget = static_cast<int>(r.count(n, p, "net_retx_budget", m.netRetxBudget));
    m.netRetxInterval = r.duration(n, p, "net_retx_interval_ms", 1e3, m.netRetxInterval);
    m.nacks = r.boolean(n, p, "nacks", m.nacks);
    m.pollPeriod = r.duration(n, p, "poll_period_s", 1, m.pollPeriod);
    m.pollJitter = r.duration(n, p, "poll_jitter_ms", 1e3, m.pollJitter);
    m.appRetxBase = r.duration(n, p, "app_retx_base_ms", 1e3, m.appRetxBase);
    m.appRetxJitter = r.duration(n, p, "app_retx_jitter_ms", 1e3, m.appRetxJitter);
    m.maxTagFailures = static_cast<int>(r.count(n, p, "max_tag_failures", m.maxTagFailures));
    m.digestRetries = static_cast<int>(r.count(n, p, "digest_retries", m.digestRetries));
  }

  if (doc.contains("attackers")) {
    if (!doc.at("attackers").is_array()) {
      r.fail("attackers", "expected an array");
    }
    for (const auto& a : doc.at("attackers")) {
      r.checkKeys(a, "attackers", {"edge", "mode", "rate"});
      Attacker attacker;
      attacker.edge = readEdge(r, a, "attackers", s.topology);
      auto mode = r.string(a, "attackers", "mode", "tamper_payload");
      if (mode == "tamper_payload") {
        attacker.mode = AttackMode::TamperPayload;
      }
      else if (mode == "forge_tag") {
        attacker.mode = AttackMode::ForgeTag;
      }
      else if (mode == "replay_stale") {
        attacker.mode = AttackMode::ReplayStale;
      }
      else {
        r.fail("attackers.mode",
               "unknown mode '" + mode + "' (tamper_payload, forge_tag, replay_stale)");
      }
      attacker.rate = r.number(a, "attackers", "rate", attacker.rate);
      s.attackers.push_back(attacker);
    }
  }

  if (doc.contains("outages")) {
    if (!doc.at("outages").is_array()) {
      r.fail("outages", "expected an array");
    }
    for (const auto& o : doc.at("outages")) {
      r.checkKeys(o, "outages", {"edge", "at_s"});
      Outage outage;
      outage.edge = readEdge(r, o, "outages", s.topology);
      outage.at = r.duration(o, "outages", "at_s", 1, outage.at);
      s.outages.push_back(outage);
    }
  }

  try {
    s.validate();
  }
  catch (const ScenarioInvalid& e) {
    if (e.line() != 0) {
      throw;
    }
    // re-raise with the line where the field appears, if present
    size_t line = r.lineOf(e.field());
    std::string message = e.what();
    auto prefix = e.field() + ": ";
    if (message.rfind(prefix, 0) == 0) {
      message.erase(0, prefix.size());
    }
    throw ScenarioInvalid(e.field(), message, line);
  }
  return s;
}

Scenario
loadScenario(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) {
    throw ScenarioInvalid("", "cannot open " + path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parseScenario(buffer.str());
}

std::string
scenarioToJson(const Scenario& s)
{
  json nodes = json::array();
  for (const auto& [label, parent] : s.topology.specs()) {
    nodes.push_back(parent.empty() ? json{{"name", label}} : json{{"name", label}, {"parent", parent}});
  }
  auto us = [](Timestamp t) { return static_cast<double>(t.count()); };
  json doc = {
    {"topology", {{"nodes", nodes}}},
    {"strategy", toString(s.strategy)},
    {"device_classes", s.classes == ClassAssignment::Shared ? "shared" : "unique"},
    {"image_size", s.imageSize},
    {"chunk_size", s.chunkSize},
    {"tag_length", s.tagLength},
    {"seed", s.seed},
    {"duration_s", us(s.duration) / 1e6},
    {"naming",
     {{"deployment", s.deployment},
      {"vendor", s.vendor},
      {"class", s.deviceClass},
      {"wall_clock_start", s.wallClockStart},
      {"period_s", s.granularity.period},
      {"offset_s", s.granularity.offset}}},
    {"link",
     {{"loss_prob", s.link.lossProb},
      {"collision_penalty", s.link.collisionPenalty},
      {"propagation_delay_us", us(s.link.propagationDelay)},
      {"bandwidth_bps", s.link.bandwidthBps},
      {"mac_overhead_us", us(s.link.macOverhead)},
      {"backoff_slot_us", us(s.link.backoffSlot)},
      {"max_retries", s.link.maxRetries},
      {"mtu", s.link.mtu},
      {"link_header_bytes", s.link.linkHeaderBytes},
      {"fragment_header_bytes", s.link.fragmentHeaderBytes},
      {"queue_capacity", s.link.queueCapacity},
      {"overhearing", s.link.overhearing}}},
    {"node",
     {{"processing_delay_us", us(s.node.processingDelay)},
      {"flash_write_us", us(s.node.flashWriteLatency)},
      {"cs_capacity", s.node.csCapacity},
      {"pit_capacity", s.node.pitCapacity},
      {"net_retx_budget", s.node.netRetxBudget},
      {"net_retx_interval_ms", us(s.node.netRetxInterval) / 1e3},
      {"nacks", s.node.nacks},
      {"poll_period_s", us(s.node.pollPeriod) / 1e6},
      {"poll_jitter_ms", us(s.node.pollJitter) / 1e3},
      {"app_retx_base_ms", us(s.node.appRetxBase) / 1e3},
      {"app_retx_jitter_ms", us(s.node.appRetxJitter) / 1e3},
      {"max_tag_failures", s.node.maxTagFailures},
      {"digest_retries", s.node.digestRetries}}},
  };
  json attackers = json::array();
  for (const auto& a : s.attackers) {
    attackers.push_back(
      {{"edge", s.topology.label(a.edge)}, {"mode", toString(a.mode)}, {"rate", a.rate}});
  }
  json outages = json::array();
  for (const auto& o : s.outages) {
    outages.push_back({{"edge", s.topology.label(o.edge)}, {"at_s", us(o.at) / 1e6}});
  }
  doc["attackers"] = attackers;
  doc["outages"] = outages;
  return doc.dump(2);
}

Scenario
injectAttacker(Scenario scenario, const Attacker& attacker)
{
  if (attacker.edge == 0 || attacker.edge >= scenario.topology.size()) {
    throw ScenarioInvalid("attackers.edge", "must name a non-root node");
  }
  scenario.attackers.push_back(attacker);
  return scenario;
}

Scenario
severUplink(Scenario scenario, NodeId edge, Timestamp at)
{
  if (edge == 0 || edge >= scenario.topology.size()) {
    throw ScenarioInvalid("outages.edge", "must name a non-root node");
  }
  scenario.outages.push_back({edge, at});
  return scenario;
}

const std::vector<std::string>&
sweepAxes()
{
  static const std::vector<std::string> axes{
    "chunks", "image_size", "chunk_size", "loss_prob", "collision_penalty", "tag_length",
    "processing_delay_us", "flash_write_us", "cs_capacity", "poll_period_s",
  };
  return axes;
}

void
applyAxis(Scenario& s, const std::string& axis, double value)
{
  auto whole = [&] {
    if (value < 0 || value != std::floor(value)) {
      throw ScenarioInvalid(axis, "sweep value must be a non-negative integer");
    }
    return static_cast<uint64_t>(value);
  };
  if (axis == "chunks") {
    s.imageSize = whole() * s.chunkSize;
  }
  else if (axis == "image_size") {
    s.imageSize = whole();
  }
  else if (axis == "chunk_size") {
    s.chunkSize = static_cast<uint32_t>(whole());
  }
  else if (axis == "loss_prob") {
    s.link.lossProb = value;
  }
  else if (axis == "collision_penalty") {
    s.link.collisionPenalty = value;
  }
  else if (axis == "tag_length") {
    s.tagLength = whole();
  }
  else if (axis == "processing_delay_us") {
    s.node.processingDelay = Timestamp(whole());
  }
  else if (axis == "flash_write_us") {
    s.node.flashWriteLatency = Timestamp(whole());
  }
  else if (axis == "cs_capacity") {
    s.node.csCapacity = whole();
  }
  else if (axis == "poll_period_s") {
    s.node.pollPeriod = fromUnits(value, 1);
  }
  else {
    throw ScenarioInvalid(axis, "not a sweepable axis");
  }
  s.validate();
}

} // namespace ndnfw
