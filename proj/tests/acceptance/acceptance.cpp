// Acceptance gate: one PASS/FAIL line per criterion. Exit status is non-zero
// if any criterion fails.

#include "ndnfw/forwarder.hpp"
#include "ndnfw/overhead.hpp"
#include "ndnfw/simulator.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <list>
#include <map>
#include <sstream>

using namespace ndnfw;

namespace {

// pinned thresholds
constexpr int seedCount = 10;
constexpr int majority = 8; // "in >= 8/10 seeds"
constexpr double multipartyFactor = 2.0;
constexpr double chunkZeroShare = 0.90;
constexpr int integrityTrials = 200;
constexpr double integrityBudgetS = 60.0;
constexpr double overheadBudgetS = 1.0;
constexpr double paperScaleBudgetS = 600.0;

const std::vector<std::string> longPath{"n1", "n2", "n3", "n4", "n5", "n6", "n7"};

struct Verdict
{
  bool pass = false;
  std::string detail;
};

double
secondsSince(std::chrono::steady_clock::time_point start)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double
sec(Timestamp t)
{
  return static_cast<double>(t.count()) / 1e6;
}

Scenario
paperScenario(Strategy strategy, uint64_t seed, uint64_t chunks)
{
  Scenario s;
  s.topology = buildPaperTopology();
  s.strategy = strategy;
  s.chunkSize = 32;
  s.imageSize = chunks * s.chunkSize;
  s.seed = seed;
  s.duration = 6h;
  return s;
}

std::vector<MetricsRecord>
recordsOf(const SimResult& r, const std::string& node)
{
  std::vector<MetricsRecord> out;
  for (const auto& rec : r.records) {
    if (rec.node == node) {
      out.push_back(rec);
    }
  }
  return out;
}

// 1

Verdict
overheadExactness()
{
  auto start = std::chrono::steady_clock::now();
  OverheadModel plain;
  OverheadModel compressed;
  compressed.compressionEnabled = true;
  auto small = overheadReport(plain, 36 * 1024);
  auto large = overheadReport(plain, 144 * 1024);
  auto packed = overheadReport(compressed, 36 * 1024);
  double elapsed = secondsSince(start);
  bool ok = small.payloadCapacity == 9 && packed.payloadCapacity == 35 &&
            small.chunkCount == 4096 && small.signatureOverheadBytes == 262144 &&
            large.chunkCount == 16384 && large.signatureOverheadBytes == 1048576 &&
            elapsed < overheadBudgetS;
  std::ostringstream os;
  os << "capacity " << small.payloadCapacity << "/" << packed.payloadCapacity << " B, overhead "
     << small.signatureOverheadBytes << " B and " << large.signatureOverheadBytes << " B in "
     << elapsed << " s";
  return {ok, os.str()};
}

// 2

Verdict
endToEndIntegrity()
{
  auto start = std::chrono::steady_clock::now();
  Rng rng(20210922);
  const uint32_t chunkSizes[] = {8, 16, 32, 64};
  int passed = 0;
  std::string firstFailure;
  for (int trial = 0; trial < integrityTrials; ++trial) {
    Scenario s;
    s.topology = buildLineTopology(3);
    s.imageSize = 1 + uniformUpTo(rng, 8191);
    s.chunkSize = chunkSizes[uniformUpTo(rng, 3)];
    s.seed = 1000 + static_cast<uint64_t>(trial);
    s.link.lossProb = 0.10;
    s.duration = 6h;
    Simulator sim(s);
    auto result = sim.run();
    const auto* last = result.summary.find("n3");
    bool ok = last != nullptr && last->installedAt && last->imageMatches &&
              sim.agent(3)->state().installed.bytes == sim.releaseImage(3);
    if (ok) {
      ++passed;
    }
    else if (firstFailure.empty()) {
      firstFailure = "; first failure: size " + std::to_string(s.imageSize) + " chunk " +
                     std::to_string(s.chunkSize);
    }
  }
  double elapsed = secondsSince(start);
  std::ostringstream os;
  os << passed << "/" << integrityTrials << " images byte-identical at 3 hops in " << elapsed
     << " s" << firstFailure;
  return {passed == integrityTrials && elapsed < integrityBudgetS, os.str()};
}

// 3 and 4 share the same runs

struct PaperRuns
{
  std::vector<SimResult> concurrent;
  std::vector<SimResult> cascading;
  double elapsed = 0;
};

PaperRuns
runPaperScale()
{
  auto start = std::chrono::steady_clock::now();
  PaperRuns runs;
  for (uint64_t seed = 1; seed <= seedCount; ++seed) {
    runs.concurrent.push_back(runScenario(paperScenario(Strategy::Concurrent, seed, 1000)));
    runs.cascading.push_back(runScenario(paperScenario(Strategy::Cascading, seed, 1000)));
  }
  runs.elapsed = secondsSince(start);
  return runs;
}

Verdict
concurrentLeaders(const PaperRuns& runs)
{
  int good = 0;
  for (const auto& r : runs.concurrent) {
    const auto& s = r.summary;
    auto leaders = s.completionOf({"n1", "n2"});
    bool ok = leaders.has_value();
    for (size_t i = 2; ok && i < longPath.size(); ++i) {
      const auto* n = s.find(longPath[i]);
      ok = n->installedAt && *n->installedAt > *leaders;
    }
    good += ok;
  }
  std::ostringstream os;
  os << "n1 and n2 finish before n3..n7 in " << good << "/" << seedCount << " seeds";
  return {good >= majority, os.str()};
}

Verdict
cascadingOrder(const PaperRuns& runs)
{
  int ordered = 0;
  std::map<std::string, int> shorter;
  for (size_t i = 0; i < runs.cascading.size(); ++i) {
    const auto& cas = runs.cascading[i].summary;
    const auto& con = runs.concurrent[i].summary;
    bool ok = true;
    std::optional<Timestamp> previous;
    for (const auto& label : longPath) {
      const auto* n = cas.find(label);
      ok = ok && n->installedAt && (!previous || *n->installedAt > *previous);
      previous = n->installedAt;
      auto a = n->fetchDuration();
      auto b = con.find(label)->fetchDuration();
      shorter[label] += a && b && *a < *b;
    }
    ordered += ok;
  }
  int worst = seedCount;
  std::string worstNode;
  for (const auto& label : longPath) {
    if (shorter[label] < worst) {
      worst = shorter[label];
      worstNode = label;
    }
  }
  std::ostringstream os;
  os << "rank order " << ordered << "/" << seedCount
     << " seeds; shorter fetch per node, worst case " << worst << "/" << seedCount;
  if (!worstNode.empty()) {
    os << " (" << worstNode << ")";
  }
  return {ordered == seedCount && worst >= majority, os.str()};
}

Verdict
pathCompletion(const PaperRuns& runs)
{
  int good = 0;
  double conSum = 0;
  double casSum = 0;
  for (size_t i = 0; i < runs.concurrent.size(); ++i) {
    auto con = runs.concurrent[i].summary.completionOf(longPath);
    auto cas = runs.cascading[i].summary.completionOf(longPath);
    good += con && cas && *con < *cas;
    conSum += con ? sec(*con) : 0;
    casSum += cas ? sec(*cas) : 0;
  }
  std::ostringstream os;
  os << "concurrent ahead in " << good << "/" << seedCount << " seeds (mean " << conSum / seedCount
     << " s vs " << casSum / seedCount << " s); 20 runs took " << runs.elapsed << " s";
  return {good >= majority && runs.elapsed < paperScaleBudgetS, os.str()};
}

Verdict
linkStress(const PaperRuns& runs)
{
  int lower = 0;
  int concentrated = 0;
  uint64_t appTotal = 0;
  uint64_t appChunkZero = 0;
  for (size_t i = 0; i < runs.concurrent.size(); ++i) {
    auto con = runs.concurrent[i].summary.find("n7")->netRetx;
    auto cas = runs.cascading[i].summary.find("n7")->netRetx;
    lower += cas < con;
    uint64_t total = 0;
    uint64_t zero = 0;
    for (const auto& rec : recordsOf(runs.cascading[i], "n7")) {
      if (rec.event == MetricEvent::AppRetx) {
        ++total;
        zero += rec.chunkId == 0u;
      }
    }
    appTotal += total;
    appChunkZero += zero;
    concentrated += total > 0 && static_cast<double>(zero) >= chunkZeroShare * static_cast<double>(total);
  }
  double share = appTotal == 0 ? 0.0 : static_cast<double>(appChunkZero) / static_cast<double>(appTotal);
  std::ostringstream os;
  os << "n7 net retx lower under cascading in " << lower << "/" << seedCount
     << " seeds; app retx on chunk 0: " << appChunkZero << "/" << appTotal << " (" << share * 100
     << "%), >= 90% in " << concentrated << "/" << seedCount << " seeds";
  return {lower >= majority && concentrated >= majority, os.str()};
}

// 5

Verdict
dosEarlyExit()
{
  const NodeId victim = buildPaperTopology().require("n7");
  int exitOk = 0;
  int filterOk = 0;
  std::string note;
  for (uint64_t seed = 1; seed <= seedCount; ++seed) {
    // full-rate tampering on the victim's uplink
    auto s = injectAttacker(paperScenario(Strategy::Concurrent, seed, 128),
                            {victim, AttackMode::TamperPayload, 1.0});
    auto r = runScenario(s);
    std::vector<uint64_t> failed;
    std::optional<Timestamp> abortAt;
    bool laterInterest = false;
    for (const auto& rec : recordsOf(r, "n7")) {
      if (rec.event == MetricEvent::TagFail) {
        failed.push_back(*rec.chunkId);
      }
      if (rec.event == MetricEvent::Abort && !abortAt) {
        abortAt = rec.simTime;
      }
      if (abortAt && rec.chunkId &&
          (rec.event == MetricEvent::InterestSent || rec.event == MetricEvent::AppRetx)) {
        laterInterest = true;
      }
    }
    bool sameIndex = failed.size() == 3 && failed[0] == failed[1] && failed[1] == failed[2];
    auto aborts = r.summary.aborts();
    bool ok = sameIndex && abortAt && !laterInterest && aborts == std::vector<std::string>{"n7"};
    exitOk += ok;
    if (!ok && note.empty()) {
      note = "; seed " + std::to_string(seed) + ": " + std::to_string(failed.size()) +
             " tag failures, " + std::to_string(aborts.size()) + " aborts";
    }

    // 5% tampering must be filtered out entirely
    auto low = injectAttacker(paperScenario(Strategy::Concurrent, seed, 128),
                              {victim, AttackMode::TamperPayload, 0.05});
    auto lr = runScenario(low);
    const auto* n7 = lr.summary.find("n7");
    filterOk += n7->installedAt && n7->imageMatches && lr.summary.aborts().empty();
  }
  std::ostringstream os;
  os << "rate 1.0: abort after 3 failures on one index with no later requests in " << exitOk << "/"
     << seedCount << "; rate 0.05: byte-identical install in " << filterOk << "/" << seedCount
     << note;
  return {exitOk == seedCount && filterOk == seedCount, os.str()};
}

// 6

Verdict
replicationResilience()
{
  const auto topo = buildPaperTopology();
  const NodeId n1 = topo.require("n1");
  int good = 0;
  std::string note;
  for (uint64_t seed = 1; seed <= seedCount; ++seed) {
    auto base = paperScenario(Strategy::Cascading, seed, 1000);
    auto first = runScenario(base);
    auto installed = first.summary.find("n1")->installedAt;
    if (!installed) {
      note = "; n1 never installed for seed " + std::to_string(seed);
      continue;
    }
    // same seed, so the run is identical up to the cut
    auto cut = runScenario(severUplink(base, n1, *installed + 1us));
    bool ok = cut.summary.find("n1")->installedAt == installed;
    for (size_t i = 1; ok && i < longPath.size(); ++i) {
      const auto* n = cut.summary.find(longPath[i]);
      ok = n->installedAt && n->imageMatches;
    }
    good += ok;
  }
  std::ostringstream os;
  os << "n2..n7 install from n1 after the gateway link is cut in " << good << "/" << seedCount
     << " seeds" << note;
  return {good == seedCount, os.str()};
}

// 7

Verdict
multipartyContrast()
{
  int good = 0;
  double minRatio = 1e9;
  for (uint64_t seed = 1; seed <= seedCount; ++seed) {
    auto shared = paperScenario(Strategy::Concurrent, seed, 1000);
    auto unique = shared;
    unique.classes = ClassAssignment::Unique;
    auto a = runScenario(shared).summary.completionOf(longPath);
    auto b = runScenario(unique).summary.completionOf(longPath);
    if (a && b) {
      double ratio = sec(*b) / sec(*a);
      minRatio = std::min(minRatio, ratio);
      good += ratio >= multipartyFactor;
    }
  }
  std::ostringstream os;
  os << "unique classes take >= " << multipartyFactor << "x as long in " << good << "/"
     << seedCount << " seeds (smallest ratio " << minRatio << ")";
  return {good >= majority, os.str()};
}

// 8

Verdict
determinism()
{
  auto s = paperScenario(Strategy::Concurrent, 42, 200);
  s = injectAttacker(s, {buildPaperTopology().require("e3"), AttackMode::TamperPayload, 0.2});
  s = severUplink(s, buildPaperTopology().require("g1"), 30s);
  auto a = toCsv(runScenario(s).records);
  auto b = toCsv(runScenario(s).records);
  auto c = paperScenario(Strategy::Cascading, 42, 200);
  auto d = toCsv(runScenario(c).records);
  auto e = toCsv(runScenario(c).records);
  bool ok = a == b && d == e && !a.empty();
  std::ostringstream os;
  os << "repeat runs byte-identical: concurrent " << (a == b ? "yes" : "no") << " ("
     << a.size() << " B), cascading " << (d == e ? "yes" : "no") << " (" << d.size() << " B)";
  return {ok, os.str()};
}

// 9

struct NullHooks : LocalHooks
{
};

Interest
interestFor(uint64_t chunk, uint32_t nonce)
{
  return Interest{FirmwareName::chunk({{"d", "v", "c"}, 3600}, chunk), nonce};
}

Data
dataFor(uint64_t chunk)
{
  return Data{FirmwareName::chunk({{"d", "v", "c"}, 3600}, chunk), Bytes{uint8_t(chunk)}, NoAuth{}};
}

/// Brute-force LRU: a list ordered by last use, front = oldest.
struct ReferenceLru
{
  size_t capacity;
  std::list<uint64_t> order;

  std::optional<uint64_t>
  insert(uint64_t key)
  {
    auto it = std::find(order.begin(), order.end(), key);
    if (it != order.end()) {
      order.erase(it);
      order.push_back(key);
      return std::nullopt;
    }
    order.push_back(key);
    if (order.size() > capacity) {
      auto victim = order.front();
      order.pop_front();
      return victim;
    }
    return std::nullopt;
  }

  bool
  find(uint64_t key)
  {
    auto it = std::find(order.begin(), order.end(), key);
    if (it == order.end()) {
      return false;
    }
    order.erase(it);
    order.push_back(key);
    return true;
  }
};

Verdict
forwarderProperties()
{
  NullHooks hooks;
  std::vector<std::string> failures;

  // PIT aggregation: N downstream faces, one upstream Interest
  for (FaceId n = 1; n <= 12; ++n) {
    ForwarderConfig cfg;
    Forwarder fwd(cfg);
    fwd.fib().setDefaultRoute(100);
    size_t forwards = 0;
    for (FaceId face = 1; face <= n; ++face) {
      for (const auto& a : fwd.onInterest(face, interestFor(5, face), 0us, hooks)) {
        forwards += std::holds_alternative<action::Forward>(a);
      }
    }
    auto out = fwd.onData(100, dataFor(5), 1ms, hooks);
    size_t delivered = 0;
    for (const auto& a : out) {
      if (auto* f = std::get_if<action::ForwardDownstream>(&a)) {
        delivered = f->faces.size();
      }
    }
    if (forwards != 1 || delivered != n || fwd.pit().size() != 0) {
      failures.push_back("aggregation N=" + std::to_string(n));
    }
  }

  // retransmission schedule, ticked every millisecond
  {
    Forwarder fwd;
    fwd.fib().setDefaultRoute(100);
    fwd.expressInterest(1, interestFor(1, 1), 0us, hooks);
    std::vector<Timestamp> retx;
    std::optional<Timestamp> expiry;
    for (Timestamp t = 0us; t <= 12s; t += 1ms) {
      auto r = fwd.tickRetransmissions(t);
      for (size_t i = 0; i < r.retransmissions.size(); ++i) {
        retx.push_back(t);
      }
      if (!r.expired.empty() && !expiry) {
        expiry = t;
      }
    }
    if (retx != std::vector<Timestamp>{2000ms, 4000ms, 6000ms} || expiry != Timestamp(8000ms)) {
      failures.push_back("retransmission schedule");
    }
  }

  // content store against a reference table: every sequence of 6 operations
  // over 4 names at capacity 2 and 3
  size_t sequences = 0;
  for (size_t capacity : {2u, 3u}) {
    const int ops = 8;
    const int length = 6;
    int total = 1;
    for (int i = 0; i < length; ++i) {
      total *= ops;
    }
    for (int code = 0; code < total; ++code) {
      ContentStore cs(capacity);
      ReferenceLru ref{capacity, {}};
      int c = code;
      bool ok = true;
      for (int step = 0; step < length && ok; ++step) {
        int op = c % ops;
        c /= ops;
        uint64_t key = static_cast<uint64_t>(op % 4);
        Timestamp now(step);
        if (op < 4) {
          auto evicted = cs.insert(dataFor(key), now);
          auto expected = ref.insert(key);
          ok = evicted.has_value() == expected.has_value() &&
               (!evicted || evicted->chunkId() == expected);
        }
        else {
          const Data* hit = cs.find(dataFor(key).name, now);
          ok = (hit != nullptr) == ref.find(key) && (hit == nullptr || hit->payload == dataFor(key).payload);
        }
        ok = ok && cs.size() == ref.order.size() && cs.size() <= capacity;
      }
      ++sequences;
      if (!ok) {
        failures.push_back("cs sequence " + std::to_string(code) + " capacity " +
                           std::to_string(capacity));
        break;
      }
    }
  }

  // capacity 64: no eviction until the 65th insert, which drops the oldest
  {
    ContentStore cs(64);
    bool ok = true;
    for (uint64_t i = 0; i < 64; ++i) {
      ok = ok && !cs.insert(dataFor(i), Timestamp(i)).has_value();
    }
    auto evicted = cs.insert(dataFor(64), 64us);
    ok = ok && evicted && evicted->chunkId() == 0u && cs.size() == 64;
    if (!ok) {
      failures.push_back("cs capacity 64");
    }
  }

  std::ostringstream os;
  os << "aggregation N=1..12, retx at 2/4/6 s with expiry at 8 s, " << sequences
     << " cs operation sequences vs reference";
  for (const auto& f : failures) {
    os << "; FAILED " << f;
  }
  return {failures.empty(), os.str()};
}

} // namespace

int
main()
{
  int failures = 0;
  auto report = [&](const char* id, const char* title, const Verdict& v) {
    std::cout << (v.pass ? "[PASS] " : "[FAIL] ") << id << " " << title << ": " << v.detail
              << std::endl;
    failures += !v.pass;
  };

  report("1", "overhead calculator exactness", overheadExactness());
  report("2", "end-to-end integrity", endToEndIntegrity());
  auto runs = runPaperScale();
  report("3a", "concurrent: n1 and n2 lead", concurrentLeaders(runs));
  report("3b", "cascading: rank order and shorter fetches", cascadingOrder(runs));
  report("3c", "global path completion", pathCompletion(runs));
  report("4", "link-stress contrast", linkStress(runs));
  report("5", "DoS early exit", dosEarlyExit());
  report("6", "replication resilience", replicationResilience());
  report("7", "multiparty contrast", multipartyContrast());
  report("8", "determinism", determinism());
  report("9", "forwarder unit properties", forwarderProperties());

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
