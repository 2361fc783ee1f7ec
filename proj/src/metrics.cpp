#include "ndnfw/metrics.hpp"

#include "json.hpp"

#include <charconv>
#include <map>
#include <ostream>
#include <sstream>

namespace ndnfw {

namespace {

constexpr std::pair<MetricEvent, const char*> eventNames[] = {
  {MetricEvent::InterestSent, "InterestSent"},
  {MetricEvent::DataRecv, "DataRecv"},
  {MetricEvent::NetRetx, "NetRetx"},
  {MetricEvent::AppRetx, "AppRetx"},
  {MetricEvent::LinkRetx, "LinkRetx"},
  {MetricEvent::TagFail, "TagFail"},
  {MetricEvent::PhaseChange, "PhaseChange"},
  {MetricEvent::InstallComplete, "InstallComplete"},
  {MetricEvent::Abort, "Abort"},
};

template<typename T>
std::optional<T>
parseNumber(std::string_view text)
{
  T value{};
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) {
    return std::nullopt;
  }
  return value;
}

} // namespace

const char*
toString(MetricEvent event)
{
  for (const auto& [e, name] : eventNames) {
    if (e == event) {
      return name;
    }
  }
  return "?";
}

std::optional<MetricEvent>
parseMetricEvent(std::string_view text)
{
  for (const auto& [e, name] : eventNames) {
    if (text == name) {
      return e;
    }
  }
  return std::nullopt;
}

void
writeCsv(std::ostream& os, const std::vector<MetricsRecord>& records)
{
  os << csvHeader << '\n';
  for (const auto& r : records) {
    os << r.simTime.count() << ',' << r.node << ',' << toString(r.event) << ',';
    if (r.chunkId) {
      os << *r.chunkId;
    }
    os << ',' << r.detail << '\n';
  }
}

std::string
toCsv(const std::vector<MetricsRecord>& records)
{
  std::ostringstream os;
  writeCsv(os, records);
  return os.str();
}

std::vector<MetricsRecord>
parseCsv(std::istream& is)
{
  std::vector<MetricsRecord> out;
  std::string line;
  size_t lineNo = 0;
  if (!std::getline(is, line)) {
    throw MalformedCsv(1, "missing header");
  }
  ++lineNo;
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
  if (line != csvHeader) {
    throw MalformedCsv(1, "unexpected header '" + line + "'");
  }
  Timestamp previous{0};
  while (std::getline(is, line)) {
    ++lineNo;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    for (int i = 0; i < 4; ++i) {
      auto comma = rest.find(',');
      if (comma == std::string_view::npos) {
        throw MalformedCsv(lineNo, "expected 5 fields");
      }
      fields.push_back(rest.substr(0, comma));
      rest.remove_prefix(comma + 1);
    }
    if (rest.find(',') != std::string_view::npos) {
      throw MalformedCsv(lineNo, "expected 5 fields");
    }
    fields.push_back(rest);

    MetricsRecord r;
    auto time = parseNumber<int64_t>(fields[0]);
    if (!time || *time < 0) {
      throw MalformedCsv(lineNo, "bad sim_time_us '" + std::string(fields[0]) + "'");
    }
    r.simTime = Timestamp(*time);
    if (r.simTime < previous) {
      throw MalformedCsv(lineNo, "sim_time_us decreases");
    }
    previous = r.simTime;
    if (fields[1].empty()) {
      throw MalformedCsv(lineNo, "empty node");
    }
    r.node = fields[1];
    auto event = parseMetricEvent(fields[2]);
    if (!event) {
      throw MalformedCsv(lineNo, "unknown event '" + std::string(fields[2]) + "'");
    }
    r.event = *event;
    if (!fields[3].empty()) {
      auto chunk = parseNumber<uint64_t>(fields[3]);
      if (!chunk) {
        throw MalformedCsv(lineNo, "bad chunk_id '" + std::string(fields[3]) + "'");
      }
      r.chunkId = *chunk;
    }
    r.detail = fields[4];
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<MetricsRecord>
parseCsv(std::string_view text)
{
  std::istringstream is{std::string(text)};
  return parseCsv(is);
}

uint64_t
RunSummary::completions() const
{
  uint64_t n = 0;
  for (const auto& node : nodes) {
    n += node.installedAt.has_value();
  }
  return n;
}

std::vector<std::string>
RunSummary::aborts() const
{
  std::vector<std::string> out;
  for (const auto& node : nodes) {
    if (node.aborted) {
      out.push_back(node.node);
    }
  }
  return out;
}

std::optional<Timestamp>
RunSummary::completionOf(const std::vector<std::string>& labels) const
{
  Timestamp latest{0};
  for (const auto& label : labels) {
    const auto* node = find(label);
    if (node == nullptr || !node->installedAt) {
      return std::nullopt;
    }
    latest = std::max(latest, *node->installedAt);
  }
  return latest;
}

const NodeSummary*
RunSummary::find(const std::string& label) const
{
  for (const auto& node : nodes) {
    if (node.node == label) {
      return &node;
    }
  }
  return nullptr;
}

uint64_t
RunSummary::total(uint64_t NodeSummary::*field) const
{
  uint64_t sum = 0;
  for (const auto& node : nodes) {
    sum += node.*field;
  }
  return sum;
}

RunSummary
summarize(const std::vector<MetricsRecord>& records, const std::vector<std::string>& labels,
          const std::vector<unsigned>& ranks)
{
  RunSummary summary;
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < labels.size(); ++i) {
    NodeSummary n;
    n.node = labels[i];
    n.rank = i < ranks.size() ? ranks[i] : 0;
    index[labels[i]] = summary.nodes.size();
    summary.nodes.push_back(std::move(n));
  }
  for (const auto& r : records) {
    auto it = index.find(r.node);
    if (it == index.end()) {
      it = index.emplace(r.node, summary.nodes.size()).first;
      NodeSummary extra;
      extra.node = r.node;
      summary.nodes.push_back(std::move(extra));
    }
    auto& n = summary.nodes[it->second];
    summary.endTime = std::max(summary.endTime, r.simTime);
    switch (r.event) {
      case MetricEvent::InterestSent:
        ++n.interestsSent;
        break;
      case MetricEvent::DataRecv:
        ++n.dataRecv;
        if (!n.firstData) {
          n.firstData = r.simTime;
        }
        n.lastData = r.simTime;
        break;
      case MetricEvent::NetRetx:
        ++n.netRetx;
        break;
      case MetricEvent::AppRetx:
        ++n.appRetx;
        break;
      case MetricEvent::LinkRetx:
        ++n.linkRetx;
        break;
      case MetricEvent::TagFail:
        ++n.tagFailures;
        break;
      case MetricEvent::PhaseChange:
        break;
      case MetricEvent::InstallComplete:
        n.installedAt = r.simTime;
        break;
      case MetricEvent::Abort:
        // signature reports do not end the node's participation
        if (r.detail.rfind("irrecoverable", 0) == 0) {
          n.aborted = true;
          n.abortReason = r.detail;
        }
        break;
    }
  }
  return summary;
}

std::string
summaryToJson(const RunSummary& summary)
{
  using nlohmann::json;
  auto opt = [](const std::optional<Timestamp>& t) -> json {
    return t ? json(t->count()) : json(nullptr);
  };
  json nodes = json::array();
  for (const auto& n : summary.nodes) {
    nodes.push_back({
      {"node", n.node},
      {"rank", n.rank},
      {"install_time_us", opt(n.installedAt)},
      {"fetch_duration_us", opt(n.fetchDuration())},
      {"data_recv", n.dataRecv},
      {"interests_sent", n.interestsSent},
      {"net_retx", n.netRetx},
      {"app_retx", n.appRetx},
      {"link_retx", n.linkRetx},
      {"tag_failures", n.tagFailures},
      {"aborted", n.aborted},
      {"image_matches", n.imageMatches},
    });
  }
  json doc = {
    {"seed", summary.seed},
    {"end_time_us", summary.endTime.count()},
    {"completions", summary.completions()},
    {"aborts", summary.aborts()},
    {"retransmissions",
     {{"net", summary.total(&NodeSummary::netRetx)},
      {"app", summary.total(&NodeSummary::appRetx)},
      {"link", summary.total(&NodeSummary::linkRetx)}}},
    {"nodes", nodes},
  };
  return doc.dump(2);
}

} // namespace ndnfw
