#include "ndnfw/tables.hpp"

#include <map>
#include <ostream>

namespace ndnfw {

namespace {

/// Node labels in order of first appearance.
class NodeIndex
{
public:
  size_t
  operator()(const std::string& node)
  {
    auto [it, inserted] = m_index.emplace(node, m_order.size());
    if (inserted) {
      m_order.push_back(node);
    }
    return it->second;
  }

  const std::vector<std::string>&
  order() const noexcept
  {
    return m_order;
  }

private:
  std::map<std::string, size_t> m_index;
  std::vector<std::string> m_order;
};

} // namespace

std::vector<ProgressPoint>
progressTable(const std::vector<MetricsRecord>& records)
{
  std::map<std::string, uint64_t> counts;
  std::vector<ProgressPoint> out;
  for (const auto& r : records) {
    if (r.event == MetricEvent::DataRecv) {
      out.push_back({r.node, r.simTime, ++counts[r.node]});
    }
  }
  return out;
}

std::vector<RatePoint>
rateTable(const std::vector<MetricsRecord>& records)
{
  NodeIndex index;
  std::vector<std::vector<uint64_t>> perSecond;
  for (const auto& r : records) {
    if (r.event != MetricEvent::DataRecv) {
      continue;
    }
    size_t i = index(r.node);
    if (i == perSecond.size()) {
      perSecond.emplace_back();
    }
    auto second = static_cast<size_t>(r.simTime / 1s);
    if (perSecond[i].size() <= second) {
      perSecond[i].resize(second + 1, 0);
    }
    ++perSecond[i][second];
  }
  std::vector<RatePoint> out;
  for (size_t i = 0; i < perSecond.size(); ++i) {
    for (size_t s = 0; s < perSecond[i].size(); ++s) {
      out.push_back({index.order()[i], s, perSecond[i][s]});
    }
  }
  return out;
}

const char*
toString(RetxLayer layer)
{
  switch (layer) {
    case RetxLayer::Net:
      return "net";
    case RetxLayer::App:
      return "app";
    case RetxLayer::Link:
      return "link";
  }
  return "?";
}

std::vector<RetxBlock>
retxBlocks(const std::vector<MetricsRecord>& records, uint64_t blockSize,
           std::optional<uint64_t> chunkCount)
{
  if (blockSize == 0) {
    throw std::invalid_argument("block size must be positive");
  }
  NodeIndex index;
  uint64_t highest = 0;
  bool any = false;
  for (const auto& r : records) {
    if (r.chunkId && (r.event == MetricEvent::DataRecv || r.event == MetricEvent::InterestSent)) {
      index(r.node);
      highest = std::max(highest, *r.chunkId);
      any = true;
    }
  }
  uint64_t chunks = chunkCount.value_or(any ? highest + 1 : 0);
  uint64_t blocks = (chunks + blockSize - 1) / blockSize;

  constexpr RetxLayer layers[] = {RetxLayer::Net, RetxLayer::App, RetxLayer::Link};
  const size_t nodes = index.order().size();
  std::vector<uint64_t> counts(nodes * 3 * blocks, 0);
  for (const auto& r : records) {
    std::optional<size_t> layer;
    switch (r.event) {
      case MetricEvent::NetRetx:
        layer = 0;
        break;
      case MetricEvent::AppRetx:
        layer = 1;
        break;
      case MetricEvent::LinkRetx:
        layer = 2;
        break;
      default:
        break;
    }
    if (!layer || !r.chunkId || *r.chunkId >= chunks) {
      continue;
    }
    size_t node = index(r.node);
    if (node >= nodes) {
      continue; // forwarding-only node; no own transfer to attribute to
    }
    ++counts[(node * 3 + *layer) * blocks + *r.chunkId / blockSize];
  }

  std::vector<RetxBlock> out;
  for (size_t n = 0; n < nodes; ++n) {
    for (size_t l = 0; l < 3; ++l) {
      for (uint64_t b = 0; b < blocks; ++b) {
        out.push_back({index.order()[n], layers[l], b, counts[(n * 3 + l) * blocks + b]});
      }
    }
  }
  return out;
}

void
writeProgressCsv(std::ostream& os, const std::vector<ProgressPoint>& rows)
{
  os << "node,sim_time_us,chunks\n";
  for (const auto& r : rows) {
    os << r.node << ',' << r.time.count() << ',' << r.cumulative << '\n';
  }
}

void
writeRateCsv(std::ostream& os, const std::vector<RatePoint>& rows)
{
  os << "node,second,chunks\n";
  for (const auto& r : rows) {
    os << r.node << ',' << r.second << ',' << r.chunks << '\n';
  }
}

void
writeRetxCsv(std::ostream& os, const std::vector<RetxBlock>& rows, uint64_t blockSize)
{
  os << "node,layer,block,first_chunk,count\n";
  for (const auto& r : rows) {
    os << r.node << ',' << toString(r.layer) << ',' << r.block << ',' << r.block * blockSize << ','
       << r.count << '\n';
  }
}

} // namespace ndnfw
