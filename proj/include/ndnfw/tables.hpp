#ifndef NDNFW_TABLES_HPP
#define NDNFW_TABLES_HPP

#include "ndnfw/metrics.hpp"

namespace ndnfw {

/// Cumulative stored chunks per node after each DataRecv.
struct ProgressPoint
{
  std::string node;
  Timestamp time;
  uint64_t cumulative;
};

std::vector<ProgressPoint>
progressTable(const std::vector<MetricsRecord>& records);

/// Chunks stored by a node during simulated second [second, second + 1).
/// Every second from 0 to the node's last DataRecv is listed.
struct RatePoint
{
  std::string node;
  uint64_t second;
  uint64_t chunks;
};

std::vector<RatePoint>
rateTable(const std::vector<MetricsRecord>& records);

enum class RetxLayer {
  Net,
  App,
  Link,
};

const char*
toString(RetxLayer layer);

/// Retransmissions of chunks [block * blockSize, (block + 1) * blockSize).
struct RetxBlock
{
  std::string node;
  RetxLayer layer;
  uint64_t block;
  uint64_t count;
};

/// One row per (node, layer, block) for every node that stored or requested
/// chunks. @p chunkCount defaults to one past the highest chunk id seen.
std::vector<RetxBlock>
retxBlocks(const std::vector<MetricsRecord>& records, uint64_t blockSize = 100,
           std::optional<uint64_t> chunkCount = std::nullopt);

void
writeProgressCsv(std::ostream& os, const std::vector<ProgressPoint>& rows);

void
writeRateCsv(std::ostream& os, const std::vector<RatePoint>& rows);

void
writeRetxCsv(std::ostream& os, const std::vector<RetxBlock>& rows, uint64_t blockSize);

} // namespace ndnfw

#endif // NDNFW_TABLES_HPP
