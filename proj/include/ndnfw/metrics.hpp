#ifndef NDNFW_METRICS_HPP
#define NDNFW_METRICS_HPP

#include "ndnfw/packet.hpp"

#include <iosfwd>

namespace ndnfw {

class MalformedCsv : public std::runtime_error
{
public:
  MalformedCsv(size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message)
    , m_line(line)
  {
  }

  size_t
  line() const noexcept
  {
    return m_line;
  }

private:
  size_t m_line;
};

enum class MetricEvent {
  InterestSent,
  DataRecv,
  NetRetx,
  AppRetx,
  LinkRetx,
  TagFail,
  PhaseChange,
  InstallComplete,
  Abort,
};

const char*
toString(MetricEvent event);

std::optional<MetricEvent>
parseMetricEvent(std::string_view text);

struct MetricsRecord
{
  Timestamp simTime{0};
  std::string node;
  MetricEvent event = MetricEvent::InterestSent;
  std::optional<uint64_t> chunkId;
  std::string detail; ///< never contains commas or newlines

  bool operator==(const MetricsRecord&) const = default;
};

inline constexpr std::string_view csvHeader = "sim_time_us,node,event,chunk_id,detail";

void
writeCsv(std::ostream& os, const std::vector<MetricsRecord>& records);

std::string
toCsv(const std::vector<MetricsRecord>& records);

/// Parses CSV written by writeCsv(). Throws MalformedCsv.
std::vector<MetricsRecord>
parseCsv(std::istream& is);

std::vector<MetricsRecord>
parseCsv(std::string_view text);

struct NodeSummary
{
  std::string node;
  unsigned rank = 0;
  std::optional<Timestamp> installedAt;
  std::optional<Timestamp> firstData;
  std::optional<Timestamp> lastData;
  bool aborted = false;
  std::string abortReason;
  bool imageMatches = false; ///< installed bytes equal the vendor image
  uint64_t dataRecv = 0;
  uint64_t interestsSent = 0;
  uint64_t netRetx = 0;
  uint64_t appRetx = 0;
  uint64_t linkRetx = 0;
  uint64_t tagFailures = 0;

  /// Time between the first and the last stored chunk.
  std::optional<Timestamp>
  fetchDuration() const
  {
    if (!firstData || !lastData) {
      return std::nullopt;
    }
    return *lastData - *firstData;
  }
};

struct RunSummary
{
  uint64_t seed = 0;
  Timestamp endTime{0};
  std::vector<NodeSummary> nodes;

  uint64_t
  completions() const;

  std::vector<std::string>
  aborts() const;

  /// Latest completion among @p labels; nullopt unless all of them completed.
  std::optional<Timestamp>
  completionOf(const std::vector<std::string>& labels) const;

  const NodeSummary*
  find(const std::string& label) const;

  uint64_t
  total(uint64_t NodeSummary::*field) const;
};

/// Per-node aggregates of @p records. Nodes are reported in the order of
/// @p labels with ranks from @p ranks.
RunSummary
summarize(const std::vector<MetricsRecord>& records, const std::vector<std::string>& labels,
          const std::vector<unsigned>& ranks);

std::string
summaryToJson(const RunSummary& summary);

} // namespace ndnfw

#endif // NDNFW_METRICS_HPP
