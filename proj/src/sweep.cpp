#include "ndnfw/sweep.hpp"

#include <algorithm>
#include <future>
#include <ostream>

namespace ndnfw {

std::optional<Timestamp>
SweepRow::completion() const
{
  std::vector<std::string> devices;
  for (const auto& n : summary.nodes) {
    if (n.rank > 0) {
      devices.push_back(n.node);
    }
  }
  return summary.completionOf(devices);
}

double
median(std::vector<double> values)
{
  if (values.empty()) {
    throw std::invalid_argument("median of an empty set");
  }
  std::sort(values.begin(), values.end());
  size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : (values[mid - 1] + values[mid]) / 2.0;
}

SweepResult
sweep(const Scenario& base, const std::string& axis, const std::vector<double>& values,
      const std::vector<uint64_t>& seeds, unsigned jobs)
{
  if (values.empty() || seeds.empty()) {
    throw ScenarioInvalid(axis, "sweep needs at least one value and one seed");
  }
  SweepResult result;
  result.axis = axis;
  std::vector<Scenario> scenarios;
  for (double value : values) {
    for (uint64_t seed : seeds) {
      Scenario s = base;
      applyAxis(s, axis, value);
      s.seed = seed;
      scenarios.push_back(std::move(s));
      result.rows.push_back({value, seed, {}});
    }
  }

  jobs = std::max(1u, jobs);
  for (size_t first = 0; first < scenarios.size(); first += jobs) {
    size_t last = std::min(scenarios.size(), first + jobs);
    std::vector<std::future<RunSummary>> running;
    for (size_t i = first; i < last; ++i) {
      running.push_back(std::async(jobs == 1 ? std::launch::deferred : std::launch::async,
                                   [&s = scenarios[i]] { return runScenario(s).summary; }));
    }
    for (size_t i = first; i < last; ++i) {
      result.rows[i].summary = running[i - first].get();
    }
  }

  for (size_t v = 0; v < values.size(); ++v) {
    SweepMedian m;
    m.value = values[v];
    std::vector<double> completion, net, app, link;
    for (size_t s = 0; s < seeds.size(); ++s) {
      const auto& row = result.rows[v * seeds.size() + s];
      ++m.runs;
      if (auto c = row.completion()) {
        ++m.completedRuns;
        completion.push_back(static_cast<double>(c->count()));
      }
      net.push_back(static_cast<double>(row.summary.total(&NodeSummary::netRetx)));
      app.push_back(static_cast<double>(row.summary.total(&NodeSummary::appRetx)));
      link.push_back(static_cast<double>(row.summary.total(&NodeSummary::linkRetx)));
    }
    if (!completion.empty()) {
      m.completionUs = median(completion);
    }
    m.netRetx = median(net);
    m.appRetx = median(app);
    m.linkRetx = median(link);
    result.medians.push_back(m);
  }
  return result;
}

void
writeSweepCsv(std::ostream& os, const SweepResult& result)
{
  os << "kind," << result.axis
     << ",seed,completions,aborts,completion_us,net_retx,app_retx,link_retx\n";
  for (const auto& row : result.rows) {
    os << "run," << row.value << ',' << row.seed << ',' << row.summary.completions() << ','
       << row.summary.aborts().size() << ',';
    if (auto c = row.completion()) {
      os << c->count();
    }
    os << ',' << row.summary.total(&NodeSummary::netRetx) << ','
       << row.summary.total(&NodeSummary::appRetx) << ','
       << row.summary.total(&NodeSummary::linkRetx) << '\n';
  }
  for (const auto& m : result.medians) {
    os << "median," << m.value << ",," << m.completedRuns << ",,";
    if (m.completionUs) {
      os << static_cast<int64_t>(*m.completionUs);
    }
    os << ',' << m.netRetx << ',' << m.appRetx << ',' << m.linkRetx << '\n';
  }
}

} // namespace ndnfw
