#ifndef NDNFW_SWEEP_HPP
#define NDNFW_SWEEP_HPP

#include "ndnfw/simulator.hpp"

namespace ndnfw {

struct SweepRow
{
  double value = 0;
  uint64_t seed = 0;
  RunSummary summary;

  /// Latest install among devices, if every device installed.
  std::optional<Timestamp>
  completion() const;
};

struct SweepMedian
{
  double value = 0;
  size_t runs = 0;
  size_t completedRuns = 0;
  std::optional<double> completionUs; ///< over runs where every device installed
  double netRetx = 0;
  double appRetx = 0;
  double linkRetx = 0;
};

struct SweepResult
{
  std::string axis;
  std::vector<SweepRow> rows;      ///< value-major, then seed, in input order
  std::vector<SweepMedian> medians; ///< one per value, in input order
};

double
median(std::vector<double> values);

/// Runs @p base for every (value, seed) pair, up to @p jobs at a time. Output
/// order does not depend on @p jobs.
SweepResult
sweep(const Scenario& base, const std::string& axis, const std::vector<double>& values,
      const std::vector<uint64_t>& seeds, unsigned jobs = 1);

/// Per-run rows (kind=run) followed by per-value medians (kind=median).
void
writeSweepCsv(std::ostream& os, const SweepResult& result);

} // namespace ndnfw

#endif // NDNFW_SWEEP_HPP
