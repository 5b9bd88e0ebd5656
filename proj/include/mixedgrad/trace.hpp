#ifndef MIXEDGRAD_TRACE_HPP
#define MIXEDGRAD_TRACE_HPP

#include "mixedgrad/oracle.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mixedgrad {

// Status values written to the trace `status` column.
namespace status {
inline constexpr const char* kCheckpoint = "checkpoint";
inline constexpr const char* kEpochEnd = "epoch_end";
inline constexpr const char* kDiverged = "diverged";
}  // namespace status

struct TraceRecord {
  int epoch = 0;
  std::uint64_t step = 0;
  std::uint64_t stoch_calls = 0;
  std::uint64_t full_calls = 0;
  double objective = 0.0;
  double error = 0.0;  // NaN when no certified reference is attached
  std::string status;

  // NaN errors compare equal to each other so that traces round-trip.
  friend bool operator==(const TraceRecord& a, const TraceRecord& b);
};

/// Checkpoint log of one solver run. Objective evaluations made for tracing
/// are instrumentation and never touch the oracle counters.
struct RunTrace {
  std::string solver;
  std::uint64_t seed = 0;
  std::optional<double> reference_objective;
  std::vector<TraceRecord> records;

  /// Appends a record; error = objective - reference when a reference is set.
  void record(int epoch, std::uint64_t step, const OracleCounters& counters, double objective,
              std::string status_value);

  /// Records carrying the given status, in order.
  std::vector<TraceRecord> with_status(const std::string& status_value) const;
};

}  // namespace mixedgrad

#endif
