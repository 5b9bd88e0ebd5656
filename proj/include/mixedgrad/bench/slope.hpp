#ifndef MIXEDGRAD_BENCH_SLOPE_HPP
#define MIXEDGRAD_BENCH_SLOPE_HPP

#include "mixedgrad/trace.hpp"

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace mixedgrad::bench {

/// Errors below this are clipped: excluded from fits and counted.
inline constexpr double kErrorFloor = 1e-14;

/// Ordinary least squares of log10(error) on log10(x).
struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t first = 0;    // index of the first point used
  std::size_t last = 0;     // index of the last point used
  std::size_t used = 0;
  std::size_t clipped = 0;  // points dropped for error < kErrorFloor
};

/// Needs at least 4 usable points after dropping `skip_head` leading ones,
/// positive strictly increasing x, and no negative errors (a negative error
/// means the reference optimum is too loose).
SlopeFit fit_loglog(std::span<const double> x, std::span<const double> error,
                    std::size_t skip_head = 0);

enum class TraceField { epoch, step, stoch_calls, full_calls, objective, error };

TraceField parse_trace_field(std::string_view name);
double field_value(const TraceRecord& record, TraceField field);

SlopeFit fit_slope(const std::vector<TraceRecord>& records, TraceField x_field,
                   TraceField error_field, std::size_t skip_head = 0);

}  // namespace mixedgrad::bench

#endif
