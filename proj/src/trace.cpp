#include "mixedgrad/trace.hpp"

#include <cmath>
#include <limits>

namespace mixedgrad {

namespace {
bool same_real(double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); }
}  // namespace

bool operator==(const TraceRecord& a, const TraceRecord& b) {
  return a.epoch == b.epoch && a.step == b.step && a.stoch_calls == b.stoch_calls &&
         a.full_calls == b.full_calls && same_real(a.objective, b.objective) &&
         same_real(a.error, b.error) && a.status == b.status;
}

void RunTrace::record(int epoch, std::uint64_t step, const OracleCounters& counters,
                      double objective, std::string status_value) {
  TraceRecord r;
  r.epoch = epoch;
  r.step = step;
  r.stoch_calls = counters.stochastic_calls;
  r.full_calls = counters.full_calls;
  r.objective = objective;
  r.error = reference_objective ? objective - *reference_objective
                                : std::numeric_limits<double>::quiet_NaN();
  r.status = std::move(status_value);
  records.push_back(std::move(r));
}

std::vector<TraceRecord> RunTrace::with_status(const std::string& status_value) const {
  std::vector<TraceRecord> out;
  for (const auto& r : records) {
    if (r.status == status_value) out.push_back(r);
  }
  return out;
}

}  // namespace mixedgrad
