#include "mixedgrad/bench/slope.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mixedgrad::bench {

SlopeFit fit_loglog(std::span<const double> x, std::span<const double> error,
                    std::size_t skip_head) {
  if (x.size() != error.size()) throw std::invalid_argument("fit: x and error lengths differ");

  SlopeFit fit;
  std::vector<double> lx;
  std::vector<double> le;
  for (std::size_t k = skip_head; k < x.size(); ++k) {
    if (!(error[k] >= 0.0)) {
      throw std::invalid_argument("fit: negative or NaN error at point " + std::to_string(k) +
                                  "; the reference optimum is too loose");
    }
    if (error[k] < kErrorFloor) {
      ++fit.clipped;
      continue;
    }
    if (!(x[k] > 0.0)) throw std::invalid_argument("fit: x must be positive");
    if (!lx.empty() && std::log10(x[k]) <= lx.back()) {
      throw std::invalid_argument("fit: x must be strictly increasing");
    }
    if (lx.empty()) fit.first = k;
    fit.last = k;
    lx.push_back(std::log10(x[k]));
    le.push_back(std::log10(error[k]));
  }
  if (lx.size() < 4) {
    throw std::invalid_argument("fit: need at least 4 usable points, have " +
                                std::to_string(lx.size()));
  }
  fit.used = lx.size();

  const auto m = static_cast<double>(lx.size());
  double mx = 0.0;
  double me = 0.0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    mx += lx[k];
    me += le[k];
  }
  mx /= m;
  me /= m;
  double sxx = 0.0;
  double sxe = 0.0;
  double see = 0.0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    sxx += (lx[k] - mx) * (lx[k] - mx);
    sxe += (lx[k] - mx) * (le[k] - me);
    see += (le[k] - me) * (le[k] - me);
  }
  fit.slope = sxe / sxx;
  fit.intercept = me - fit.slope * mx;
  if (see == 0.0) {
    fit.r_squared = 1.0;
  } else {
    double ss_res = 0.0;
    for (std::size_t k = 0; k < lx.size(); ++k) {
      const double r = le[k] - (fit.intercept + fit.slope * lx[k]);
      ss_res += r * r;
    }
    fit.r_squared = std::clamp(1.0 - ss_res / see, 0.0, 1.0);
  }
  return fit;
}

TraceField parse_trace_field(std::string_view name) {
  if (name == "epoch") return TraceField::epoch;
  if (name == "step") return TraceField::step;
  if (name == "stoch_calls") return TraceField::stoch_calls;
  if (name == "full_calls") return TraceField::full_calls;
  if (name == "objective") return TraceField::objective;
  if (name == "error") return TraceField::error;
  throw std::invalid_argument("unknown trace field '" + std::string(name) + "'");
}

double field_value(const TraceRecord& record, TraceField field) {
  switch (field) {
    case TraceField::epoch:
      return record.epoch;
    case TraceField::step:
      return static_cast<double>(record.step);
    case TraceField::stoch_calls:
      return static_cast<double>(record.stoch_calls);
    case TraceField::full_calls:
      return static_cast<double>(record.full_calls);
    case TraceField::objective:
      return record.objective;
    case TraceField::error:
      return record.error;
  }
  return 0.0;
}

SlopeFit fit_slope(const std::vector<TraceRecord>& records, TraceField x_field,
                   TraceField error_field, std::size_t skip_head) {
  std::vector<double> x;
  std::vector<double> e;
  x.reserve(records.size());
  e.reserve(records.size());
  for (const auto& r : records) {
    x.push_back(field_value(r, x_field));
    e.push_back(field_value(r, error_field));
  }
  return fit_loglog(x, e, skip_head);
}

}  // namespace mixedgrad::bench
