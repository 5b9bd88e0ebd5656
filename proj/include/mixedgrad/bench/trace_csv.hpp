#ifndef MIXEDGRAD_BENCH_TRACE_CSV_HPP
#define MIXEDGRAD_BENCH_TRACE_CSV_HPP

#include "mixedgrad/trace.hpp"

#include <filesystem>
#include <iosfwd>
#include <vector>

namespace mixedgrad::bench {

inline constexpr const char* kTraceHeader =
    "solver,seed,epoch,step,stoch_calls,full_calls,objective,error,status";
inline constexpr const char* kSummaryHeader =
    "solver,seed,final_error,stoch_calls,full_calls,wall_ms";

/// Reals are written with 17 significant digits so that parsing restores
/// them exactly; a missing error is written as `nan`.
void write_trace_csv(std::ostream& out, const RunTrace& trace, bool header = true);
void write_trace_csv(const std::filesystem::path& path, const RunTrace& trace);

/// Consecutive rows sharing (solver, seed) form one trace.
std::vector<RunTrace> read_trace_csv(std::istream& in);
std::vector<RunTrace> read_trace_csv(const std::filesystem::path& path);

struct SummaryRow {
  std::string solver;
  std::uint64_t seed = 0;
  double final_error = 0.0;
  std::uint64_t stoch_calls = 0;
  std::uint64_t full_calls = 0;
  double wall_ms = 0.0;
};

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
void write_summary_csv(const std::filesystem::path& path, const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> read_summary_csv(std::istream& in);

}  // namespace mixedgrad::bench

#endif
