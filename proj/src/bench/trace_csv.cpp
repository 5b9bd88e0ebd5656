#include "mixedgrad/bench/trace_csv.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace mixedgrad::bench {

namespace {

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (!cells.empty() && !cells.back().empty() && cells.back().back() == '\r') {
    cells.back().pop_back();
  }
  return cells;
}

std::uint64_t to_u64(const std::string& s) {
  std::size_t used = 0;
  const auto v = std::stoull(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad integer '" + s + "'");
  return v;
}

double to_real(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad real '" + s + "'");
  return v;
}

void expect_header(std::istream& in, const char* header) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) throw std::invalid_argument("unexpected CSV header: " + line);
}

}  // namespace

void write_trace_csv(std::ostream& out, const RunTrace& trace, bool header) {
  if (header) out << kTraceHeader << '\n';
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto& r : trace.records) {
    out << trace.solver << ',' << trace.seed << ',' << r.epoch << ',' << r.step << ','
        << r.stoch_calls << ',' << r.full_calls << ',' << r.objective << ',' << r.error << ','
        << r.status << '\n';
  }
}

void write_trace_csv(const std::filesystem::path& path, const RunTrace& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_trace_csv(out, trace);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<RunTrace> read_trace_csv(std::istream& in) {
  expect_header(in, kTraceHeader);
  std::vector<RunTrace> traces;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto cells = split_row(line);
    if (cells.size() != 9) throw std::invalid_argument("trace row needs 9 fields: " + line);
    const std::uint64_t seed = to_u64(cells[1]);
    if (traces.empty() || traces.back().solver != cells[0] || traces.back().seed != seed) {
      RunTrace t;
      t.solver = cells[0];
      t.seed = seed;
      traces.push_back(std::move(t));
    }
    TraceRecord r;
    r.epoch = static_cast<int>(std::stol(cells[2]));
    r.step = to_u64(cells[3]);
    r.stoch_calls = to_u64(cells[4]);
    r.full_calls = to_u64(cells[5]);
    r.objective = to_real(cells[6]);
    r.error = to_real(cells[7]);
    r.status = cells[8];
    traces.back().records.push_back(std::move(r));
  }
  return traces;
}

std::vector<RunTrace> read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_trace_csv(in);
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << kSummaryHeader << '\n' << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto& r : rows) {
    out << r.solver << ',' << r.seed << ',' << r.final_error << ',' << r.stoch_calls << ','
        << r.full_calls << ',' << r.wall_ms << '\n';
  }
}

void write_summary_csv(const std::filesystem::path& path, const std::vector<SummaryRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_summary_csv(out, rows);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<SummaryRow> read_summary_csv(std::istream& in) {
  expect_header(in, kSummaryHeader);
  std::vector<SummaryRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto cells = split_row(line);
    if (cells.size() != 6) throw std::invalid_argument("summary row needs 6 fields: " + line);
    SummaryRow r;
    r.solver = cells[0];
    r.seed = to_u64(cells[1]);
    r.final_error = to_real(cells[2]);
    r.stoch_calls = to_u64(cells[3]);
    r.full_calls = to_u64(cells[4]);
    r.wall_ms = to_real(cells[5]);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace mixedgrad::bench
