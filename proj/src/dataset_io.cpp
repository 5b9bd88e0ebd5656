#include "mixedgrad/dataset_io.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace mixedgrad {

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(const std::string& cell, std::size_t line_no) {
  const std::string t = trim(cell);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || used != t.size()) {
    throw std::invalid_argument("line " + std::to_string(line_no) + ": '" + t +
                                "' is not a decimal real");
  }
  return value;
}

}  // namespace

Dataset read_dataset_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("dataset CSV is empty");
  const auto header = split_commas(line);
  if (header.size() < 2 || trim(header[0]) != "y") {
    throw std::invalid_argument("dataset CSV header must be y,x1,...,xd");
  }
  for (std::size_t j = 1; j < header.size(); ++j) {
    if (trim(header[j]) != "x" + std::to_string(j)) {
      throw std::invalid_argument("dataset CSV header column " + std::to_string(j) +
                                  " must be x" + std::to_string(j));
    }
  }
  const std::size_t d = header.size() - 1;

  std::vector<double> values;
  std::size_t rows = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_commas(line);
    if (cells.size() != d + 1) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(d + 1) + " fields");
    }
    for (const auto& c : cells) values.push_back(parse_real(c, line_no));
    ++rows;
  }
  if (rows == 0) throw std::invalid_argument("dataset CSV has no examples");

  Dataset data;
  data.features.resize(static_cast<Index>(rows), static_cast<Index>(d));
  data.labels.resize(static_cast<Index>(rows));
  for (std::size_t r = 0; r < rows; ++r) {
    data.labels[static_cast<Index>(r)] = values[r * (d + 1)];
    for (std::size_t j = 0; j < d; ++j) {
      data.features(static_cast<Index>(r), static_cast<Index>(j)) = values[r * (d + 1) + 1 + j];
    }
  }
  return data;
}

Dataset read_dataset_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_dataset_csv(in);
}

void write_dataset_csv(std::ostream& out, const Dataset& data) {
  out << "y";
  for (Index j = 0; j < data.dim(); ++j) out << ",x" << (j + 1);
  out << '\n' << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (Index i = 0; i < data.size(); ++i) {
    out << data.labels[i];
    for (Index j = 0; j < data.dim(); ++j) out << ',' << data.features(i, j);
    out << '\n';
  }
}

void write_dataset_csv(const std::filesystem::path& path, const Dataset& data) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_dataset_csv(out, data);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace mixedgrad
