#ifndef MIXEDGRAD_DATASET_IO_HPP
#define MIXEDGRAD_DATASET_IO_HPP

#include "mixedgrad/losses.hpp"

#include <filesystem>
#include <iosfwd>

namespace mixedgrad {

// CSV layout: header `y,x1,...,xd`, then one example per row.
Dataset read_dataset_csv(std::istream& in);
Dataset read_dataset_csv(const std::filesystem::path& path);

void write_dataset_csv(std::ostream& out, const Dataset& data);
void write_dataset_csv(const std::filesystem::path& path, const Dataset& data);

}  // namespace mixedgrad

#endif
