// Copyright (c) 2026 NLRSim Developers.
// SPDX-License-Identifier: Apache-2.0
#ifndef NLR_IO_HPP
#define NLR_IO_HPP

#include <string>
#include <vector>

#include "nlr/types.hpp"

namespace nlr {

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Deterministic CSV writer: shortest round-trip formatting of doubles,
// fixed row order, '\n' line endings.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> columns);
  void add_row(const std::vector<double>& values);
  std::string str() const;
  void save(const std::string& path) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
};

std::string format_double(double value);

}  // namespace nlr

#endif  // NLR_IO_HPP
