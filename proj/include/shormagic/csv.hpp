// Copyright 2026 The shormagic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace shormagic {

/// In-memory CSV: header row plus string cells. Numbers go through
/// format_number so output bytes depend only on the values.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  void write(std::ostream &out) const;
  void write(const std::filesystem::path &path) const;
  /// Column index by name; throws when absent.
  std::size_t column(const std::string &name) const;
};

std::string format_number(double value);
std::string format_number(std::optional<double> value);

/// Parses a CSV produced by Table::write (no quoting).
Table read_csv(std::istream &in);

}  // namespace shormagic
