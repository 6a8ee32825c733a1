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

#include "shormagic/csv.hpp"

#include <fmt/format.h>

#include <fstream>
#include <sstream>

#include "shormagic/error.hpp"

namespace shormagic {

void Table::add_row(std::vector<std::string> row) {
    if (row.size() != header.size()) {
        throw Error("experiments", "CSV row width " + std::to_string(row.size()) + " != header width " +
                                       std::to_string(header.size()));
    }
    rows.push_back(std::move(row));
}

namespace {
void write_line(std::ostream &out, const std::vector<std::string> &cells) {
    for (std::size_t i = 0; i < cells.size(); i++) {
        if (i) {
            out << ',';
        }
        out << cells[i];
    }
    out << '\n';
}
}  // namespace

void Table::write(std::ostream &out) const {
    write_line(out, header);
    for (const auto &row : rows) {
        write_line(out, row);
    }
}

void Table::write(const std::filesystem::path &path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("experiments", "cannot open " + path.string() + " for writing");
    }
    write(out);
}

std::size_t Table::column(const std::string &name) const {
    for (std::size_t i = 0; i < header.size(); i++) {
        if (header[i] == name) {
            return i;
        }
    }
    throw Error("experiments", "no column named " + name);
}

std::string format_number(double value) { return fmt::format("{:.12g}", value); }

std::string format_number(std::optional<double> value) { return value ? format_number(*value) : std::string(); }

Table read_csv(std::istream &in) {
    Table table;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            cells.push_back(cell);
        }
        if (!line.empty() && line.back() == ',') {
            cells.emplace_back();
        }
        if (first) {
            table.header = std::move(cells);
            first = false;
        } else {
            table.add_row(std::move(cells));
        }
    }
    return table;
}

}  // namespace shormagic
