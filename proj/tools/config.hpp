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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace shormagic::cli {

/// Everything a subcommand needs to reproduce its output. Serialized into
/// manifest.json and readable back from there.
struct RunConfig {
  std::string command;
  std::uint64_t N = 0;
  std::vector<std::uint64_t> a;       ///< explicit coprimes
  std::vector<std::uint64_t> r;       ///< or: target periods, one coprime each
  std::vector<std::uint64_t> moduli;  ///< success-rate
  std::optional<unsigned> t;
  std::optional<unsigned> t_min;
  unsigned reps = 0;
  unsigned samples_per_r = 0;
  unsigned coprimes_per_r = 0;
  unsigned threads = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::string engine = "orbit";
  bool trace = false;
  bool exact_sre = true;

  bool operator==(const RunConfig &) const = default;
};

void to_json(nlohmann::json &j, const RunConfig &c);
void from_json(const nlohmann::json &j, RunConfig &c);

/// Reads a flat `key = value` file. '#' starts a comment; list values are
/// comma separated. Keys are option names without the leading dashes.
/// Throws Error("cli") on malformed lines or repeated keys.
std::map<std::string, std::string> read_config_file(const std::filesystem::path &path);

}  // namespace shormagic::cli
