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

#include "config.hpp"

#include <fstream>
#include <sstream>

#include "shormagic/error.hpp"

namespace shormagic::cli {

namespace {

std::string trim(const std::string &s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

template <typename T>
void put_optional(nlohmann::json &j, const char *key, const std::optional<T> &v) {
    if (v) {
        j[key] = *v;
    } else {
        j[key] = nullptr;
    }
}

template <typename T>
void get_optional(const nlohmann::json &j, const char *key, std::optional<T> &v) {
    if (!j.contains(key) || j.at(key).is_null()) {
        v.reset();
    } else {
        v = j.at(key).get<T>();
    }
}

}  // namespace

void to_json(nlohmann::json &j, const RunConfig &c) {
    j = nlohmann::json{{"command", c.command},
                       {"N", c.N},
                       {"a", c.a},
                       {"r", c.r},
                       {"moduli", c.moduli},
                       {"reps", c.reps},
                       {"samples_per_r", c.samples_per_r},
                       {"coprimes_per_r", c.coprimes_per_r},
                       {"threads", c.threads},
                       {"seed", c.seed},
                       {"out", c.out},
                       {"engine", c.engine},
                       {"trace", c.trace},
                       {"exact_sre", c.exact_sre}};
    put_optional(j, "t", c.t);
    put_optional(j, "t_min", c.t_min);
}

void from_json(const nlohmann::json &j, RunConfig &c) {
    c = RunConfig{};
    j.at("command").get_to(c.command);
    j.at("N").get_to(c.N);
    j.at("a").get_to(c.a);
    j.at("r").get_to(c.r);
    j.at("moduli").get_to(c.moduli);
    j.at("reps").get_to(c.reps);
    j.at("samples_per_r").get_to(c.samples_per_r);
    j.at("coprimes_per_r").get_to(c.coprimes_per_r);
    j.at("threads").get_to(c.threads);
    j.at("seed").get_to(c.seed);
    j.at("out").get_to(c.out);
    j.at("engine").get_to(c.engine);
    j.at("trace").get_to(c.trace);
    j.at("exact_sre").get_to(c.exact_sre);
    get_optional(j, "t", c.t);
    get_optional(j, "t_min", c.t_min);
}

std::map<std::string, std::string> read_config_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cli", "cannot open config file " + path.string());
    }
    std::map<std::string, std::string> entries;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        number++;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error("cli", path.string() + ":" + std::to_string(number) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || key.starts_with("-")) {
            throw Error("cli", path.string() + ":" + std::to_string(number) + ": bad key '" + key + "'");
        }
        if (!entries.emplace(key, value).second) {
            throw Error("cli", path.string() + ":" + std::to_string(number) + ": repeated key '" + key + "'");
        }
    }
    return entries;
}

}  // namespace shormagic::cli
