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

#include "shormagic/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace shormagic {

unsigned default_thread_count() {
    if (const char *env = std::getenv("SHORMAGIC_THREADS")) {
        try {
            int v = std::stoi(env);
            if (v > 0) {
                return static_cast<unsigned>(v);
            }
        } catch (const std::exception &) {
        }
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)> &body, unsigned threads) {
    if (threads == 0) {
        threads = default_thread_count();
    }
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; i++) {
            body(i);
        }
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) {
                return;
            }
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next.store(count);
            }
        }
    };

    std::vector<std::thread> pool;
    unsigned n = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    pool.reserve(n);
    for (unsigned w = 0; w < n; w++) {
        pool.emplace_back(worker);
    }
    for (auto &t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

}  // namespace shormagic
