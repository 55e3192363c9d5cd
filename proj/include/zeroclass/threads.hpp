/******************************************************************************
 * Copyright 2026 The zeroclass Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * 	http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 * @file threads.hpp
 * @brief Deterministic worker pool for independent jobs.
 *
 * parallel_for runs fn(i) for i in [0, n) across at most
 * ZEROCLASS_THREADS workers (unset or 0 = hardware concurrency). Jobs must
 * write only to their own output slot; results are then identical for any
 * worker count. The first exception, by job index, is rethrown.
 *****************************************************************************/
#ifndef ZEROCLASS_THREADS_HPP
#define ZEROCLASS_THREADS_HPP

#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "zeroclass/core.hpp"

namespace zeroclass {

inline int worker_count(std::size_t jobs) {
    long cap = 0;
    if (const char* env = std::getenv("ZEROCLASS_THREADS")) {
        char* end = nullptr;
        cap = std::strtol(env, &end, 10);
        if (end == env || cap < 0)
            throw zc_error("ZEROCLASS_THREADS must be a non-negative integer");
    }
    if (cap == 0) cap = static_cast<long>(std::thread::hardware_concurrency());
    if (cap < 1) cap = 1;
    if (static_cast<std::size_t>(cap) > jobs) cap = static_cast<long>(jobs);
    return static_cast<int>(cap);
}

template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    if (n == 0) return;
    const int workers = worker_count(n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(n);
    auto run = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace zeroclass

#endif  // ZEROCLASS_THREADS_HPP
