// Copyright 2026 The wstate authors
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

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace wstate {

/// Thread cap: WSTATE_THREADS when set (>= 1), hardware concurrency otherwise.
inline int max_threads() {
    if (const char* env = std::getenv("WSTATE_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) {
            return v;
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

/**
 * Runs body(chunk_index, begin, end) over a fixed partition of [0, n).
 * The partition depends only on n and the thread cap, so per-chunk
 * accumulators can be merged in chunk order and results do not depend on
 * scheduling. Work items must be independent (e.g. keyed by shot index).
 */
template <class Body>
void parallel_chunks(std::int64_t n, const Body& body) {
    if (n <= 0) {
        return;
    }
    const int chunks =
        static_cast<int>(std::min<std::int64_t>(max_threads(), n));
    if (chunks <= 1) {
        body(0, std::int64_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(chunks);
    for (int c = 0; c < chunks; ++c) {
        const std::int64_t begin = n * c / chunks;
        const std::int64_t end = n * (c + 1) / chunks;
        pool.emplace_back([&body, c, begin, end] { body(c, begin, end); });
    }
    for (auto& worker : pool) {
        worker.join();
    }
}

} // namespace wstate
