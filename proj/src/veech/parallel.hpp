#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace veech {

// Runs fn(chunk) for chunk = 0..nchunks-1 on up to `workers` threads.
// Chunks are claimed from a shared counter; callers that need deterministic
// output should write into per-chunk slots and merge in chunk order.
inline void parallel_chunks(int nchunks, int workers, const std::function<void(int)> & fn)
{
    if (workers <= 1 || nchunks <= 1) {
        for (int i = 0; i < nchunks; ++i)
            fn(i);
        return;
    }
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= nchunks)
                return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    int nt = std::min(workers, nchunks);
    pool.reserve(nt);
    for (int i = 0; i < nt; ++i)
        pool.emplace_back(worker);
    for (auto & t : pool)
        t.join();
}

inline int default_workers()
{
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? (int)hw : 1;
}

} // namespace veech
