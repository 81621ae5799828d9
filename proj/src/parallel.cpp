#include "oafem/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace oafem {

std::size_t worker_count() {
    std::size_t hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const char* env = std::getenv("OBSTACLE_AFEM_THREADS");
    if (!env || *env == '\0') return hw;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v <= 0) return hw;
    return static_cast<std::size_t>(v);
}

void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    const std::size_t nchunks = (n + kChunkSize - 1) / kChunkSize;
    std::size_t workers = worker_count();
    if (workers > nchunks) workers = nchunks;
    if (workers <= 1) {
        for (std::size_t c = 0; c < nchunks; ++c) {
            std::size_t b = c * kChunkSize;
            std::size_t e = b + kChunkSize < n ? b + kChunkSize : n;
            fn(b, e);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            std::size_t c = next.fetch_add(1);
            if (c >= nchunks) return;
            std::size_t b = c * kChunkSize;
            std::size_t e = b + kChunkSize < n ? b + kChunkSize : n;
            fn(b, e);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t t = 0; t + 1 < workers; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
}

double chunked_sum(std::size_t n, const std::function<double(std::size_t, std::size_t)>& chunk_sum) {
    if (n == 0) return 0.0;
    const std::size_t nchunks = (n + kChunkSize - 1) / kChunkSize;
    std::vector<double> partial(nchunks, 0.0);
    parallel_chunks(n, [&](std::size_t b, std::size_t e) {
        std::size_t c = b / kChunkSize;
        partial[c] = chunk_sum(b, e);
    });
    double s = 0.0;
    for (double p : partial) s += p;
    return s;
}

}  // namespace oafem
