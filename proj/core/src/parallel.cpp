#include "traj_manifold/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace traj_manifold {

namespace {

int read_env_cap() {
    const char* raw = std::getenv("TRAJ_MANIFOLD_THREADS");
    if (raw == nullptr) {
        return 0;
    }
    char* end = nullptr;
    long value = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || value < 0) {
        return 0; // unparsable values fall back to auto
    }
    return static_cast<int>(value);
}

std::atomic<int>& cap_storage() {
    static std::atomic<int> cap{read_env_cap()};
    return cap;
}

} // namespace

int thread_cap() {
    return cap_storage().load(std::memory_order_relaxed);
}

void set_thread_cap(int cap) {
    cap_storage().store(cap < 0 ? 0 : cap, std::memory_order_relaxed);
}

void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& body) {
    if (begin >= end) {
        return;
    }
    const std::size_t total = end - begin;
    int cap = thread_cap();
    unsigned hardware = std::max(1u, std::thread::hardware_concurrency());
    std::size_t workers = cap == 0 ? hardware : static_cast<std::size_t>(cap);
    workers = std::min<std::size_t>(workers, total);

    if (workers <= 1) {
        for (std::size_t i = begin; i < end; ++i) {
            body(i);
        }
        return;
    }

    std::mutex error_mutex;
    std::exception_ptr first_error;
    auto run_chunk = [&](std::size_t lo, std::size_t hi) {
        try {
            for (std::size_t i = lo; i < hi; ++i) {
                body(i);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) {
                first_error = std::current_exception();
            }
        }
    };

    // Static contiguous chunking: iteration -> chunk assignment is a pure
    // function of the range, so writes to disjoint slots land identically
    // for every thread count.
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t base = total / workers;
    const std::size_t extra = total % workers;
    std::size_t lo = begin;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t len = base + (w < extra ? 1 : 0);
        pool.emplace_back(run_chunk, lo, lo + len);
        lo += len;
    }
    for (auto& t : pool) {
        t.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
}

} // namespace traj_manifold
