#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace syz {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

// Error taxonomy mirrors the CLI exit codes: parse -> 2, validation -> 3,
// compute -> 4. InternalError means a broken invariant, not bad input.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParseError : Error {
    using Error::Error;
};
struct ValidationError : Error {
    using Error::Error;
};
struct ComputeError : Error {
    using Error::Error;
};
struct InternalError : Error {
    using Error::Error;
};

// Deterministic RNG. mt19937_64 output is pinned by the standard, so the same
// seed gives the same stream on every platform; we avoid
// std::uniform_int_distribution for the same reason.
class Rng {
public:
    explicit Rng(u64 seed) : eng_(seed) {}

    u64 next() { return eng_(); }

    // uniform in [0, n), n > 0, via rejection
    u64 below(u64 n) {
        if (n == 0) throw InternalError("Rng::below(0)");
        u64 limit = UINT64_MAX - UINT64_MAX % n;
        u64 v;
        do {
            v = eng_();
        } while (v >= limit);
        return v % n;
    }

    // derive an independent stream for a named purpose
    Rng fork(u64 tag) {
        u64 s = next() ^ (0x9e3779b97f4a7c15ULL * (tag + 1));
        return Rng(s);
    }

private:
    std::mt19937_64 eng_;
};

// Runs fn(0..n-1) on a transient worker pool. Work items must be independent;
// callers get schedule-independent results by writing to disjoint slots. The
// first exception thrown by any item is rethrown on the calling thread.
inline void parallel_for(size_t n, unsigned threads, const std::function<void(size_t)>& fn) {
    if (n == 0) return;
    if (threads <= 1 || n == 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    unsigned workers = std::min<size_t>(threads, n);
    std::atomic<size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mu);
                    if (!err) err = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

inline u64 fnv1a(u64 h, u64 x) {
    for (int i = 0; i < 8; ++i) {
        h ^= (x >> (8 * i)) & 0xff;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace syz
