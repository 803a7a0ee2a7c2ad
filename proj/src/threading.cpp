#include "ddm/threading.hpp"

#include <atomic>
#include <condition_variable>
#include <cstdlib>
#include <mutex>
#include <thread>
#include <vector>

namespace ddm {

std::size_t max_threads() {
    static const std::size_t n = [] {
        if (const char* env = std::getenv("DDM_THREADS")) {
            const long v = std::strtol(env, nullptr, 10);
            if (v >= 1) return static_cast<std::size_t>(v);
        }
        const unsigned hc = std::thread::hardware_concurrency();
        return static_cast<std::size_t>(hc > 0 ? hc : 1);
    }();
    return n;
}

namespace {

// Minimal persistent pool: one task shared by all workers, chunks handed out
// via an atomic counter. Recreating threads per call would dominate the
// small per-iteration matmuls.
class Pool {
public:
    static Pool& instance() {
        static Pool p(max_threads());
        return p;
    }

    void run(std::size_t n_chunks, const std::function<void(std::size_t)>& chunk_fn) {
        if (workers_.empty() || n_chunks <= 1) {
            for (std::size_t c = 0; c < n_chunks; ++c) chunk_fn(c);
            return;
        }
        {
            std::lock_guard<std::mutex> lk(mu_);
            chunk_fn_ = &chunk_fn;
            n_chunks_ = n_chunks;
            next_chunk_.store(0, std::memory_order_relaxed);
            pending_.store(n_chunks, std::memory_order_relaxed);
            ++generation_;
        }
        cv_.notify_all();
        work();  // caller participates
        std::unique_lock<std::mutex> lk(mu_);
        done_cv_.wait(lk, [&] { return pending_.load(std::memory_order_acquire) == 0; });
        chunk_fn_ = nullptr;
    }

private:
    explicit Pool(std::size_t n_threads) {
        for (std::size_t i = 1; i < n_threads; ++i)
            workers_.emplace_back([this] { worker_loop(); });
    }

    ~Pool() {
        {
            std::lock_guard<std::mutex> lk(mu_);
            stop_ = true;
            ++generation_;
        }
        cv_.notify_all();
        for (auto& t : workers_) t.join();
    }

    void worker_loop() {
        std::uint64_t seen = 0;
        for (;;) {
            {
                std::unique_lock<std::mutex> lk(mu_);
                cv_.wait(lk, [&] { return stop_ || generation_ != seen; });
                if (stop_) return;
                seen = generation_;
            }
            work();
        }
    }

    void work() {
        const auto* fn = chunk_fn_;
        if (fn == nullptr) return;
        for (;;) {
            const std::size_t c = next_chunk_.fetch_add(1, std::memory_order_relaxed);
            if (c >= n_chunks_) break;
            (*fn)(c);
            if (pending_.fetch_sub(1, std::memory_order_acq_rel) == 1) {
                std::lock_guard<std::mutex> lk(mu_);
                done_cv_.notify_all();
            }
        }
    }

    std::vector<std::thread> workers_;
    std::mutex mu_;
    std::condition_variable cv_;
    std::condition_variable done_cv_;
    const std::function<void(std::size_t)>* chunk_fn_ = nullptr;
    std::size_t n_chunks_ = 0;
    std::atomic<std::size_t> next_chunk_{0};
    std::atomic<std::size_t> pending_{0};
    std::uint64_t generation_ = 0;
    bool stop_ = false;
};

}  // namespace

void parallel_for(std::size_t n, std::size_t grain,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    if (grain == 0) grain = 1;
    const std::size_t n_chunks = (n + grain - 1) / grain;
    if (n_chunks <= 1 || max_threads() <= 1) {
        fn(0, n);
        return;
    }
    Pool::instance().run(n_chunks, [&](std::size_t c) {
        const std::size_t begin = c * grain;
        const std::size_t end = begin + grain < n ? begin + grain : n;
        fn(begin, end);
    });
}

}  // namespace ddm
