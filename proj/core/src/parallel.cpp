#include "wsdsr/parallel.hpp"

#include <atomic>
#include <condition_variable>
#include <cstdlib>
#include <mutex>
#include <thread>
#include <vector>

namespace wsdsr {

namespace {

int resolve_worker_count() {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* env = std::getenv("SR_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1 && cap < n) n = cap;
    }
    return n;
}

// Lazily started pool shared by the whole process. Work items are claimed
// from an atomic counter and each index owns its output slot, so results do
// not depend on scheduling or thread count. One batch runs at a time; nested
// calls from inside a worker run inline.
class Pool {
public:
    static Pool& instance() {
        static Pool pool;
        return pool;
    }

    void run(int n, const std::function<void(int)>& fn) {
        if (n <= 0) return;
        if (workers_.empty() || n == 1 || in_pool_) {
            for (int i = 0; i < n; ++i) fn(i);
            return;
        }
        std::lock_guard<std::mutex> region(region_mutex_);
        {
            std::lock_guard<std::mutex> lock(mutex_);
            job_ = &fn;
            next_.store(0, std::memory_order_relaxed);
            total_ = n;
            checked_in_ = 0;
            ++batch_id_;
        }
        wake_.notify_all();

        claim_loop();

        // The job must outlive every worker's look at it, so wait for all of
        // them to check in even if they claimed nothing.
        std::unique_lock<std::mutex> lock(mutex_);
        done_.wait(lock, [this] { return checked_in_ == static_cast<int>(workers_.size()); });
        job_ = nullptr;
    }

private:
    Pool() {
        const int n = resolve_worker_count();
        for (int i = 0; i + 1 < n; ++i) workers_.emplace_back([this] { worker_loop(); });
    }

    ~Pool() {
        {
            std::lock_guard<std::mutex> lock(mutex_);
            stop_ = true;
        }
        wake_.notify_all();
        for (auto& t : workers_) t.join();
    }

    void worker_loop() {
        in_pool_ = true;
        std::uint64_t seen = 0;
        for (;;) {
            {
                std::unique_lock<std::mutex> lock(mutex_);
                wake_.wait(lock, [&] { return stop_ || batch_id_ != seen; });
                if (stop_) return;
                seen = batch_id_;
            }
            claim_loop();
            {
                std::lock_guard<std::mutex> lock(mutex_);
                ++checked_in_;
            }
            done_.notify_one();
        }
    }

    void claim_loop() {
        const std::function<void(int)>* fn = job_;
        const int total = total_;
        for (;;) {
            const int i = next_.fetch_add(1, std::memory_order_relaxed);
            if (i >= total) break;
            (*fn)(i);
        }
    }

    std::vector<std::thread> workers_;
    std::mutex region_mutex_;  // one batch at a time
    std::mutex mutex_;
    std::condition_variable wake_;
    std::condition_variable done_;
    const std::function<void(int)>* job_ = nullptr;
    std::atomic<int> next_{0};
    int total_ = 0;
    int checked_in_ = 0;
    std::uint64_t batch_id_ = 0;
    bool stop_ = false;
    static thread_local bool in_pool_;
};

thread_local bool Pool::in_pool_ = false;

}  // namespace

int worker_count() { return resolve_worker_count(); }

void parallel_for(int n, const std::function<void(int)>& fn) { Pool::instance().run(n, fn); }

}  // namespace wsdsr
