#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace dioph {

// Runs tasks 0..n-1 on `workers` threads and commits each result on the
// calling thread strictly in index order. Tasks must be pure functions of
// their index; then the committed sequence is identical for any worker
// count, which is what makes parallel output byte-reproducible.
//
// task(i) -> R; commit(i, R&&) -> bool, return false to cancel remaining
// work. A task exception is rethrown on the calling thread at its commit
// position.
template <class R>
void run_ordered(std::size_t n, unsigned workers,
                 const std::function<R(std::size_t)>& task,
                 const std::function<bool(std::size_t, R&&)>& commit) {
  if (n == 0) return;
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      if (!commit(i, task(i))) return;
    return;
  }

  struct Slot {
    std::optional<R> val;
    std::exception_ptr err;
    bool done = false;
  };

  std::mutex mu;
  std::condition_variable cv;
  std::vector<Slot> slots(n);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> cancel{false};
  // cap the lead a worker may take over the committer so slot memory stays
  // bounded when tasks finish out of order
  std::size_t committed = 0;  // guarded by mu
  const std::size_t max_lead = std::size_t(workers) * 4 + 8;

  auto worker_fn = [&] {
    while (!cancel.load(std::memory_order_relaxed)) {
      std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n) return;
      {
        std::unique_lock<std::mutex> lk(mu);
        cv.wait(lk, [&] { return cancel.load(std::memory_order_relaxed) || i < committed + max_lead; });
      }
      if (cancel.load(std::memory_order_relaxed)) return;
      Slot s;
      try {
        s.val.emplace(task(i));
      } catch (...) {
        s.err = std::current_exception();
      }
      s.done = true;
      {
        std::lock_guard<std::mutex> lk(mu);
        slots[i] = std::move(s);
      }
      cv.notify_all();
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker_fn);

  auto stop = [&] {
    cancel.store(true, std::memory_order_relaxed);
    cv.notify_all();
    for (auto& t : pool) t.join();
  };

  for (std::size_t i = 0; i < n; ++i) {
    Slot s;
    {
      std::unique_lock<std::mutex> lk(mu);
      cv.wait(lk, [&] { return slots[i].done; });
      s = std::move(slots[i]);
      committed = i + 1;
    }
    cv.notify_all();
    if (s.err) {
      stop();
      std::rethrow_exception(s.err);
    }
    bool keep_going;
    try {
      keep_going = commit(i, std::move(*s.val));
    } catch (...) {
      stop();
      throw;
    }
    if (!keep_going) break;
  }
  stop();
}

inline unsigned default_workers() {
  unsigned n = std::thread::hardware_concurrency();
  return n ? n : 1;
}

namespace detail {

// progress watcher: invokes cb(done, total) about once per second until done
class ProgressWatcher {
 public:
  ProgressWatcher(const std::function<void(std::uint64_t, std::uint64_t)>& cb,
                  const std::atomic<std::uint64_t>& counter, std::uint64_t total) {
    if (!cb) return;
    th_ = std::thread([&cb = cb, &counter, total, this] {
      auto last = std::chrono::steady_clock::now();
      while (!stop_.load(std::memory_order_relaxed)) {
        std::this_thread::sleep_for(std::chrono::milliseconds(100));
        auto now = std::chrono::steady_clock::now();
        if (now - last >= std::chrono::seconds(1)) {
          last = now;
          cb(counter.load(std::memory_order_relaxed), total);
        }
      }
    });
  }
  ~ProgressWatcher() {
    if (th_.joinable()) {
      stop_.store(true, std::memory_order_relaxed);
      th_.join();
    }
  }

 private:
  std::atomic<bool> stop_{false};
  std::thread th_;
};

}  // namespace detail

}  // namespace dioph
