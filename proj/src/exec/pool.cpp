#include "graphweave/exec/pool.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>

namespace graphweave {

WorkerPool::WorkerPool(int threads) {
  for (int w = 1; w < std::max(1, threads); ++w) threads_.emplace_back([this, w] { loop(w); });
}

WorkerPool::~WorkerPool() {
  {
    std::lock_guard<std::mutex> lock(mu_);
    stop_ = true;
  }
  wake_.notify_all();
  for (auto& t : threads_) t.join();
}

void WorkerPool::work(int worker) {
  const auto& fn = *job_;
  try {
    if (mode_ == PoolMode::Static) {
      auto workers = static_cast<std::size_t>(size());
      std::size_t per = num_tasks_ / workers;
      std::size_t extra = num_tasks_ % workers;
      auto w = static_cast<std::size_t>(worker);
      std::size_t begin = w * per + std::min(w, extra);
      std::size_t end = begin + per + (w < extra ? 1 : 0);
      for (std::size_t t = begin; t < end; ++t) fn(t, worker);
    } else {
      std::atomic_ref<std::size_t> next(next_);
      for (std::size_t t = next.fetch_add(1); t < num_tasks_; t = next.fetch_add(1)) fn(t, worker);
    }
  } catch (...) {
    std::lock_guard<std::mutex> lock(mu_);
    if (!error_) error_ = std::current_exception();
    if (mode_ == PoolMode::Dynamic) std::atomic_ref<std::size_t>(next_).store(num_tasks_);
  }
}

void WorkerPool::loop(int worker) {
  std::size_t seen = 0;
  while (true) {
    {
      std::unique_lock<std::mutex> lock(mu_);
      wake_.wait(lock, [&] { return stop_ || generation_ != seen; });
      if (stop_) return;
      seen = generation_;
    }
    work(worker);
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (--pending_ == 0) done_.notify_one();
    }
  }
}

void WorkerPool::run(std::size_t num_tasks, PoolMode mode, const std::function<void(std::size_t, int)>& fn) {
  if (num_tasks == 0) return;
  if (threads_.empty() || num_tasks == 1) {
    for (std::size_t t = 0; t < num_tasks; ++t) fn(t, 0);
    return;
  }
  {
    std::lock_guard<std::mutex> lock(mu_);
    job_ = &fn;
    num_tasks_ = num_tasks;
    mode_ = mode;
    next_ = 0;
    error_ = nullptr;
    pending_ = static_cast<int>(threads_.size());
    ++generation_;
  }
  wake_.notify_all();
  work(0);
  std::exception_ptr err;
  {
    std::unique_lock<std::mutex> lock(mu_);
    done_.wait(lock, [&] { return pending_ == 0; });
    err = error_;
    job_ = nullptr;
  }
  if (err) std::rethrow_exception(err);
}

int resolve_thread_count(int fallback) {
  if (const char* env = std::getenv("GRAPHWEAVE_THREADS")) {
    try {
      int t = std::stoi(env);
      if (t >= 1) return t;
    } catch (const std::logic_error&) {
    }
  }
  return std::max(1, fallback);
}

}  // namespace graphweave
