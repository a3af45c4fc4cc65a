#pragma once

#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace graphweave {

enum class PoolMode { Static, Dynamic };

/// Fixed set of persistent workers. The calling thread acts as worker 0.
class WorkerPool {
 public:
  explicit WorkerPool(int threads);
  ~WorkerPool();
  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  int size() const { return static_cast<int>(threads_.size()) + 1; }

  /// Calls fn(task, worker) for every task in [0, num_tasks). Static mode hands each
  /// worker one contiguous block; dynamic mode pulls tasks from a shared counter.
  /// The first exception thrown by any task is rethrown here.
  void run(std::size_t num_tasks, PoolMode mode, const std::function<void(std::size_t, int)>& fn);

 private:
  std::vector<std::thread> threads_;
  std::mutex mu_;
  std::condition_variable wake_;
  std::condition_variable done_;
  std::size_t generation_ = 0;
  int pending_ = 0;
  bool stop_ = false;

  const std::function<void(std::size_t, int)>* job_ = nullptr;
  std::size_t num_tasks_ = 0;
  PoolMode mode_ = PoolMode::Static;
  std::size_t next_ = 0;  // guarded by atomic_ref in work()
  std::exception_ptr error_;

  void loop(int worker);
  void work(int worker);
};

/// Thread count from GRAPHWEAVE_THREADS if set, otherwise `fallback`.
int resolve_thread_count(int fallback);

}  // namespace graphweave
