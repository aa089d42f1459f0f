#pragma once

#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace cgim {

/// Fixed set of threads that repeatedly execute a blocked parallel-for.
/// Work is split into contiguous static blocks so the assignment of items to
/// workers depends only on the item count and the worker count.
class WorkerPool {
 public:
  using BlockFn = std::function<void(unsigned worker, std::size_t begin, std::size_t end)>;

  explicit WorkerPool(unsigned workers = 1);
  ~WorkerPool();

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  unsigned size() const noexcept { return workers_; }

  /// Runs fn over [0, count) and blocks until every block is done. The first
  /// exception thrown by any block is rethrown here.
  void for_blocks(std::size_t count, const BlockFn& fn);

 private:
  void worker_loop(unsigned id);
  void run_block(unsigned id);

  unsigned workers_;
  std::vector<std::thread> threads_;
  std::mutex mutex_;
  std::condition_variable wake_;
  std::condition_variable done_;
  const BlockFn* job_ = nullptr;
  std::size_t count_ = 0;
  std::size_t generation_ = 0;
  unsigned pending_ = 0;
  bool stopping_ = false;
  std::exception_ptr error_;
};

}  // namespace cgim
