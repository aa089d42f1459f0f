#include "cgim/worker_pool.hpp"

#include <algorithm>

namespace cgim {

WorkerPool::WorkerPool(unsigned workers) : workers_(std::max(1u, workers)) {
  threads_.reserve(workers_ - 1);
  for (unsigned id = 1; id < workers_; ++id) threads_.emplace_back([this, id] { worker_loop(id); });
}

WorkerPool::~WorkerPool() {
  {
    std::lock_guard lock(mutex_);
    stopping_ = true;
  }
  wake_.notify_all();
  for (auto& t : threads_) t.join();
}

void WorkerPool::run_block(unsigned id) {
  const std::size_t begin = count_ * id / workers_;
  const std::size_t end = count_ * (id + 1) / workers_;
  if (begin == end) return;
  try {
    (*job_)(id, begin, end);
  } catch (...) {
    std::lock_guard lock(mutex_);
    if (!error_) error_ = std::current_exception();
  }
}

void WorkerPool::worker_loop(unsigned id) {
  std::size_t seen = 0;
  for (;;) {
    {
      std::unique_lock lock(mutex_);
      wake_.wait(lock, [&] { return stopping_ || generation_ != seen; });
      if (stopping_) return;
      seen = generation_;
    }
    run_block(id);
    {
      std::lock_guard lock(mutex_);
      if (--pending_ == 0) done_.notify_one();
    }
  }
}

void WorkerPool::for_blocks(std::size_t count, const BlockFn& fn) {
  if (workers_ == 1) {
    if (count > 0) fn(0, 0, count);
    return;
  }
  {
    std::lock_guard lock(mutex_);
    job_ = &fn;
    count_ = count;
    pending_ = workers_ - 1;
    error_ = nullptr;
    ++generation_;
  }
  wake_.notify_all();
  run_block(0);
  std::exception_ptr error;
  {
    std::unique_lock lock(mutex_);
    done_.wait(lock, [&] { return pending_ == 0; });
    job_ = nullptr;
    error = std::exchange(error_, nullptr);
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace cgim
