#pragma once

#include <cstddef>
#include <functional>

namespace mpcl {

// Cooperative stackful tasks used to interleave batch iterations. Each
// iteration runs on its own stack; when it blocks on an unmaterialized
// shared value it yields back to the scheduler. When every live task is
// blocked, the stall handler runs (one communication round) and all tasks
// become runnable again. Scheduling is FIFO and single threaded, so runs
// are deterministic.
class FiberScheduler {
  public:
    FiberScheduler();
    ~FiberScheduler();
    FiberScheduler(const FiberScheduler&) = delete;

    // Runs `count` copies of `body` to completion, interleaving at yield
    // points. May be called from the main context or from inside a task.
    void parallel_for(size_t count, const std::function<void(size_t)>& body);

    // Marks the current task blocked and switches away. Must be called
    // from inside a task.
    void yield_blocked();

    bool in_fiber() const;

    // Invoked when no task can make progress without communication.
    void set_stall_handler(std::function<void()> fn);

  private:
    struct Impl;
    Impl* impl_;
};

}  // namespace mpcl
