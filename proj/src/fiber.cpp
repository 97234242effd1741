#include "mpcl/fiber.hpp"

#include <ucontext.h>

#include <cstdint>
#include <deque>
#include <memory>
#include <stdexcept>
#include <vector>

namespace mpcl {

namespace {
constexpr size_t kStackSize = 256 * 1024;
}

struct Fiber {
    ucontext_t ctx{};
    ucontext_t return_ctx{};  // where to go on yield/finish
    std::unique_ptr<char[]> stack;
    std::function<void()> body;
    bool finished = false;
};

struct FiberScheduler::Impl {
    std::deque<Fiber*> runnable;
    std::vector<Fiber*> blocked;
    Fiber* current = nullptr;
    std::function<void()> stall;

    static void trampoline(unsigned hi, unsigned lo) {
        auto* f = reinterpret_cast<Fiber*>((uintptr_t(hi) << 32) |
                                           uintptr_t(lo));
        f->body();
        f->finished = true;
        swapcontext(&f->ctx, &f->return_ctx);
    }

    // Switch into f; returns when f yields or finishes.
    void resume(Fiber* f) {
        Fiber* prev = current;
        current = f;
        swapcontext(&f->return_ctx, &f->ctx);
        current = prev;
        if (f->finished) delete f;
    }

    // One scheduling step: run a task, or stall-flush to unblock everything.
    void drive() {
        if (!runnable.empty()) {
            Fiber* f = runnable.front();
            runnable.pop_front();
            resume(f);
            return;
        }
        if (!blocked.empty()) {
            if (stall) stall();
            for (Fiber* f : blocked) runnable.push_back(f);
            blocked.clear();
            return;
        }
        throw std::logic_error("fiber scheduler stalled with no tasks");
    }
};

FiberScheduler::FiberScheduler() : impl_(new Impl) {}
FiberScheduler::~FiberScheduler() { delete impl_; }

void FiberScheduler::set_stall_handler(std::function<void()> fn) {
    impl_->stall = std::move(fn);
}

bool FiberScheduler::in_fiber() const { return impl_->current != nullptr; }

void FiberScheduler::yield_blocked() {
    Fiber* f = impl_->current;
    if (!f) throw std::logic_error("yield outside fiber");
    impl_->blocked.push_back(f);
    swapcontext(&f->ctx, &f->return_ctx);
}

void FiberScheduler::parallel_for(size_t count,
                                  const std::function<void(size_t)>& body) {
    if (count == 0) return;
    size_t remaining = count;
    for (size_t i = 0; i < count; ++i) {
        Fiber* f = new Fiber;
        f->stack = std::make_unique<char[]>(kStackSize);
        f->body = [&body, &remaining, i] {
            body(i);
            --remaining;
        };
        getcontext(&f->ctx);
        f->ctx.uc_stack.ss_sp = f->stack.get();
        f->ctx.uc_stack.ss_size = kStackSize;
        f->ctx.uc_link = nullptr;
        auto p = reinterpret_cast<uintptr_t>(f);
        makecontext(&f->ctx, reinterpret_cast<void (*)()>(&Impl::trampoline),
                    2, unsigned(p >> 32), unsigned(p & 0xffffffffu));
        impl_->runnable.push_back(f);
    }
    while (remaining > 0) impl_->drive();
}

}  // namespace mpcl
