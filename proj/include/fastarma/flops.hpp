#pragma once

#include <atomic>
#include <cstdint>

namespace fastarma {

/// Instrumentation shared by the O(1) kernels. Kernels charge the flops of
/// the loops they actually execute, so a counter that stays fixed while n
/// grows is direct evidence that no pass over the data happened.
class FlopCounter {
public:
    FlopCounter() = default;
    FlopCounter(const FlopCounter& other) noexcept
        : calls_(other.calls()), flops_(other.flops())
    {
    }
    FlopCounter& operator=(const FlopCounter& other) noexcept
    {
        calls_.store(other.calls(), std::memory_order_relaxed);
        flops_.store(other.flops(), std::memory_order_relaxed);
        return *this;
    }

    void add_flops(std::uint64_t n) noexcept { flops_.fetch_add(n, std::memory_order_relaxed); }
    void add_call() noexcept { calls_.fetch_add(1, std::memory_order_relaxed); }

    std::uint64_t calls() const noexcept { return calls_.load(std::memory_order_relaxed); }
    std::uint64_t flops() const noexcept { return flops_.load(std::memory_order_relaxed); }

    void reset() noexcept
    {
        calls_.store(0, std::memory_order_relaxed);
        flops_.store(0, std::memory_order_relaxed);
    }

private:
    std::atomic<std::uint64_t> calls_{0};
    std::atomic<std::uint64_t> flops_{0};
};

namespace detail {

inline void charge(FlopCounter* counter, std::uint64_t n) noexcept
{
    if (counter)
        counter->add_flops(n);
}

}  // namespace detail

}  // namespace fastarma
