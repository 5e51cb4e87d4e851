#include "stockdata/rate_limiter.hpp"

#include "stockdata/errors.hpp"

#include <thread>

namespace stockdata {

namespace {

class SystemClock final : public Clock {
public:
    std::chrono::steady_clock::time_point now() override {
        return std::chrono::steady_clock::now();
    }
    void sleep_until(std::chrono::steady_clock::time_point deadline) override {
        std::this_thread::sleep_until(deadline);
    }
};

}  // namespace

Clock& system_clock() {
    static SystemClock clock;
    return clock;
}

RateLimiter::RateLimiter(double per_second, Clock& clock) : clock_(clock) {
    if (per_second <= 0.0) throw UsageError("rate limit must be positive");
    interval_ = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
        std::chrono::duration<double>(1.0 / per_second));
    next_slot_ = clock_.now();
}

void RateLimiter::acquire() {
    std::chrono::steady_clock::time_point slot;
    {
        std::lock_guard lock(mutex_);
        auto now = clock_.now();
        slot = std::max(next_slot_, now);
        next_slot_ = slot + interval_;
    }
    clock_.sleep_until(slot);
}

}  // namespace stockdata
