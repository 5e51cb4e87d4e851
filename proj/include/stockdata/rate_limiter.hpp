#pragma once

#include <chrono>
#include <mutex>

namespace stockdata {

// Time source for throttling and retry sleeps. Tests substitute a virtual
// clock so schedules are asserted without wall-time waits.
class Clock {
public:
    virtual ~Clock() = default;
    virtual std::chrono::steady_clock::time_point now() = 0;
    virtual void sleep_until(std::chrono::steady_clock::time_point deadline) = 0;

    void sleep_for(std::chrono::steady_clock::duration d) { sleep_until(now() + d); }
};

// Process-wide clock backed by std::chrono::steady_clock.
Clock& system_clock();

// Spaces acquisitions at least 1/per_second apart, globally across threads.
// acquire() blocks until the caller's slot arrives.
class RateLimiter {
public:
    RateLimiter(double per_second, Clock& clock = system_clock());

    void acquire();

private:
    std::chrono::steady_clock::duration interval_;
    Clock& clock_;
    std::mutex mutex_;
    std::chrono::steady_clock::time_point next_slot_;
};

}  // namespace stockdata
