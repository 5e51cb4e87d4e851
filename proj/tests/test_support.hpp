#pragma once

#include "stockdata/rate_limiter.hpp"
#include "stockdata/transport.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace testsupport {

inline std::filesystem::path fixtures_dir() { return FIXTURES_DIR; }

inline std::string cli_path() { return STOCKDATA_CLI; }

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Unique scratch directory, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::mt19937_64 rng{std::random_device{}()};
        path_ = std::filesystem::temp_directory_path() /
                (tag + "-" + std::to_string(rng()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

// Returns one canned response per request, in order. A negative status
// raises TransportError instead, standing in for a connection failure.
class ScriptedTransport final : public stockdata::Transport {
public:
    struct Step {
        int status = 200;
        std::string body;
        std::vector<std::pair<std::string, std::string>> headers;
    };

    explicit ScriptedTransport(std::vector<Step> steps) : steps_(std::move(steps)) {}

    stockdata::HttpResponse execute(const stockdata::HttpRequest& request) override {
        urls.push_back(request.url);
        if (index_ >= steps_.size()) {
            throw stockdata::TransportError("scripted transport ran out of steps");
        }
        const Step& step = steps_[index_++];
        if (step.status < 0) throw stockdata::TransportError("scripted connection failure");
        stockdata::HttpResponse response;
        response.status = step.status;
        response.body = step.body;
        for (const auto& [name, value] : step.headers) response.headers[name] = value;
        return response;
    }

    std::vector<std::string> urls;

private:
    std::vector<Step> steps_;
    size_t index_ = 0;
};

// Virtual clock: sleeping advances time instantly and records the wait.
class FakeClock final : public stockdata::Clock {
public:
    std::chrono::steady_clock::time_point now() override { return now_; }

    void sleep_until(std::chrono::steady_clock::time_point deadline) override {
        auto wait = deadline > now_ ? deadline - now_ : std::chrono::steady_clock::duration::zero();
        sleeps.push_back(std::chrono::duration_cast<std::chrono::milliseconds>(wait));
        if (deadline > now_) now_ = deadline;
    }

    std::vector<std::chrono::milliseconds> sleeps;

private:
    std::chrono::steady_clock::time_point now_{};
};

// Reference computations the tests check the library against. Deliberately
// naive, sharing no code or approach with the implementation: the calendar
// is walked a unit at a time, and rounding runs on 128-bit integers.
namespace oracle {

inline bool is_leap(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

inline int days_in_month(int year, int month) {
    static const int days[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month == 2 && is_leap(year)) return 29;
    return days[month - 1];
}

inline std::int64_t epoch_seconds(int year, int month, int day, int hour, int minute,
                                  int second) {
    std::int64_t total_days = 0;
    for (int y = 1970; y < year; ++y) total_days += is_leap(y) ? 366 : 365;
    for (int m = 1; m < month; ++m) total_days += days_in_month(year, m);
    total_days += day - 1;
    return total_days * 86400 + hour * 3600 + minute * 60 + second;
}

inline std::string round_half_even(const std::string& token, int places) {
    std::string_view s = token;
    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    auto dot = s.find('.');
    std::string digits(dot == std::string_view::npos ? s : s.substr(0, dot));
    std::string frac(dot == std::string_view::npos ? std::string_view() : s.substr(dot + 1));

    __int128 value = 0;
    for (char c : digits + frac) value = value * 10 + (c - '0');

    __int128 quotient = value;
    if (frac.size() > static_cast<size_t>(places)) {
        __int128 divisor = 1;
        for (size_t i = 0; i < frac.size() - static_cast<size_t>(places); ++i) divisor *= 10;
        quotient = value / divisor;
        __int128 remainder = value % divisor;
        if (2 * remainder > divisor || (2 * remainder == divisor && quotient % 2 != 0)) {
            ++quotient;
        }
    } else {
        for (size_t i = 0; i < static_cast<size_t>(places) - frac.size(); ++i) quotient *= 10;
    }

    std::string raw;
    if (quotient == 0) raw = "0";
    while (quotient > 0) {
        raw.insert(raw.begin(), static_cast<char>('0' + static_cast<int>(quotient % 10)));
        quotient /= 10;
    }
    while (raw.size() <= static_cast<size_t>(places)) raw.insert(raw.begin(), '0');

    std::string out;
    if (negative && raw.find_first_not_of('0') != std::string::npos) out = "-";
    out += raw.substr(0, raw.size() - static_cast<size_t>(places));
    if (places > 0) out += "." + raw.substr(raw.size() - static_cast<size_t>(places));
    return out;
}

}  // namespace oracle

struct CommandResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

// Runs the CLI with `args` appended, capturing exit code and both streams.
inline CommandResult run_cli(const std::string& args) {
    TempDir capture("stockdata-cli-io");
    auto out_path = capture.path() / "out.txt";
    auto err_path = capture.path() / "err.txt";
    std::string command = cli_path() + " " + args + " >" + out_path.string() + " 2>" +
                          err_path.string();
    int raw = std::system(command.c_str());
    CommandResult result;
    result.exit_code = (raw >= 0 && WIFEXITED(raw)) ? WEXITSTATUS(raw) : -1;
    result.out = slurp(out_path);
    result.err = slurp(err_path);
    return result;
}

}  // namespace testsupport
