#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace stockdata {

struct HttpRequest {
    std::string url;
    std::vector<std::pair<std::string, std::string>> headers;
};

namespace detail {
struct CaseInsensitiveLess {
    bool operator()(const std::string& a, const std::string& b) const;
};
}  // namespace detail

struct HttpResponse {
    int status = 0;
    std::string body;
    std::map<std::string, std::string, detail::CaseInsensitiveLess> headers;
};

// Executes one HTTP GET. Implementations must be safe to call from several
// threads at once. Network-level failures (DNS, connect, TLS) throw
// TransportError; any status the server actually produced comes back as a
// response.
class Transport {
public:
    virtual ~Transport() = default;
    virtual HttpResponse execute(const HttpRequest& request) = 0;
};

// Key under which a request is stored in a fixture directory: FNV-1a 64-bit
// hash of the full URL, as 16 lowercase hex digits.
std::string fixture_key(std::string_view url);

// Serves recorded responses from a fixture directory and never touches the
// network. A request whose URL has no recorded fixture throws FixtureMiss.
//
// Directory layout: one `<key>.http` file per URL (first line is the status
// code, the rest is the body verbatim) plus a `manifest.json` mapping keys
// back to URLs for humans.
class ReplayTransport final : public Transport {
public:
    explicit ReplayTransport(std::filesystem::path directory);
    HttpResponse execute(const HttpRequest& request) override;

private:
    std::filesystem::path directory_;
};

// Delegates to an inner (normally live) transport and records every
// response into a fixture directory in the ReplayTransport layout.
class RecordingTransport final : public Transport {
public:
    RecordingTransport(std::unique_ptr<Transport> inner, std::filesystem::path directory);
    HttpResponse execute(const HttpRequest& request) override;

private:
    std::unique_ptr<Transport> inner_;
    std::filesystem::path directory_;
    std::mutex mutex_;
};

// Live HTTP via libcurl. One easy handle per request keeps it thread-safe.
class CurlTransport final : public Transport {
public:
    explicit CurlTransport(std::string user_agent);
    HttpResponse execute(const HttpRequest& request) override;

private:
    std::string user_agent_;
};

}  // namespace stockdata
