#include "stockdata/transport.hpp"

#include "stockdata/errors.hpp"

#include <curl/curl.h>
#include <nlohmann/json.hpp>

#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace stockdata {

namespace detail {

bool CaseInsensitiveLess::operator()(const std::string& a, const std::string& b) const {
    const size_t n = std::min(a.size(), b.size());
    for (size_t i = 0; i < n; ++i) {
        const int ca = std::tolower(static_cast<unsigned char>(a[i]));
        const int cb = std::tolower(static_cast<unsigned char>(b[i]));
        if (ca != cb) {
            return ca < cb;
        }
    }
    return a.size() < b.size();
}

}  // namespace detail

std::string fixture_key(std::string_view url) {
    std::uint64_t hash = 14695981039346656037ULL;
    for (const char c : url) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

namespace {

std::filesystem::path fixture_file(const std::filesystem::path& dir, std::string_view url) {
    return dir / (fixture_key(url) + ".http");
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

ReplayTransport::ReplayTransport(std::filesystem::path directory)
    : directory_(std::move(directory)) {}

HttpResponse ReplayTransport::execute(const HttpRequest& request) {
    const auto path = fixture_file(directory_, request.url);
    if (!std::filesystem::exists(path)) {
        throw FixtureMiss("no fixture for " + request.url + " (expected " +
                          path.string() + ")");
    }
    const std::string raw = read_file(path);
    const size_t newline = raw.find('\n');
    if (newline == std::string::npos) {
        throw FixtureMiss("fixture " + path.string() + " has no status line");
    }
    HttpResponse response;
    try {
        response.status = std::stoi(raw.substr(0, newline));
    } catch (const std::exception&) {
        throw FixtureMiss("fixture " + path.string() + " has a bad status line");
    }
    response.body = raw.substr(newline + 1);
    return response;
}

RecordingTransport::RecordingTransport(std::unique_ptr<Transport> inner,
                                       std::filesystem::path directory)
    : inner_(std::move(inner)), directory_(std::move(directory)) {
    std::filesystem::create_directories(directory_);
}

HttpResponse RecordingTransport::execute(const HttpRequest& request) {
    HttpResponse response = inner_->execute(request);

    std::lock_guard<std::mutex> lock(mutex_);
    const auto path = fixture_file(directory_, request.url);
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot write " + path.string());
        }
        out << response.status << '\n' << response.body;
    }
    const auto manifest_path = directory_ / "manifest.json";
    nlohmann::json manifest = nlohmann::json::object();
    if (std::filesystem::exists(manifest_path)) {
        std::ifstream in(manifest_path);
        try {
            in >> manifest;
        } catch (const nlohmann::json::exception&) {
            manifest = nlohmann::json::object();
        }
    }
    manifest[fixture_key(request.url)] = request.url;
    std::ofstream out(manifest_path, std::ios::trunc);
    out << manifest.dump(2) << '\n';
    return response;
}

namespace {

size_t curl_write(void* data, size_t size, size_t nmemb, void* user) {
    auto* body = static_cast<std::string*>(user);
    body->append(static_cast<char*>(data), size * nmemb);
    return size * nmemb;
}

size_t curl_header(char* data, size_t size, size_t nmemb, void* user) {
    auto* headers =
        static_cast<std::map<std::string, std::string, detail::CaseInsensitiveLess>*>(user);
    const std::string line(data, size * nmemb);
    const size_t colon = line.find(':');
    if (colon != std::string::npos) {
        std::string name = line.substr(0, colon);
        std::string value = line.substr(colon + 1);
        auto trim = [](std::string& s) {
            const auto first = s.find_first_not_of(" \t\r\n");
            const auto last = s.find_last_not_of(" \t\r\n");
            s = first == std::string::npos ? "" : s.substr(first, last - first + 1);
        };
        trim(name);
        trim(value);
        (*headers)[name] = value;
    }
    return size * nmemb;
}

struct CurlGlobal {
    CurlGlobal() { curl_global_init(CURL_GLOBAL_DEFAULT); }
    ~CurlGlobal() { curl_global_cleanup(); }
};

}  // namespace

CurlTransport::CurlTransport(std::string user_agent) : user_agent_(std::move(user_agent)) {
    static CurlGlobal global;
    (void)global;
}

HttpResponse CurlTransport::execute(const HttpRequest& request) {
    CURL* curl = curl_easy_init();
    if (curl == nullptr) {
        throw TransportError("curl_easy_init failed");
    }
    HttpResponse response;
    curl_slist* header_list = nullptr;
    for (const auto& [name, value] : request.headers) {
        header_list = curl_slist_append(header_list, (name + ": " + value).c_str());
    }

    curl_easy_setopt(curl, CURLOPT_URL, request.url.c_str());
    curl_easy_setopt(curl, CURLOPT_USERAGENT, user_agent_.c_str());
    curl_easy_setopt(curl, CURLOPT_FOLLOWLOCATION, 1L);
    curl_easy_setopt(curl, CURLOPT_MAXREDIRS, 5L);
    curl_easy_setopt(curl, CURLOPT_TIMEOUT, 30L);
    curl_easy_setopt(curl, CURLOPT_WRITEFUNCTION, curl_write);
    curl_easy_setopt(curl, CURLOPT_WRITEDATA, &response.body);
    curl_easy_setopt(curl, CURLOPT_HEADERFUNCTION, curl_header);
    curl_easy_setopt(curl, CURLOPT_HEADERDATA, &response.headers);
    if (header_list != nullptr) {
        curl_easy_setopt(curl, CURLOPT_HTTPHEADER, header_list);
    }

    const CURLcode code = curl_easy_perform(curl);
    long status = 0;
    if (code == CURLE_OK) {
        curl_easy_getinfo(curl, CURLINFO_RESPONSE_CODE, &status);
    }
    curl_slist_free_all(header_list);
    curl_easy_cleanup(curl);

    if (code != CURLE_OK) {
        throw TransportError(std::string("curl: ") + curl_easy_strerror(code) + " for " +
                             request.url);
    }
    response.status = static_cast<int>(status);
    return response;
}

}  // namespace stockdata
