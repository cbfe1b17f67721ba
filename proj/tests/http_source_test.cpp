// Copyright 2026 The provent Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <httplib.h>

#include <atomic>
#include <thread>

#include "provent/container.hpp"
#include "provent/error.hpp"
#include "provent/http_source.hpp"
#include "test_support.hpp"

using namespace provent;
using namespace provent::testing;

namespace {

// Local server holding one file in memory; counts GET and ranged GET requests.
class FileServer {
public:
    explicit FileServer(Bytes data) : data_(std::move(data)) {
        server_.Get("/f.promc", [this](const httplib::Request& req, httplib::Response& res) {
            if (req.method == "GET") {
                ++gets_;
                if (req.has_header("Range")) ++ranged_;
            }
            res.set_content(std::string(data_.begin(), data_.end()), "application/zip");
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    ~FileServer() {
        server_.stop();
        thread_.join();
    }

    std::string url(const std::string& path = "/f.promc") const {
        return "http://127.0.0.1:" + std::to_string(port_) + path;
    }
    int gets() const { return gets_; }
    int ranged() const { return ranged_; }

private:
    Bytes data_;
    httplib::Server server_;
    int port_ = 0;
    std::thread thread_;
    std::atomic<int> gets_{0};
    std::atomic<int> ranged_{0};
};

}  // namespace

TEST_CASE("range reads against a local server") {
    auto cfg = golden_config();
    cfg.n_events = 300;
    cfg.pileup_mean = 50;
    const Bytes file = write_generated(cfg, "over http");
    FileServer server(file);

    auto http = std::make_shared<HttpRangeSource>(server.url());
    CHECK(http->length() == file.size());
    CHECK(http->read_at(0, 4) == Bytes(file.begin(), file.begin() + 4));
    CHECK(http->read_at(file.size() - 22, 22) == Bytes(file.end() - 22, file.end()));
    CHECK(http->read_at(10, 0).empty());
    CHECK_THROWS_AS(http->read_at(file.size() - 2, 10), Error);

    auto counting = std::make_shared<CountingSource>(http);
    const Reader remote(counting);
    const Reader local(std::make_shared<MemorySource>(file));
    CHECK(remote.event_count() == 300);
    CHECK(remote.descriptor() == local.descriptor());
    counting->reset();
    const int before = server.ranged();
    CHECK(remote.read_event(123) == local.read_event(123));
    CHECK(server.ranged() == before + 1);
    CHECK(counting->bytes_read() < file.size() / 20);
    CHECK(remote.index() == local.index());
    // every GET was a range request
    CHECK(server.gets() == server.ranged());
}

TEST_CASE("open_source dispatches on the scheme") {
    const Bytes file = write_generated(golden_config(), kGoldenDescription);
    FileServer server(file);
    const Reader r(open_source(server.url()));
    CHECK(r.event_count() == 2);
    CHECK(r.descriptor().description == kGoldenDescription);
}

TEST_CASE("http errors") {
    FileServer server(Bytes(10, 1));
    try {
        HttpRangeSource missing(server.url("/nope"));
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Io);
    }
    CHECK_THROWS_AS(HttpRangeSource("http://127.0.0.1:1/x"), Error);
}
