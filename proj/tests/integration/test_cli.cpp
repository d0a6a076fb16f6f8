/**
 *  Copyright (C) 2026 GrainLedger contributors.
 *  SPDX-License-Identifier: Apache-2.0
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */
#include "doctest.h"
#include "support/bench.hpp"
#include "support/live.hpp"

#include "grainledger/api/http.hpp"

#include <csignal>
#include <fcntl.h>
#include <fstream>
#include <spawn.h>
#include <sys/wait.h>
#include <thread>

extern char** environ;

using namespace grainledger;
using namespace std::chrono_literals;
namespace fs = std::filesystem;

namespace
{
struct Run
{
    int exit = -1;
    std::string output;
};

std::string quote(const std::string& s)
{
    std::string out = "'";
    for (char c : s)
        out += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return out + "'";
}

Run gl(const std::vector<std::string>& args)
{
    std::string cmd = quote(GL_CLI_PATH);
    for (const auto& a : args)
        cmd += " " + quote(a);
    cmd += " 2>&1";
    Run r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0)
        r.output.append(buf, n);
    int status = ::pclose(pipe);
    r.exit = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

/// gl running in the background with its output in a file.
class Background
{
public:
    Background(const std::vector<std::string>& args, const fs::path& log) : m_log(log)
    {
        std::vector<std::string> argv_storage{GL_CLI_PATH};
        argv_storage.insert(argv_storage.end(), args.begin(), args.end());
        std::vector<char*> argv;
        for (auto& a : argv_storage)
            argv.push_back(a.data());
        argv.push_back(nullptr);
        posix_spawn_file_actions_t actions;
        posix_spawn_file_actions_init(&actions);
        posix_spawn_file_actions_addopen(&actions, 1, log.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
        posix_spawn_file_actions_adddup2(&actions, 1, 2);
        REQUIRE(posix_spawn(&m_pid, argv[0], &actions, nullptr, argv.data(), environ) == 0);
        posix_spawn_file_actions_destroy(&actions);
    }

    ~Background()
    {
        if (m_pid > 0)
        {
            ::kill(m_pid, SIGKILL);
            ::waitpid(m_pid, nullptr, 0);
        }
    }

    /// Sends `sig` and returns the exit status, or -1 if the process was killed.
    int stop(int sig, std::chrono::seconds timeout = 20s)
    {
        ::kill(m_pid, sig);
        auto deadline = std::chrono::steady_clock::now() + timeout;
        int status = 0;
        while (std::chrono::steady_clock::now() < deadline)
        {
            if (::waitpid(m_pid, &status, WNOHANG) == m_pid)
            {
                m_pid = -1;
                return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
            }
            std::this_thread::sleep_for(20ms);
        }
        return -1;
    }

    std::string log() const { return test::read_text(m_log); }

private:
    pid_t m_pid = -1;
    fs::path m_log;
};

bool healthy(const std::string& url, std::chrono::seconds timeout = 15s)
{
    auto deadline = std::chrono::steady_clock::now() + timeout;
    while (std::chrono::steady_clock::now() < deadline)
    {
        try
        {
            if (api::JsonClient(url, 500ms).get("/healthz").status == 200)
                return true;
        }
        catch (const Error&)
        {
        }
        std::this_thread::sleep_for(50ms);
    }
    return false;
}

void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream(path, std::ios::binary | std::ios::trunc) << text;
}

/// Flips one byte inside the payload of the last block record of a file.
void flip_last_block(const fs::path& file)
{
    std::string data = test::read_text(file);
    std::size_t last = 0;
    for (std::size_t pos = 0; pos < data.size();)
    {
        last = pos;
        std::uint32_t n = 0;
        for (int i = 0; i < 4; ++i)
            n = (n << 8) | static_cast<std::uint8_t>(data[pos + i]);
        pos += 4 + n;
    }
    std::size_t target = last + 4 + (data.size() - last - 4) / 2;
    data[target] = data[target] == 'a' ? 'b' : 'a';
    write_text(file, data);
}
}  // namespace

TEST_SUITE("cli")
{
TEST_CASE("init writes one directory per node and refuses to overwrite")
{
    auto dir = test::scratch_dir("cli-init");
    auto r = gl({"init", "--out", (dir / "net").string(), "--seed", "7"});
    CHECK(r.exit == 0);
    CHECK(r.output.find("INSECURE") != std::string::npos);
    for (const char* node : {"coop-node", "warehouse-node", "bank-node"})
    {
        CHECK(fs::exists(dir / "net" / node / "node.json"));
        CHECK(fs::exists(dir / "net" / node / "node.key"));
    }
    CHECK(fs::exists(dir / "net" / "network.json"));
    CHECK_FALSE(fs::exists(dir / "net" / "coop-node" / "participants" / "p-bank-01.key"));

    CHECK(gl({"init", "--out", (dir / "net").string(), "--seed", "7"}).exit == 2);
    CHECK(gl({"init", "--out", (dir / "net").string(), "--seed", "7", "--force"}).exit == 0);

    auto a = gl({"init", "--out", (dir / "a").string(), "--seed", "7", "--json"});
    auto b = gl({"init", "--out", (dir / "b").string(), "--seed", "7", "--json"});
    auto c = gl({"init", "--out", (dir / "c").string(), "--seed", "8", "--json"});
    REQUIRE(a.exit == 0);
    auto ga = nlohmann::json::parse(a.output)["genesis"];
    CHECK(ga == nlohmann::json::parse(b.output)["genesis"]);
    CHECK(ga != nlohmann::json::parse(c.output)["genesis"]);
    CHECK(test::read_text(dir / "a" / "coop-node" / "node.key") == test::read_text(dir / "b" / "coop-node" / "node.key"));
}

TEST_CASE("bad input exits with status 2")
{
    auto dir = test::scratch_dir("cli-bad");
    write_text(dir / "topology.json", "{\"nodes\": [");
    CHECK(gl({"init", "--topology", (dir / "topology.json").string(), "--out", (dir / "net").string()}).exit == 2);
    write_text(dir / "empty.json", "{\"nodes\": [], \"channels\": [], \"policies\": []}");
    CHECK(gl({"init", "--topology", (dir / "empty.json").string(), "--out", (dir / "net2").string()}).exit == 2);
    CHECK(gl({"no-such-command"}).exit == 2);
    CHECK(gl({}).exit == 2);
    CHECK(gl({"verify", (dir / "missing").string()}).exit == 2);
    CHECK(gl({"submit", "--against", "http://127.0.0.1:1", "--user", "p-001", "--contract", "grain", "--op", "x", "--args", "{"}).exit == 2);
}

TEST_CASE("verify reports intact ledgers and names the first tampered block")
{
    auto dir = test::scratch_dir("cli-verify");
    auto csv = dir / "scenario.csv";
    REQUIRE(gl({"scenario", "generate", "--seed", "4", "--rows", "10", "--out", csv.string()}).exit == 0);
    auto sim = gl({"scenario", "run", csv.string(), "--sim", "--sim-out", (dir / "net").string()});
    CHECK(sim.exit == 0);

    auto ok = gl({"verify", (dir / "net").string()});
    CHECK(ok.exit == 0);
    CHECK(ok.output.find("intact") != std::string::npos);
    CHECK(ok.output.find("convergent") != std::string::npos);
    CHECK(gl({"verify", (dir / "net" / "bank-node").string()}).exit == 0);

    flip_last_block(dir / "net" / "coop-node" / "channels" / "gebn-main.blocks");
    auto bad = gl({"verify", (dir / "net" / "coop-node").string()});
    CHECK(bad.exit == 1);
    CHECK(bad.output.find("TAMPERED: first bad height") != std::string::npos);
    CHECK(gl({"verify", (dir / "net").string()}).exit == 1);

    // A byte that is not valid UTF-8 still gives a JSON report.
    auto file = dir / "net" / "bank-node" / "channels" / "gebn-main.blocks";
    std::string data = test::read_text(file);
    data[data.size() / 2] = '\xA9';
    write_text(file, data);
    auto json = gl({"verify", (dir / "net" / "bank-node").string(), "--json"});
    CHECK(json.exit == 1);
    auto report = nlohmann::json::parse(json.output, nullptr, false);
    REQUIRE_FALSE(report.is_discarded());
    bool failed = false;
    for (const auto& entry : report["files"])
        failed = failed || (entry["channel_id"] == "gebn-main" && entry.contains("failure"));
    CHECK(failed);
}

TEST_CASE("nodes serve, refuse a taken port, and stop cleanly on SIGINT")
{
    auto dir = test::scratch_dir("cli-run");
    const int base = test::free_port_base() + 1000;
    write_text(dir / "topology.json", test::local_topology(base).to_document().dump());
    REQUIRE(gl({"init", "--topology", (dir / "topology.json").string(), "--out", (dir / "net").string()}).exit == 0);
    auto csv = dir / "scenario.csv";
    REQUIRE(gl({"scenario", "generate", "--seed", "5", "--rows", "10", "--out", csv.string()}).exit == 0);

    Background network({"network", "run", (dir / "net").string()}, dir / "network.log");
    const std::string warehouse = "http://127.0.0.1:" + std::to_string(base + 6);
    REQUIRE(healthy(warehouse));
    REQUIRE(healthy("http://127.0.0.1:" + std::to_string(base + 5)));
    REQUIRE(healthy("http://127.0.0.1:" + std::to_string(base + 7)));

    auto clash = gl({"node", "run", (dir / "net" / "coop-node").string()});
    CHECK(clash.exit == 1);

    auto first = gl({"scenario", "run", csv.string(), "--against", warehouse});
    CHECK(first.exit == 0);
    CHECK(first.output.find("transactions VALID") != std::string::npos);
    auto repeat = gl({"scenario", "run", csv.string(), "--against", warehouse});
    CHECK(repeat.exit == 1);
    CHECK(repeat.output.find("DuplicateInvoice") != std::string::npos);

    auto submitted = gl({"submit", "--against", warehouse, "--user", "p-wh-01", "--contract", "grain", "--op", "record_weigh_in", "--args",
        R"({"Invoice_Number":"CLI-1","direction":"incoming","grain":"soy","gross_kg":30000,"producer_id":"p-001","tare_kg":10000,"truck_plate":"T"})",
        "--wait"});
    CHECK(submitted.exit == 0);
    CHECK(submitted.output.find("VALID") != std::string::npos);

    CHECK(network.stop(SIGINT) == 0);
    auto verify = gl({"verify", (dir / "net").string()});
    CHECK(verify.exit == 0);
    CHECK(verify.output.find("convergent") != std::string::npos);

    auto exported = gl({"state", "export", (dir / "net" / "coop-node").string(), "--channel", "gebn-main", "--out",
        (dir / "state.json").string()});
    CHECK(exported.exit == 0);
    auto state = nlohmann::json::parse(test::read_text(dir / "state.json"));
    CHECK(state["channel_id"] == "gebn-main");
    CHECK(state["state"].contains("com.agritech.WeighTicket#incoming:CLI-1"));
}
}
