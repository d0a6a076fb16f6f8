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
#include "grainledger/api/client.hpp"
#include "grainledger/api/node_host.hpp"
#include "grainledger/api/server.hpp"
#include "grainledger/grain/scenario.hpp"
#include "grainledger/network/audit.hpp"
#include "grainledger/network/bootstrap.hpp"
#include "grainledger/network/sim.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace grainledger;
namespace fs = std::filesystem;

namespace
{
constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

/// Error codes that mean the input was wrong rather than the run.
bool is_usage_error(ErrorCode code)
{
    switch (code)
    {
    case ErrorCode::BadConfig:
    case ErrorCode::InvalidArgument:
    case ErrorCode::BadFormat:
        return true;
    default:
        return false;
    }
}

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorCode::BadConfig, "cannot read " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void print_json(const ledger::Document& doc)
{
    // Audit reasons may quote corrupted bytes.
    std::cout << doc.dump(2, ' ', false, ledger::Document::error_handler_t::replace) << "\n";
}

/// Left-aligned text table.
void print_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows)
{
    std::vector<std::size_t> width(header.size());
    for (std::size_t i = 0; i < header.size(); ++i)
        width[i] = header[i].size();
    for (const auto& r : rows)
        for (std::size_t i = 0; i < r.size() && i < width.size(); ++i)
            width[i] = std::max(width[i], r[i].size());
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i)
        {
            if (i + 1 < cells.size())
                std::cout << std::left << std::setw(static_cast<int>(width[i]) + 2) << cells[i];
            else
                std::cout << cells[i];
        }
        std::cout << "\n";
    };
    line(header);
    for (const auto& r : rows)
        line(r);
}

std::string short_hash(const std::string& hex)
{
    return hex.size() > 16 ? hex.substr(0, 16) : hex;
}

const char* env_or_null(const char* name)
{
    const char* v = std::getenv(name);
    return v && *v ? v : nullptr;
}

/// Blocks SIGINT/SIGTERM for all threads and returns the set to wait on.
sigset_t block_signals()
{
    sigset_t set;
    sigemptyset(&set);
    sigaddset(&set, SIGINT);
    sigaddset(&set, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &set, nullptr);
    return set;
}

void wait_for_signal(const sigset_t& set)
{
    int sig = 0;
    sigwait(&set, &sig);
}

std::map<std::string, std::string> password_map(const std::vector<std::string>& pairs)
{
    std::map<std::string, std::string> out;
    for (const auto& p : pairs)
    {
        auto eq = p.find('=');
        if (eq == std::string::npos || eq == 0)
            fail(ErrorCode::InvalidArgument, "--password expects <participant>=<password>, got '" + p + "'");
        out[p.substr(0, eq)] = p.substr(eq + 1);
    }
    return out;
}

/// Demo credentials: "<id>-password" unless given explicitly.
std::string password_for(const std::map<std::string, std::string>& given, const std::string& id)
{
    auto it = given.find(id);
    return it == given.end() ? id + "-password" : it->second;
}

// ---------------------------------------------------------------- init

struct InitArgs
{
    std::string topology;
    std::string out;
    std::optional<std::uint64_t> seed;
    bool force = false;
    bool json = false;
};

int cmd_init(const InitArgs& a)
{
    network::Topology topology = network::default_topology();
    if (!a.topology.empty())
    {
        ledger::Document doc;
        try
        {
            doc = ledger::parse_document(read_file(a.topology));
        }
        catch (const Error& e)
        {
            fail(ErrorCode::BadConfig, a.topology + ": " + e.message());
        }
        topology = network::Topology::from_document(doc);
    }
    if (a.seed)
        topology.seed = *a.seed;
    auto bundle = network::bootstrap_network(topology);
    network::write_network_dir(bundle, a.out, a.force);

    ledger::Document genesis = ledger::Document::object();
    for (const auto& [channel, block] : bundle.genesis)
        genesis[channel] = block.hash.hex();
    if (a.json)
    {
        ledger::Document nodes = ledger::Document::array();
        for (const auto& n : topology.nodes)
            nodes.push_back({{"dir", (fs::path(a.out) / n.node_id).string()}, {"node_id", n.node_id}});
        print_json({{"genesis", genesis}, {"insecure_seeded_keys", topology.seed.has_value()}, {"nodes", nodes},
            {"out", a.out}});
        return kOk;
    }
    if (topology.seed)
        std::cout << "WARNING: keys derived from seed " << *topology.seed << " are INSECURE (test fixtures only)\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& n : topology.nodes)
    {
        std::string channels;
        for (const auto& c : n.channels)
            channels += (channels.empty() ? "" : ",") + c;
        rows.push_back({n.node_id, std::string(to_string(n.org)), n.endpoint, n.api_listen, channels,
            n.is_orderer ? "yes" : ""});
    }
    print_table({"NODE", "ORG", "ENDPOINT", "API", "CHANNELS", "ORDERER"}, rows);
    std::cout << "\n";
    rows.clear();
    for (const auto& [channel, hash] : genesis.items())
        rows.push_back({channel, hash.get<std::string>()});
    print_table({"CHANNEL", "GENESIS"}, rows);
    std::cout << "\nnetwork written to " << a.out << "\n";
    return kOk;
}

// ---------------------------------------------------------------- node / network run

struct RunArgs
{
    std::string dir;
    std::string listen;
    std::string peer_listen;
    std::string ui;
};

struct RunningNode
{
    std::unique_ptr<api::NodeHost> host;
    std::unique_ptr<api::ApiServer> server;
};

RunningNode start_node(const fs::path& dir, const RunArgs& a)
{
    RunningNode n;
    auto node_dir = network::load_node_dir(dir);
    const std::string listen = a.listen.empty() ? node_dir.settings.config.api_listen : a.listen;
    api::HostOptions host_options;
    if (!a.peer_listen.empty())
        host_options.peer_listen = a.peer_listen;
    n.host = std::make_unique<api::NodeHost>(std::move(node_dir), host_options);
    n.host->start();
    api::ApiOptions api_options;
    api_options.listen = listen;
    if (!a.ui.empty())
        api_options.ui_dir = a.ui;
    else if (fs::is_directory(dir / "ui"))
        api_options.ui_dir = dir / "ui";
    n.server = std::make_unique<api::ApiServer>(*n.host, api_options);
    n.server->start();
    std::cout << n.host->node_id() << ": node on " << n.host->peer_port() << ", API on " << listen << std::endl;
    return n;
}

int cmd_node_run(RunArgs a)
{
    if (a.dir.empty())
    {
        if (const char* cfg = env_or_null("GL_NODE_CONFIG"))
        {
            fs::path p(cfg);
            a.dir = (p.filename() == "node.json" ? p.parent_path() : p).string();
        }
        else if (const char* data = env_or_null("GL_DATA_DIR"))
        {
            a.dir = data;
        }
    }
    if (a.dir.empty())
        fail(ErrorCode::InvalidArgument, "node directory required (argument, GL_NODE_CONFIG or GL_DATA_DIR)");
    if (a.listen.empty())
        if (const char* listen = env_or_null("GL_LISTEN_ADDR"))
            a.listen = listen;
    if (!fs::exists(fs::path(a.dir) / "node.json"))
        fail(ErrorCode::BadConfig, a.dir + " is not an initialised node directory");

    sigset_t signals = block_signals();
    RunningNode node = start_node(a.dir, a);
    wait_for_signal(signals);
    std::cout << "shutting down" << std::endl;
    node.server->stop();
    node.host->stop();
    return kOk;
}

int cmd_network_run(const std::string& net_dir)
{
    sigset_t signals = block_signals();
    std::vector<RunningNode> nodes;
    auto dirs = network::network_node_dirs(net_dir);
    // Orderer first, so the others find it on their first sync.
    std::stable_partition(dirs.begin(), dirs.end(),
        [](const fs::path& d) { return network::load_node_dir(d).settings.config.is_orderer; });
    for (const auto& dir : dirs)
        nodes.push_back(start_node(dir, RunArgs{}));
    wait_for_signal(signals);
    std::cout << "shutting down" << std::endl;
    for (auto& n : nodes)
        n.server->stop();
    for (bool orderer : {false, true})
        for (auto& n : nodes)
            if ((n.host->orderer() != nullptr) == orderer)
                n.host->stop();
    return kOk;
}

// ---------------------------------------------------------------- scenario

struct ScenarioArgs
{
    std::string file;
    std::string against;
    bool sim = false;
    std::string sim_out;
    std::uint64_t seed = 1;
    std::vector<std::string> passwords;
    std::string warehouse = "p-wh-01";
    std::string qa = "p-qa-01";
    std::string channel = "gebn-main";
    bool json = false;
};

int report_scenario(const grain::ScenarioReport& report, bool json)
{
    if (json)
    {
        print_json(report.to_document());
        return report.all_valid() ? kOk : kFailure;
    }
    std::vector<std::vector<std::string>> rows;
    for (const auto& s : report.log)
        rows.push_back({s.step, s.subject, std::string(grain::to_string(s.result.status)), s.result.tx_id});
    print_table({"STEP", "SUBJECT", "STATUS", "TX_ID"}, rows);
    auto failures = report.failures();
    if (failures.empty())
    {
        std::cout << "\nall " << report.log.size() << " transactions VALID\n";
        return kOk;
    }
    std::cout << "\n" << failures.size() << " failed:\n";
    rows.clear();
    for (const auto* f : failures)
        rows.push_back({f->subject, f->step, std::string(grain::to_string(f->result.status)), f->result.error});
    print_table({"ROW", "STEP", "STATUS", "ERROR"}, rows);
    return kFailure;
}

int cmd_scenario_run(const ScenarioArgs& a)
{
    grain::Scenario scenario;
    scenario.intakes = grain::parse_scenario_csv(read_file(a.file));
    scenario.lots = grain::default_lots(scenario.intakes);
    grain::ScenarioParticipants who{a.warehouse, a.qa, a.channel};
    if (a.sim == !a.against.empty())
        fail(ErrorCode::InvalidArgument, "give exactly one of --against <api-url> or --sim");
    if (a.sim)
    {
        network::Topology topology = network::default_topology();
        topology.seed = a.seed;
        std::optional<fs::path> out;
        if (!a.sim_out.empty())
            out = a.sim_out;
        network::SimNetwork net(network::bootstrap_network(topology), network::SimOptions{a.seed}, out);
        network::SimScenarioClient client(net);
        auto report = grain::run_scenario(scenario, client, who);
        int rc = report_scenario(report, a.json);
        if (!a.json)
        {
            auto conv = net.convergence();
            std::cout << (conv.converged() ? "network converged" : "network DID NOT converge") << "\n";
            if (!conv.converged())
                rc = kFailure;
        }
        return rc;
    }
    auto given = password_map(a.passwords);
    std::map<std::string, std::string> passwords;
    for (const auto& id : {a.warehouse, a.qa})
        passwords[id] = password_for(given, id);
    api::HttpScenarioClient client(a.against, passwords);
    return report_scenario(grain::run_scenario(scenario, client, who), a.json);
}

int cmd_scenario_generate(std::uint64_t seed, std::size_t rows, std::size_t silos, const std::string& out)
{
    auto scenario = grain::generate_scenario(seed, rows, silos);
    std::string csv = grain::write_scenario_csv(scenario.intakes);
    if (out.empty() || out == "-")
    {
        std::cout << csv;
        return kOk;
    }
    std::ofstream f(out, std::ios::binary | std::ios::trunc);
    if (!f)
        fail(ErrorCode::Io, "cannot write " + out);
    f << csv;
    return kOk;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const std::string& path, bool json)
{
    network::AuditReport report;
    const bool network_dir = fs::exists(fs::path(path) / "network.json");
    if (network_dir)
        report = network::audit_network_dir(path);
    else if (fs::exists(fs::path(path) / "node.json"))
        report = network::audit_node_dir(path);
    else
        fail(ErrorCode::BadConfig, path + " is neither a node nor a network directory");

    // Convergence: every committed copy of a channel ends at the same tip.
    std::map<std::string, std::set<std::string>> tips;
    for (const auto& f : report.files)
        if (f.kind == "channel")
            tips[f.channel_id].insert(f.tip.hex());
    bool convergent = std::all_of(tips.begin(), tips.end(), [](const auto& t) { return t.second.size() == 1; });

    if (json)
    {
        auto doc = report.to_document();
        doc["convergent"] = convergent;
        print_json(doc);
        return report.ok() ? kOk : kFailure;
    }
    std::vector<std::vector<std::string>> rows;
    for (const auto& f : report.files)
    {
        std::string status = f.failure ? "FAIL at height " + std::to_string(f.failure->height) + ": " + f.failure->reason
                                       : "ok";
        rows.push_back({f.node_id, f.kind, f.channel_id, std::to_string(f.blocks), short_hash(f.tip.hex()), status});
    }
    print_table({"NODE", "KIND", "CHANNEL", "BLOCKS", "TIP", "STATUS"}, rows);
    for (const auto& p : report.problems)
        std::cout << "problem: " << p << "\n";
    if (!report.ok())
    {
        std::optional<std::uint64_t> first;
        for (const auto& f : report.files)
            if (f.failure && (!first || f.failure->height < *first))
                first = f.failure->height;
        std::cout << "\nTAMPERED";
        if (first)
            std::cout << ": first bad height " << *first;
        std::cout << "\n";
        return kFailure;
    }
    std::cout << "\nintact\n";
    if (network_dir)
        std::cout << (convergent ? "convergent: all channel tips equal across nodes\n"
                                 : "not convergent: nodes hold different channel tips\n");
    return kOk;
}

// ---------------------------------------------------------------- submit / query

struct ClientArgs
{
    std::string against;
    std::string user;
    std::string password;
    std::string channel;
    bool json = false;
};

api::ApiSession open_session(const ClientArgs& a)
{
    if (a.against.empty() || a.user.empty())
        fail(ErrorCode::InvalidArgument, "--against and --user are required");
    std::string password = a.password;
    if (password.empty())
        if (const char* env = env_or_null("GL_PASSWORD"))
            password = env;
    if (password.empty())
        password = a.user + "-password";
    return api::ApiSession(a.against, a.user, password);
}

int cmd_submit(const ClientArgs& c, const std::string& contract, const std::string& op, const std::string& args_text,
    bool wait)
{
    ledger::Document args;
    try
    {
        args = args_text.empty() ? ledger::Document::object() : ledger::parse_document(args_text);
    }
    catch (const Error& e)
    {
        fail(ErrorCode::InvalidArgument, "--args: " + e.message());
    }
    auto session = open_session(c);
    auto res = session.submit(c.channel, contract, op, args);
    if (!res.body.is_object() || !res.body.contains("tx_id"))
        res.raise();
    const std::string tx_id = res.body["tx_id"].get<std::string>();
    ledger::Document result = res.body;
    if (wait)
        result = session.wait_terminal(tx_id, std::chrono::seconds(60));
    if (c.json)
        print_json(result);
    else
        std::cout << tx_id << " " << result.value("status", "") << (result.contains("reason") ? " " + result.value("reason", "") : "")
                  << (res.status == 422 ? " " + res.body.value("message", "") : "") << "\n";
    if (wait)
        return result.value("status", "") == "VALID" ? kOk : kFailure;
    return res.ok() ? kOk : kFailure;
}

int cmd_query(const ClientArgs& c, const std::string& what, const std::vector<std::string>& params,
    const std::vector<std::string>& filters)
{
    auto session = open_session(c);
    auto with_channel = [&](std::string path, bool has_query) {
        if (!c.channel.empty())
            path += (has_query ? "&channel=" : "?channel=") + c.channel;
        return path;
    };
    auto need = [&](std::size_t n, const char* usage) {
        if (params.size() != n)
            fail(ErrorCode::InvalidArgument, std::string("usage: gl query ") + usage);
    };
    ledger::Document out;
    if (what == "asset")
    {
        need(2, "asset <registry> <id>");
        out = session.get(with_channel("/assets/" + params[0] + "/" + params[1], false));
    }
    else if (what == "assets")
    {
        need(1, "assets <registry> [--filter field=value]");
        std::string path = "/assets/" + params[0];
        bool first = true;
        for (const auto& f : filters)
        {
            path += (first ? "?" : "&") + f;
            first = false;
        }
        out = session.get(with_channel(path, !first));
    }
    else if (what == "tx")
    {
        need(1, "tx <tx_id>");
        out = session.get("/transactions/" + params[0]);
    }
    else if (what == "lot")
    {
        need(1, "lot <lot_id>");
        out = session.get(with_channel("/provenance/lots/" + params[0], false));
    }
    else if (what == "receipt")
    {
        need(1, "receipt <invoice>");
        out = session.get(with_channel("/receipts/" + params[0], false));
    }
    else if (what == "channels")
    {
        need(0, "channels");
        out = session.get("/channels");
    }
    else
    {
        fail(ErrorCode::InvalidArgument, "unknown query '" + what + "' (asset, assets, tx, lot, receipt, channels)");
    }
    print_json(out);
    return kOk;
}

int cmd_state_export(const std::string& node_dir, const std::string& channel, const std::string& out)
{
    auto doc = network::export_state(node_dir, channel.empty() ? "gebn-main" : channel);
    std::string text = ledger::canonicalize(doc) + "\n";
    if (out.empty() || out == "-")
    {
        std::cout << text;
        return kOk;
    }
    std::ofstream f(out, std::ios::binary | std::ios::trunc);
    if (!f)
        fail(ErrorCode::Io, "cannot write " + out);
    f << text;
    return kOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"gl: GrainLedger node and network tool"};
    app.require_subcommand(1);
    int rc = kOk;

    InitArgs init;
    auto* init_cmd = app.add_subcommand("init", "create keys, genesis blocks and node directories");
    init_cmd->add_option("--topology", init.topology, "topology JSON (default: three-node network)");
    init_cmd->add_option("--out", init.out, "output directory")->required();
    init_cmd->add_option("--seed", init.seed, "derive keys from a seed (insecure, for tests)");
    init_cmd->add_flag("--force", init.force, "overwrite an existing network directory");
    init_cmd->add_flag("--json", init.json, "machine-readable output");
    init_cmd->callback([&] { rc = cmd_init(init); });

    RunArgs run;
    auto* node_cmd = app.add_subcommand("node", "node commands");
    node_cmd->require_subcommand(1);
    auto* node_run = node_cmd->add_subcommand("run", "run a node and its API until SIGINT/SIGTERM");
    node_run->add_option("dir", run.dir, "node directory (or GL_NODE_CONFIG / GL_DATA_DIR)");
    node_run->add_option("--listen", run.listen, "API address host:port (or GL_LISTEN_ADDR)");
    node_run->add_option("--peer-listen", run.peer_listen, "node-to-node address host:port");
    node_run->add_option("--ui", run.ui, "directory of operator console assets served under /ui");
    node_run->callback([&] { rc = cmd_node_run(run); });

    std::string net_dir;
    auto* network_cmd = app.add_subcommand("network", "network commands");
    network_cmd->require_subcommand(1);
    auto* network_run = network_cmd->add_subcommand("run", "run every node of a network directory in one process");
    network_run->add_option("dir", net_dir, "network directory")->required();
    network_run->callback([&] { rc = cmd_network_run(net_dir); });

    ScenarioArgs scen;
    std::uint64_t gen_seed = 1;
    std::size_t gen_rows = 10;
    std::size_t gen_silos = 2;
    std::string gen_out;
    auto* scenario_cmd = app.add_subcommand("scenario", "demo scenarios");
    scenario_cmd->require_subcommand(1);
    auto* scenario_run = scenario_cmd->add_subcommand("run", "submit the intake and lot flow of a scenario CSV");
    scenario_run->add_option("file", scen.file, "scenario CSV")->required();
    scenario_run->add_option("--against", scen.against, "API URL of the node to submit to");
    scenario_run->add_flag("--sim", scen.sim, "run on an in-process simulated network instead");
    scenario_run->add_option("--sim-out", scen.sim_out, "with --sim, persist the simulated network here");
    scenario_run->add_option("--seed", scen.seed, "with --sim, network and link seed");
    scenario_run->add_option("--password", scen.passwords, "participant=password (default <id>-password)");
    scenario_run->add_option("--warehouse", scen.warehouse, "warehouse operator participant");
    scenario_run->add_option("--qa", scen.qa, "QA operator participant");
    scenario_run->add_option("--channel", scen.channel, "channel");
    scenario_run->add_flag("--json", scen.json, "machine-readable output");
    scenario_run->callback([&] { rc = cmd_scenario_run(scen); });
    auto* scenario_gen = scenario_cmd->add_subcommand("generate", "write a deterministic scenario CSV");
    scenario_gen->add_option("--seed", gen_seed, "seed");
    scenario_gen->add_option("--rows", gen_rows, "number of intakes");
    scenario_gen->add_option("--silos", gen_silos, "number of silos");
    scenario_gen->add_option("--out", gen_out, "output file (default stdout)");
    scenario_gen->callback([&] { rc = cmd_scenario_generate(gen_seed, gen_rows, gen_silos, gen_out); });

    std::string verify_path;
    bool verify_json = false;
    auto* verify_cmd = app.add_subcommand("verify", "audit the chains of a node or network directory");
    verify_cmd->add_option("path", verify_path, "node or network directory")->required();
    verify_cmd->add_flag("--json", verify_json, "machine-readable output");
    verify_cmd->callback([&] { rc = cmd_verify(verify_path, verify_json); });

    ClientArgs client;
    auto add_client = [&](CLI::App* cmd) {
        cmd->add_option("--against", client.against, "API URL")->required();
        cmd->add_option("--user", client.user, "participant id")->required();
        cmd->add_option("--password", client.password, "password (or GL_PASSWORD; default <id>-password)");
        cmd->add_option("--channel", client.channel, "channel (default: the node's main channel)");
        cmd->add_flag("--json", client.json, "machine-readable output");
    };
    std::string contract, operation, args_text;
    bool wait = false;
    auto* submit_cmd = app.add_subcommand("submit", "submit one transaction");
    add_client(submit_cmd);
    submit_cmd->add_option("--contract", contract, "contract id")->required();
    submit_cmd->add_option("--op", operation, "operation")->required();
    submit_cmd->add_option("--args", args_text, "arguments as a JSON object");
    submit_cmd->add_flag("--wait", wait, "wait until the transaction is VALID or INVALID");
    submit_cmd->callback([&] { rc = cmd_submit(client, contract, operation, args_text, wait); });

    std::string what;
    std::vector<std::string> params, filters;
    auto* query_cmd = app.add_subcommand("query", "read committed state through a node's API");
    add_client(query_cmd);
    query_cmd->add_option("what", what, "asset | assets | tx | lot | receipt | channels")->required();
    query_cmd->add_option("params", params, "query arguments");
    query_cmd->add_option("--filter", filters, "field=value equality filter (assets)");
    query_cmd->callback([&] { rc = cmd_query(client, what, params, filters); });

    std::string export_dir, export_channel, export_out;
    auto* state_cmd = app.add_subcommand("state", "offline state tools");
    state_cmd->require_subcommand(1);
    auto* export_cmd = state_cmd->add_subcommand("export", "replay a node's channel and print its world state");
    export_cmd->add_option("dir", export_dir, "node directory")->required();
    export_cmd->add_option("--channel", export_channel, "channel (default gebn-main)");
    export_cmd->add_option("--out", export_out, "output file (default stdout)");
    export_cmd->callback([&] { rc = cmd_state_export(export_dir, export_channel, export_out); });

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return kUsage;
    }
    catch (const Error& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return is_usage_error(e.code()) ? kUsage : kFailure;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
    return rc;
}
