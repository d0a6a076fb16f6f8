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

#include "grainledger/grain/contract.hpp"
#include "grainledger/grain/scenario.hpp"
#include "grainledger/network/audit.hpp"
#include "grainledger/network/governance.hpp"
#include "grainledger/network/sim.hpp"

#include <fstream>
#include <random>

using namespace grainledger;
using namespace grainledger::network;
using test::seeded_topology;

namespace
{
Document weigh_in_args(const std::string& invoice)
{
    return {{"Invoice_Number", invoice}, {"direction", "incoming"}, {"grain", "soy"}, {"gross_kg", 42000},
        {"producer_id", "p-001"}, {"tare_kg", 15000}, {"truck_plate", "TRK"}};
}

ErrorCode code_of(const std::function<void()>& fn)
{
    try
    {
        fn();
    }
    catch (const Error& e)
    {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::Io;
}

std::optional<ErrorCode> abort_code(const SubmitOutcome& out)
{
    if (!out.aborted)
        return std::nullopt;
    return parse_error_code(out.abort_reason.substr(0, out.abort_reason.find(':')));
}

bool committed_valid(SimNetwork& net, const std::string& node, const std::string& tx_id)
{
    auto status = net.peer(node).find_tx(tx_id);
    return status && status->committed.validity.valid;
}

std::vector<std::size_t> block_sizes(const ledger::ChannelLedger& l, std::uint64_t from)
{
    std::vector<std::size_t> sizes;
    for (const auto& b : l.blocks_from(from))
        sizes.push_back(b.transactions.size());
    return sizes;
}

/// File-backed network with a short scenario committed on every channel.
std::filesystem::path populated_network_dir(const std::string& name)
{
    auto dir = test::scratch_dir(name);
    SimNetwork net(bootstrap_network(seeded_topology()), SimOptions{}, dir);
    SimScenarioClient client(net);
    REQUIRE(grain::run_scenario(grain::generate_scenario(5, 8), client).all_valid());
    auto out = net.submit("p-wh-01", "credit", "grain", "record_weigh_in", weigh_in_args("CR-1"));
    net.settle();
    REQUIRE(committed_valid(net, "bank-node", out.tx_id));
    return dir;
}
}  // namespace

TEST_SUITE("consensus-network")
{
TEST_CASE("endorsement policy truth table")
{
    using identity::Org;
    const std::set<Org> members{Org::cooperative, Org::warehouse, Org::bank};
    struct Row
    {
        std::set<Org> endorsing;
        bool any, majority, all;
    };
    const Row table[] = {
        {{}, false, false, false},
        {{Org::cooperative}, true, false, false},
        {{Org::trading}, false, false, false},
        {{Org::cooperative, Org::trading}, true, false, false},
        {{Org::cooperative, Org::bank}, true, true, false},
        {{Org::cooperative, Org::warehouse, Org::bank}, true, true, true},
    };
    for (const auto& r : table)
    {
        CAPTURE(r.endorsing.size());
        CHECK(policy_satisfied(PolicyRule::any_one, r.endorsing, members) == r.any);
        CHECK(policy_satisfied(PolicyRule::majority_orgs, r.endorsing, members) == r.majority);
        CHECK(policy_satisfied(PolicyRule::all_orgs, r.endorsing, members) == r.all);
    }
    // Two members: a majority needs both.
    const std::set<Org> pair{Org::warehouse, Org::bank};
    CHECK_FALSE(policy_satisfied(PolicyRule::majority_orgs, {Org::bank}, pair));
    CHECK(policy_satisfied(PolicyRule::majority_orgs, {Org::bank, Org::warehouse}, pair));
}

TEST_CASE("the orderer cuts full batches and times out partial ones")
{
    SimNetwork net(bootstrap_network(seeded_topology()), SimOptions{});
    net.settle();
    const auto start = net.orderer().height("gebn-main");
    for (int i = 0; i < 25; ++i)
        net.submit("p-wh-01", "gebn-main", "grain", "record_weigh_in", weigh_in_args("B-" + std::to_string(i)));
    net.settle();
    CHECK(block_sizes(*net.peer("coop-node").ledger("gebn-main"), start) == std::vector<std::size_t>{10, 10, 5});

    const auto before = net.orderer().height("gebn-main");
    net.submit("p-wh-01", "gebn-main", "grain", "record_weigh_in", weigh_in_args("ONE"));
    net.advance(240);
    CHECK(net.orderer().height("gebn-main") == before);
    net.advance(60);
    CHECK(net.orderer().height("gebn-main") == before + 1);
}

TEST_CASE("policy and endorsement agreement are enforced at ordering")
{
    SimNetwork net(bootstrap_network(seeded_topology()), SimOptions{});
    net.settle();
    auto env = net.gateway("warehouse-node").propose("p-wh-01", "gebn-main", "grain", "record_weigh_in",
        weigh_in_args("POL-1"));
    auto wh = net.peer("warehouse-node").endorse(env);
    auto coop = net.peer("coop-node").endorse(env);
    REQUIRE(wh.endorsement);
    REQUIRE(coop.endorsement);
    CHECK(wh.rwset == coop.rwset);

    ledger::TransactionRecord single{env, wh.rwset, {*wh.endorsement}};
    CHECK(code_of([&] { net.orderer().submit(single, net.now()); }) == ErrorCode::PolicyNotMet);

    // A correctly signed endorsement of a different result.
    auto other = coop.rwset;
    other.writes.at(0).value["truck_plate"] = "FORGED";
    auto e = *coop.endorsement;
    e.rwset_digest = other.digest();
    e.signature = net.peer("coop-node").key().sign(ledger::Endorsement::signing_bytes(env.tx_id, e.rwset_digest));
    ledger::TransactionRecord mismatch{env, wh.rwset, {*wh.endorsement, e}};
    CHECK(code_of([&] { net.orderer().submit(mismatch, net.now()); }) == ErrorCode::EndorsementMismatch);

    ledger::TransactionRecord good{env, wh.rwset, {*wh.endorsement, *coop.endorsement}};
    net.orderer().submit(good, net.now());
    net.settle();
    CHECK(committed_valid(net, "bank-node", env.tx_id));
}

TEST_CASE("non-members can neither submit to nor endorse for a channel")
{
    SimNetwork net(bootstrap_network(seeded_topology()), SimOptions{});
    net.settle();
    CHECK(code_of([&] { net.submit("p-001", "credit", "grain", "record_weigh_in", weigh_in_args("X")); }) ==
          ErrorCode::NotChannelMember);
    auto env = net.gateway("warehouse-node").propose("p-wh-01", "credit", "grain", "record_weigh_in",
        weigh_in_args("X"));
    CHECK(code_of([&] { net.peer("coop-node").endorse(env); }) == ErrorCode::NotChannelMember);
    CHECK(code_of([&] { net.orderer().blocks("credit", 0, 10, "coop-node"); }) == ErrorCode::NotChannelMember);
}

TEST_CASE("credit channel data never reaches the cooperative node")
{
    auto dir = populated_network_dir("isolation");
    CHECK_FALSE(std::filesystem::exists(dir / "coop-node" / "channels" / "credit.blocks"));
    CHECK(std::filesystem::exists(dir / "bank-node" / "channels" / "credit.blocks"));
    CHECK(std::filesystem::exists(dir / "warehouse-node" / "channels" / "credit.blocks"));
    CHECK_FALSE(std::filesystem::exists(dir / "coop-node" / "participants" / "p-bank-01.key"));
    for (const auto& entry : std::filesystem::recursive_directory_iterator(dir / "coop-node"))
        CHECK(entry.path().filename().string().find("credit") == std::string::npos);

    SimNetwork net(bootstrap_network(seeded_topology()), SimOptions{});
    net.submit("p-wh-01", "credit", "grain", "record_weigh_in", weigh_in_args("CR-9"));
    net.settle();
    CHECK_FALSE(net.peer("coop-node").holds("credit"));
    CHECK(net.peer("coop-node").ledger("credit") == nullptr);
    for (const auto& c : net.convergence().channels)
        CHECK(c.outsiders_holding.empty());
}

TEST_CASE("governance registers participants and channels, admin only")
{
    SimNetwork net(bootstrap_network(seeded_topology()), SimOptions{});
    net.settle();
    const std::string admin = net.bundle().admin();
    Document trader{{"display_name", "Trader"}, {"org", "trading"}, {"participant_id", "p-tr-01"}, {"role", "trader"}};
    auto first = net.submit(admin, "governance", "governance", "register_participant", trader);
    CHECK_FALSE(first.aborted);
    net.settle();
    CHECK(committed_valid(net, "coop-node", first.tx_id));
    auto again = net.submit(admin, "governance", "governance", "register_participant", trader);
    CHECK(abort_code(again) == ErrorCode::DuplicateId);

    // A non-admin is refused before anything is ordered or by the contract.
    ErrorCode producer_error = ErrorCode::Io;
    try
    {
        auto out = net.submit("p-001", "governance", "governance", "register_participant", trader);
        producer_error = abort_code(out).value_or(ErrorCode::Io);
    }
    catch (const Error& e)
    {
        producer_error = e.code();
    }
    CHECK((producer_error == ErrorCode::Unauthorized || producer_error == ErrorCode::AclDenied));

    ChannelConfig ops;
    ops.channel_id = "silo-ops";
    ops.member_orgs = {identity::Org::warehouse, identity::Org::bank};
    net.create_channel(admin, ops);
    net.settle();
    CHECK(net.peer("bank-node").holds("silo-ops"));
    CHECK_FALSE(net.peer("coop-node").holds("silo-ops"));
    auto on_new = net.submit("p-wh-01", "silo-ops", "grain", "record_weigh_in", weigh_in_args("OPS-1"));
    net.settle();
    CHECK(committed_valid(net, "bank-node", on_new.tx_id));
    CHECK(code_of([&] { net.create_channel(admin, ops); }) == ErrorCode::DuplicateChannel);
    CHECK(net.convergence().converged());
}

TEST_CASE("revoked identities lose access")
{
    SimNetwork net(bootstrap_network(seeded_topology()), SimOptions{});
    net.settle();
    const std::string admin = net.bundle().admin();
    net.submit(admin, "governance", "governance", "revoke_identity", {{"participant_id", "p-qa-01"}});
    net.settle();
    CHECK(code_of([&] {
        net.submit("p-qa-01", "gebn-main", "grain", "record_extrinsic", {{"Invoice_Number", "X"}});
    }) == ErrorCode::RevokedIdentity);

    net.submit(admin, "governance", "governance", "revoke_identity", {{"participant_id", admin}});
    net.settle();
    CHECK(code_of([&] {
        net.submit(admin, "governance", "governance", "revoke_identity", {{"participant_id", "p-001"}});
    }) == ErrorCode::Unauthorized);
}

TEST_CASE("concurrent updates of one analysis: exactly one commits")
{
    SimNetwork net(bootstrap_network(seeded_topology()), SimOptions{});
    net.submit("p-wh-01", "gebn-main", "grain", "record_weigh_in", weigh_in_args("RACE"));
    net.settle();
    net.submit("p-qa-01", "gebn-main", "grain", "record_extrinsic",
        {{"Invoice_Number", "RACE"}, {"Sample_Number", "S"}, {"Moisture_Percent", 14}, {"Impurity_Percent", 3},
            {"Broken_Percent", 5}, {"Greenish_Percent", 1}, {"Damaged_Percent", 3}});
    net.settle();
    // Both simulate against the same committed state before either is ordered.
    auto a = net.submit("p-qa-01", "gebn-main", "grain", "DiscountsTransaction", {{"Invoice_Number", "RACE"}});
    auto b = net.submit("p-qa-01", "gebn-main", "grain", "DiscountsTransaction",
        {{"Invoice_Number", "RACE"}, {"mode", "verbatim"}});
    net.settle();
    for (const auto& node : net.node_ids())
    {
        int valid = committed_valid(net, node, a.tx_id) + committed_valid(net, node, b.tx_id);
        CHECK(valid == 1);
    }
    auto loser = committed_valid(net, "coop-node", a.tx_id) ? b.tx_id : a.tx_id;
    auto status = net.peer("coop-node").find_tx(loser);
    REQUIRE(status);
    CHECK(status->committed.validity.reason.find("MVCC") != std::string::npos);
    CHECK(net.convergence().converged());
}

TEST_CASE("scenario on the default topology converges")
{
    SimNetwork net(bootstrap_network(seeded_topology()), SimOptions{});
    net.settle();
    CHECK(net.convergence().converged());
    SimScenarioClient client(net);
    auto report = grain::run_scenario(grain::generate_scenario(3, 6), client);
    for (const auto* f : report.failures())
        MESSAGE(f->step << " " << f->subject << ": " << f->result.error);
    CHECK(report.all_valid());
    CHECK(net.convergence().converged());
}

TEST_CASE("lossy links converge, and worker threads change nothing")
{
    auto run = [](SimOptions opts) {
        SimNetwork net(bootstrap_network(seeded_topology()), opts);
        SimScenarioClient client(net);
        REQUIRE(grain::run_scenario(grain::generate_scenario(11, 20), client).all_valid());
        return net.convergence();
    };
    SimOptions lossy;
    lossy.link.drop_probability = 0.3;
    SimOptions threaded = lossy;
    threaded.threaded = true;
    auto a = run(lossy);
    auto b = run(threaded);
    CHECK(a.converged());
    CHECK(b.converged());
    CHECK(run(SimOptions{}).converged());
    REQUIRE(a.channels.size() == b.channels.size());
    for (std::size_t i = 0; i < a.channels.size(); ++i)
    {
        REQUIRE(!a.channels[i].members.empty());
        REQUIRE(!b.channels[i].members.empty());
        CHECK(a.channels[i].members[0].tip == b.channels[i].members[0].tip);
        CHECK(a.channels[i].members[0].state_hash == b.channels[i].members[0].state_hash);
    }
}

TEST_CASE("a file-backed network audits clean and catches every flipped bit")
{
    auto dir = populated_network_dir("audit");
    auto report = audit_network_dir(dir);
    for (const auto& p : report.problems)
        MESSAGE(p);
    REQUIRE(report.ok());

    auto file = dir / "coop-node" / "channels" / "gebn-main.blocks";
    std::string original = test::read_text(file);
    // Record boundaries: 4-byte big-endian length prefix per block.
    std::vector<std::size_t> starts;
    for (std::size_t pos = 0; pos < original.size();)
    {
        starts.push_back(pos);
        std::uint32_t n = 0;
        for (int i = 0; i < 4; ++i)
            n = (n << 8) | static_cast<std::uint8_t>(original[pos + i]);
        pos += 4 + n;
    }
    std::mt19937_64 rng(99);
    int misses = 0;
    for (int trial = 0; trial < 200; ++trial)
    {
        std::size_t pos = rng() % original.size();
        std::string data = original;
        data[pos] = static_cast<char>(data[pos] ^ (1u << (rng() % 8)));
        std::ofstream(file, std::ios::binary | std::ios::trunc) << data;
        std::uint64_t height = std::upper_bound(starts.begin(), starts.end(), pos) - starts.begin() - 1;
        bool caught = false;
        for (const auto& f : audit_node_dir(dir / "coop-node").files)
            caught = caught || (f.channel_id == "gebn-main" && f.failure && f.failure->height <= height);
        if (!caught)
        {
            ++misses;
            MESSAGE("missed flip at byte " << pos << " (block " << height << ")");
        }
    }
    std::ofstream(file, std::ios::binary | std::ios::trunc) << original;
    CHECK(misses == 0);
    CHECK(audit_node_dir(dir / "coop-node").ok());
}
}
