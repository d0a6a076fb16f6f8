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

#include "grainledger/contract/engine.hpp"
#include "grainledger/grain/assets.hpp"
#include "grainledger/ledger/world_state.hpp"

using namespace grainledger;
using namespace grainledger::contract;
using ledger::Document;

namespace
{
ContractDefinition counter(std::uint32_t version)
{
    ContractDefinition def;
    def.contract_id = "counter";
    def.version = version;
    def.endorsement_policy_ref = "majority";
    def.operations["add"] = [version](TxContext& ctx, const Document& args) {
        AssetRegistry reg(ctx, "com.test.Counter");
        std::string id = args.at("id").get<std::string>();
        auto current = reg.find(id);
        std::int64_t step = version == 1 ? 1 : 10;
        if (current)
            reg.update(id, {{"n", current->at("n").get<std::int64_t>() + step}});
        else
            reg.add(id, {{"n", step}});
        ctx.emit("Counted", {{"id", id}});
    };
    def.operations["create"] = [](TxContext& ctx, const Document& args) {
        AssetRegistry(ctx, "com.test.Counter").add(args.at("id").get<std::string>(), {{"n", 0}});
    };
    def.operations["touch"] = [](TxContext& ctx, const Document& args) {
        AssetRegistry(ctx, "com.test.Counter").update(args.at("id").get<std::string>(), {{"n", -1}});
    };
    def.operations["read"] = [](TxContext& ctx, const Document& args) {
        AssetRegistry(ctx, "com.test.Counter").get(args.at("id").get<std::string>());
    };
    return def;
}

identity::AccessControlList open_acl()
{
    identity::AccessControlList acl;
    for (auto role : {identity::Role::admin, identity::Role::producer})
    {
        acl.rules.push_back({role, "lifecycle", "deploy", identity::Decision::allow});
        acl.rules.push_back({role, "counter", "*", identity::Decision::allow});
    }
    return acl;
}

void apply(ledger::WorldState& state, const ledger::ReadWriteSet& rw, std::uint64_t height)
{
    for (const auto& w : rw.writes)
        state.put(w.key, w.value, {height, 0});
}

struct Fixture
{
    ContractCatalog catalog;
    Engine engine{catalog};
    ledger::WorldState state;
    identity::AccessControlList acl = open_acl();
    std::uint64_t height = 0;

    Fixture()
    {
        catalog.add(counter(1));
        catalog.add(counter(2));
    }

    ledger::ReadWriteSet call(std::string_view contract, std::string_view op, const Document& args,
        identity::Role role = identity::Role::admin)
    {
        return engine.invoke(contract, op, args, {"tx", "test", "someone", role, 0}, state, acl);
    }

    void commit(const ledger::ReadWriteSet& rw) { apply(state, rw, ++height); }

    ErrorCode abort_code(std::string_view contract, std::string_view op, const Document& args,
        identity::Role role = identity::Role::admin)
    {
        try
        {
            call(contract, op, args, role);
        }
        catch (const Error& e)
        {
            if (e.code() != ErrorCode::ContractAbort)
                return e.code();
            return parse_error_code(e.message().substr(0, e.message().find(':'))).value_or(ErrorCode::ContractAbort);
        }
        FAIL("call succeeded");
        return ErrorCode::Io;
    }
};
}  // namespace

TEST_SUITE("contract-engine")
{
TEST_CASE("deploy activates versions in increasing order")
{
    Fixture f;
    CHECK(f.abort_code("counter", "add", {{"id", "x"}}) == ErrorCode::UnknownContract);
    f.commit(f.call(kLifecycleContract, "deploy", deploy_args(counter(1))));
    f.commit(f.call("counter", "add", {{"id", "x"}}));
    CHECK(f.state.find("com.test.Counter#x")->value["n"] == 1);

    CHECK(f.abort_code(kLifecycleContract, "deploy", deploy_args(counter(1))) == ErrorCode::StaleVersion);
    f.commit(f.call(kLifecycleContract, "deploy", deploy_args(counter(2))));
    CHECK(Engine::deployment(f.state, "counter")->at("manifest")["version"] == 2);
    f.commit(f.call("counter", "add", {{"id", "x"}}));
    CHECK(f.state.find("com.test.Counter#x")->value["n"] == 11);
}

TEST_CASE("only admins deploy, and the manifest must match the catalog")
{
    Fixture f;
    CHECK(f.abort_code(kLifecycleContract, "deploy", deploy_args(counter(1)), identity::Role::producer) ==
          ErrorCode::Unauthorized);
    auto args = deploy_args(counter(1));
    args["manifest_hash"] = std::string(64, '0');
    CHECK(f.abort_code(kLifecycleContract, "deploy", args) == ErrorCode::BadFormat);
    auto unknown = counter(3);
    CHECK(f.abort_code(kLifecycleContract, "deploy", deploy_args(unknown)) == ErrorCode::UnknownContract);
}

TEST_CASE("registry operations record reads, writes and events")
{
    Fixture f;
    f.commit(f.call(kLifecycleContract, "deploy", deploy_args(counter(1))));
    CHECK(f.abort_code("counter", "read", {{"id", "a"}}) == ErrorCode::AssetNotFound);
    CHECK(f.abort_code("counter", "touch", {{"id", "a"}}) == ErrorCode::AssetNotFound);
    CHECK(f.abort_code("counter", "nope", {{"id", "a"}}) == ErrorCode::UnknownOperation);

    f.commit(f.call("counter", "create", {{"id", "a"}}));
    CHECK(f.abort_code("counter", "create", {{"id", "a"}}) == ErrorCode::DuplicateAsset);

    auto rw = f.call("counter", "add", {{"id", "a"}});
    REQUIRE(rw.writes.size() == 1);
    CHECK(rw.writes[0].key == "com.test.Counter#a");
    CHECK(rw.writes[0].value["n"] == 1);
    auto read = std::find_if(rw.reads.begin(), rw.reads.end(), [](const auto& r) { return r.key == "com.test.Counter#a"; });
    REQUIRE(read != rw.reads.end());
    CHECK(read->version == f.state.version_of("com.test.Counter#a"));
    REQUIRE(rw.events.size() == 1);
    CHECK(rw.events[0].event_name == "Counted");

    // Reads of absent keys are recorded as absent.
    auto fresh = f.call("counter", "add", {{"id", "b"}});
    auto absent = std::find_if(fresh.reads.begin(), fresh.reads.end(), [](const auto& r) { return r.key == "com.test.Counter#b"; });
    REQUIRE(absent != fresh.reads.end());
    CHECK_FALSE(absent->version.has_value());
}

TEST_CASE("identical snapshots and arguments give identical read-write sets")
{
    Fixture a;
    Fixture b;
    for (auto* f : {&a, &b})
    {
        f->commit(f->call(kLifecycleContract, "deploy", deploy_args(counter(1))));
        f->commit(f->call("counter", "add", {{"id", "x"}}));
    }
    auto ra = a.call("counter", "add", {{"id", "x"}});
    auto rb = b.call("counter", "add", {{"id", "x"}});
    CHECK(ra == rb);
    CHECK(ra.digest() == rb.digest());
    CHECK(ledger::canonicalize(ra.to_document()) == ledger::canonicalize(rb.to_document()));
    CHECK(ledger::ReadWriteSet::from_document(ra.to_document()) == ra);
}

TEST_CASE("the acl is checked before the contract runs")
{
    Fixture f;
    f.commit(f.call(kLifecycleContract, "deploy", deploy_args(counter(1))));
    try
    {
        f.call("counter", "add", {{"id", "x"}}, identity::Role::bank_agent);
        FAIL("acl ignored");
    }
    catch (const Error& e)
    {
        CHECK(e.code() == ErrorCode::AclDenied);
    }
}

TEST_CASE("DiscountsTransaction updates the analysis and emits one DiscountsEvent")
{
    test::ContractBench bench;
    bench.run("p-wh-01", identity::Role::warehouse_operator, "record_weigh_in",
        {{"Invoice_Number", "INV-1"}, {"direction", "incoming"}, {"grain", "soy"}, {"gross_kg", 42000},
            {"producer_id", "p-001"}, {"tare_kg", 15000}, {"truck_plate", "TRK-1"}});
    bench.run("p-qa-01", identity::Role::qa_operator, "record_extrinsic",
        {{"Invoice_Number", "INV-1"}, {"Sample_Number", "S-1"}, {"Moisture_Percent", 14}, {"Impurity_Percent", 3},
            {"Broken_Percent", 5}, {"Greenish_Percent", 1}, {"Damaged_Percent", 3}});
    auto rw = bench.simulate("p-qa-01", identity::Role::qa_operator, "DiscountsTransaction",
        {{"Invoice_Number", "INV-1"}});
    const auto key = grain::state_key(grain::registry::kExtrinsic, "INV-1");
    auto write = std::find_if(rw.writes.begin(), rw.writes.end(), [&](const auto& w) { return w.key == key; });
    REQUIRE(write != rw.writes.end());
    CHECK(Decimal::from_json(write->value["Total_Discounts_KG"]) == Decimal(8));
    REQUIRE(rw.events.size() == 1);
    CHECK(rw.events[0].event_name == "DiscountsEvent");
    CHECK(rw.events[0].payload["asset"] == write->value);
}
}
