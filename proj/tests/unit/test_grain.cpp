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
#include "support/oracles.hpp"

#include "grainledger/grain/assets.hpp"
#include "grainledger/grain/contract.hpp"
#include "grainledger/grain/provenance.hpp"
#include "grainledger/identity/keys.hpp"

#include <random>

using namespace grainledger;
using namespace grainledger::grain;
using identity::Role;
using test::ContractBench;

namespace
{
struct Intake
{
    std::string invoice;
    std::int64_t gross = 42000;
    std::int64_t tare = 15000;
    double moisture = 14;
    std::string analyte = "GMO";
    double concentration = 0.3;
};

ErrorCode code_of(const Error& e)
{
    if (e.code() != ErrorCode::ContractAbort)
        return e.code();
    return parse_error_code(e.message().substr(0, e.message().find(':'))).value_or(ErrorCode::ContractAbort);
}

template <typename Fn>
ErrorCode error_of(Fn&& fn)
{
    try
    {
        fn();
    }
    catch (const Error& e)
    {
        return code_of(e);
    }
    FAIL("no error raised");
    return ErrorCode::Io;
}

void weigh_in(ContractBench& b, const Intake& in, const std::string& direction = "incoming")
{
    b.run("p-wh-01", Role::warehouse_operator, "record_weigh_in",
        {{"Invoice_Number", in.invoice}, {"direction", direction}, {"grain", "soy"}, {"gross_kg", in.gross},
            {"producer_id", "p-001"}, {"tare_kg", in.tare}, {"truck_plate", "TRK"}});
}

void analyses(ContractBench& b, const Intake& in)
{
    b.run("p-qa-01", Role::qa_operator, "record_extrinsic",
        {{"Invoice_Number", in.invoice}, {"Sample_Number", "S-" + in.invoice}, {"Moisture_Percent", in.moisture},
            {"Impurity_Percent", 3}, {"Broken_Percent", 5}, {"Greenish_Percent", 1}, {"Damaged_Percent", 3}});
    b.run("p-qa-01", Role::qa_operator, "DiscountsTransaction", {{"Invoice_Number", in.invoice}});
    b.run("p-qa-01", Role::qa_operator, "record_intrinsic",
        {{"Invoice_Number", in.invoice}, {"Sample_Number", "S-" + in.invoice}, {"analyte", in.analyte},
            {"concentration", in.concentration}, {"strip_lot_id", "STRIP-1"}});
}

void silo(ContractBench& b, const std::string& id)
{
    b.run("p-wh-01", Role::warehouse_operator, "register_silo", {{"grain", "soy"}, {"silo_id", id}});
}

void assign(ContractBench& b, const std::string& invoice, const std::string& silo_id)
{
    b.run("p-qa-01", Role::qa_operator, "assign_silo", {{"Invoice_Number", invoice}, {"silo_id", silo_id}});
}

void lot(ContractBench& b, const std::string& lot_id, const std::string& silo_id, const std::string& ticket,
    const char* base = "1.00")
{
    weigh_in(b, {ticket, 30000, 10000}, "outgoing");
    b.run("p-wh-01", Role::warehouse_operator, "create_outgoing_lot",
        {{"base_price_per_kg", Decimal::parse(base).to_json()}, {"lot_id", lot_id},
            {"outgoing_tickets", ledger::Document::array({ticket})}, {"silo_id", silo_id}});
}

void full_intake(ContractBench& b, const Intake& in, const std::string& silo_id)
{
    weigh_in(b, in);
    analyses(b, in);
    assign(b, in.invoice, silo_id);
}

Document lot_doc(const ContractBench& b, const std::string& id)
{
    auto doc = b.get(registry::kLot, id);
    REQUIRE(doc);
    return *doc;
}
}  // namespace

TEST_SUITE("grain-network")
{
TEST_CASE("weigh-in stores the net weight and rejects bad tickets")
{
    ContractBench b;
    weigh_in(b, {"INV-1", 42000, 15000});
    auto ticket = b.get(registry::kWeighTicket, ticket_id("incoming", "INV-1"));
    REQUIRE(ticket);
    CHECK(Decimal::from_json((*ticket)["net_kg"]) == Decimal(27000));
    CHECK(error_of([&] { weigh_in(b, {"INV-2", 15000, 15000}); }) == ErrorCode::BadWeights);
    CHECK(error_of([&] { weigh_in(b, {"INV-3", 10000, 15000}); }) == ErrorCode::BadWeights);
    CHECK(error_of([&] { weigh_in(b, {"INV-1", 42000, 15000}); }) == ErrorCode::DuplicateInvoice);
    // The same invoice may be used once per direction.
    weigh_in(b, {"INV-1", 42000, 15000}, "outgoing");
}

TEST_CASE("intrinsic analyses apply the configured limits")
{
    ContractBench b;
    CHECK(error_of([&] {
        b.run("p-qa-01", Role::qa_operator, "record_intrinsic",
            {{"Invoice_Number", "INV-0"}, {"Sample_Number", "S"}, {"analyte", "GMO"}, {"concentration", 0.3},
                {"strip_lot_id", "L"}});
    }) == ErrorCode::NoWeighTicket);

    weigh_in(b, {"INV-1"});
    auto record = [&](const char* analyte, double c) {
        b.run("p-qa-01", Role::qa_operator, "record_intrinsic",
            {{"Invoice_Number", "INV-1"}, {"Sample_Number", "S"}, {"analyte", analyte}, {"concentration", c},
                {"strip_lot_id", "L"}});
        return (*b.get(registry::kIntrinsic, intrinsic_id("INV-1", analyte)))["pass"].get<bool>();
    };
    CHECK(record("GMO", 0.3));
    CHECK_FALSE(record("aflatoxin", 25));
    CHECK(error_of([&] { record("zearalenone", 1); }) == ErrorCode::UnknownAnalyte);

    auto config = default_config();
    CHECK(config.passes("GMO", Decimal::parse("0.8999")));
    CHECK_FALSE(config.passes("GMO", Decimal::parse("0.9")));
    CHECK(config.passes("aflatoxin", Decimal(20)));
    CHECK_FALSE(config.passes("aflatoxin", Decimal::parse("20.0001")));
}

TEST_CASE("silo assignment converts the discount percent into kilograms")
{
    ContractBench b;
    silo(b, "silo-A");
    full_intake(b, {"INV-1", 42000, 15000, 14}, "silo-A");
    full_intake(b, {"INV-2", 42000, 15000, 11}, "silo-A");
    auto window = b.get(registry::kSilo, "silo-A");
    REQUIRE(window);
    auto contributions = (*window)["contributions"];
    REQUIRE(contributions.size() == 2);
    CHECK(Decimal::from_json(contributions[0]["net_kg_after_discounts"]) == Decimal(24840));
    CHECK(Decimal::from_json(contributions[1]["net_kg_after_discounts"]) == Decimal(27000));
}

TEST_CASE("silo assignment needs a complete intake of the same grain")
{
    ContractBench b;
    silo(b, "silo-A");
    weigh_in(b, {"INV-1"});
    b.run("p-qa-01", Role::qa_operator, "record_extrinsic",
        {{"Invoice_Number", "INV-1"}, {"Sample_Number", "S"}, {"Moisture_Percent", 11}, {"Impurity_Percent", 3},
            {"Broken_Percent", 5}, {"Greenish_Percent", 1}, {"Damaged_Percent", 3}});
    b.run("p-qa-01", Role::qa_operator, "DiscountsTransaction", {{"Invoice_Number", "INV-1"}});
    CHECK(error_of([&] { assign(b, "INV-1", "silo-A"); }) == ErrorCode::IncompleteIntake);

    CHECK(error_of([&] { assign(b, "INV-0", "silo-A"); }) == ErrorCode::IncompleteIntake);

    b.run("p-qa-01", Role::qa_operator, "record_intrinsic",
        {{"Invoice_Number", "INV-1"}, {"Sample_Number", "S"}, {"analyte", "GMO"}, {"concentration", 0.2},
            {"strip_lot_id", "L"}});
    b.run("p-wh-01", Role::warehouse_operator, "register_silo", {{"grain", "corn"}, {"silo_id", "silo-C"}});
    CHECK(error_of([&] { assign(b, "INV-1", "silo-C"); }) == ErrorCode::GrainMismatch);
    assign(b, "INV-1", "silo-A");
}

TEST_CASE("lots price GM-free silos at the premium")
{
    ContractBench b;
    silo(b, "silo-A");
    silo(b, "silo-B");
    for (int i = 1; i <= 3; ++i)
        full_intake(b, {"INV-A" + std::to_string(i), 42000, 15000, 13, "GMO", 0.1 * i}, "silo-A");
    full_intake(b, {"INV-B1", 42000, 15000, 13, "GMO", 0.4}, "silo-B");
    full_intake(b, {"INV-B2", 42000, 15000, 13, "GMO", 2.0}, "silo-B");

    lot(b, "LOT-A", "silo-A", "OUT-A", "1.00");
    auto a = lot_doc(b, "LOT-A");
    CHECK(a["gm_free_certified"] == true);
    CHECK(Decimal::from_json(a["final_price_per_kg"]) == Decimal::parse("1.15"));

    lot(b, "LOT-B", "silo-B", "OUT-B", "1.00");
    auto bl = lot_doc(b, "LOT-B");
    CHECK(bl["gm_free_certified"] == false);
    CHECK(Decimal::from_json(bl["final_price_per_kg"]) == Decimal(1));

    // A new window is empty.
    CHECK(error_of([&] { lot(b, "LOT-A2", "silo-A", "OUT-A2"); }) == ErrorCode::EmptySilo);
    CHECK(error_of([&] {
        b.run("p-wh-01", Role::warehouse_operator, "create_outgoing_lot",
            {{"base_price_per_kg", 1}, {"lot_id", "LOT-X"}, {"outgoing_tickets", ledger::Document::array({"NOPE"})},
                {"silo_id", "silo-B"}});
    }) == ErrorCode::EmptySilo);
}

TEST_CASE("the premium is exact to four decimals for any base price")
{
    std::mt19937_64 rng(12);
    for (int i = 0; i < 20; ++i)
    {
        ContractBench b;
        silo(b, "silo-A");
        const bool contaminated = i % 2 == 1;
        full_intake(b, {"INV-1", 42000, 15000, 12, "GMO", 0.2}, "silo-A");
        full_intake(b, {"INV-2", 42000, 15000, 12, "GMO", contaminated ? 0.9 : 0.89}, "silo-A");
        const std::int64_t base_units = 1 + static_cast<std::int64_t>(rng() % 99999);  // 0.0001 .. 9.9999
        const Decimal base = Decimal(base_units).shifted_right(4);
        lot(b, "LOT", "silo-A", "OUT", base.to_string().c_str());
        auto doc = lot_doc(b, "LOT");
        // base * 1.15 in units of 1e-6, rounded half-even to 1e-4.
        std::int64_t micro = base_units * 115;
        std::int64_t q = micro / 100, r = micro % 100;
        if (r > 50 || (r == 50 && q % 2 == 1))
            ++q;
        const Decimal premium_price = Decimal(q).shifted_right(4);
        CHECK(doc["gm_free_certified"] == !contaminated);
        CHECK(Decimal::from_json(doc["final_price_per_kg"]) == (contaminated ? base : premium_price));
    }
}

TEST_CASE("provenance of a lot lists exactly its silo window")
{
    ContractBench b;
    silo(b, "silo-A");
    silo(b, "silo-B");
    full_intake(b, {"INV-1"}, "silo-A");
    full_intake(b, {"INV-2"}, "silo-B");
    lot(b, "LOT-A", "silo-A", "OUT-A");
    auto tree = b.ledger().read([](const ledger::StateReader& s) { return trace_lot_provenance(s, "LOT-A"); });
    CHECK(provenance_invoices(tree) == std::vector<std::string>{"INV-1"});
    CHECK(tree["intakes"][0]["intrinsic"].size() == 1);

    CHECK(error_of([&] {
        b.ledger().read([](const ledger::StateReader& s) { return trace_lot_provenance(s, "LOT-Z"); });
    }) == ErrorCode::LotNotFound);
}

TEST_CASE("provenance equals a reconstruction from the scenario log")
{
    for (std::uint64_t seed : {1, 2, 3, 4, 5})
    {
        CAPTURE(seed);
        auto scenario = generate_scenario(seed, 10, 2);
        ContractBench b;
        test::BenchScenarioClient client(b);
        auto report = run_scenario(scenario, client);
        REQUIRE(report.all_valid());
        REQUIRE(scenario.lots.size() == 2);
        for (const auto& l : scenario.lots)
        {
            auto expected = test::reconstruct_lot(scenario, report, l.lot_id);
            auto tree = b.ledger().read([&](const ledger::StateReader& s) { return trace_lot_provenance(s, l.lot_id); });
            auto diffs = test::provenance_differences(expected, tree);
            for (const auto& d : diffs)
                MESSAGE(l.lot_id << ": " << d);
            CHECK(diffs.empty());
            // No invoice of the other silo appears.
            for (const auto& in : tree["intakes"])
            {
                auto row = std::find_if(scenario.intakes.begin(), scenario.intakes.end(),
                    [&](const IntakeRow& r) { return r.invoice == in["invoice"]; });
                REQUIRE(row != scenario.intakes.end());
                CHECK(row->silo == l.silo_id);
            }
        }
    }
}

TEST_CASE("mass is conserved per silo window and certification is sound")
{
    for (std::uint64_t seed = 10; seed < 16; ++seed)
    {
        auto scenario = generate_scenario(seed, 24, 3);
        ContractBench b;
        test::BenchScenarioClient client(b);
        auto report = run_scenario(scenario, client);
        REQUIRE(report.all_valid());
        for (const auto& l : scenario.lots)
        {
            auto tree = b.ledger().read([&](const ledger::StateReader& s) { return trace_lot_provenance(s, l.lot_id); });
            Decimal total;
            Decimal expected;
            bool all_gm_free = true;
            for (const auto& in : tree["intakes"])
            {
                total += Decimal::from_json(in["contribution_kg"]);
                Decimal net = Decimal::from_json(in["weigh_ticket"]["net_kg"]);
                Decimal d = Decimal::from_json(in["extrinsic"]["Total_Discounts_KG"]);
                expected += (net * (Decimal(100) - d)).shifted_right(2).rounded(4);
                bool gmo_ok = false;
                for (const auto& a : in["intrinsic"])
                    if (a["analysis"]["analyte"] == "GMO" &&
                        Decimal::from_json(a["analysis"]["concentration"]) < Decimal::parse("0.9"))
                        gmo_ok = true;
                all_gm_free = all_gm_free && gmo_ok;
            }
            CHECK(total == expected);
            if (tree["lot"]["gm_free_certified"].get<bool>())
                CHECK(all_gm_free);
            else
                CHECK_FALSE(all_gm_free);
        }
    }
}

TEST_CASE("ingest receipts are signed statements of on-ledger transactions")
{
    ContractBench b;
    silo(b, "silo-A");
    full_intake(b, {"INV-1", 42000, 15000, 14}, "silo-A");
    weigh_in(b, {"INV-2"});
    auto signer = identity::KeyPair::insecure_from_seed(1, "node:warehouse-node");
    auto receipt = b.ledger().read([&](const ledger::StateReader& s) {
        return issue_ingest_receipt(s, "INV-1", signer, "warehouse-node", 1704067300000);
    });
    CHECK(verify_receipt_signature(receipt, signer.public_key()));
    CHECK(Decimal::from_json(receipt.body["net_kg"]) == Decimal(27000));
    auto ids = receipt_tx_ids(receipt);
    CHECK(ids.size() >= 5);
    for (const auto& id : ids)
    {
        auto tx = b.ledger().find_tx(id);
        REQUIRE(tx);
        CHECK(tx->validity.valid);
    }
    auto round_trip = IngestReceipt::from_document(ledger::parse_document(ledger::canonicalize(receipt.to_document())));
    CHECK(verify_receipt_signature(round_trip, signer.public_key()));

    auto tampered = receipt;
    tampered.body["net_kg"] = 27001;
    CHECK_FALSE(verify_receipt_signature(tampered, signer.public_key()));

    CHECK(error_of([&] {
        b.ledger().read([&](const ledger::StateReader& s) {
            return issue_ingest_receipt(s, "INV-2", signer, "warehouse-node", 0);
        });
    }) == ErrorCode::IncompleteIntake);
}

TEST_CASE("scenario csv round-trips and generation is deterministic")
{
    auto a = generate_scenario(9, 30, 3);
    auto b = generate_scenario(9, 30, 3);
    CHECK(write_scenario_csv(a.intakes) == write_scenario_csv(b.intakes));
    CHECK(write_scenario_csv(a.intakes) != write_scenario_csv(generate_scenario(10, 30, 3).intakes));
    auto parsed = parse_scenario_csv(write_scenario_csv(a.intakes));
    CHECK(write_scenario_csv(parsed) == write_scenario_csv(a.intakes));
    CHECK(write_scenario_csv(a.intakes).rfind(kScenarioHeader, 0) == 0);
    CHECK_THROWS_AS(parse_scenario_csv("invoice,producer\nX,Y\n"), Error);
}
}
