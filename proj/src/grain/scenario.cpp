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
#include "grainledger/grain/scenario.hpp"
#include "grainledger/common/error.hpp"
#include "grainledger/grain/assets.hpp"

#include <map>
#include <random>
#include <set>
#include <sstream>

namespace grainledger::grain
{
namespace
{
std::vector<std::string> split(std::string_view line)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true)
    {
        auto comma = line.find(',', start);
        out.emplace_back(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    for (auto& cell : out)
    {
        while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\r'))
            cell.pop_back();
        while (!cell.empty() && cell.front() == ' ')
            cell.erase(cell.begin());
    }
    return out;
}

Decimal tenths(std::mt19937_64& rng, int lo, int hi)
{
    return Decimal(std::uniform_int_distribution<int>(lo, hi)(rng)).shifted_right(1);
}

}  // namespace

std::vector<IntakeRow> parse_scenario_csv(std::string_view text)
{
    std::vector<IntakeRow> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line))
    {
        ++line_no;
        auto cells = split(line);
        if (cells.size() == 1 && cells[0].empty())
            continue;
        auto where = "line " + std::to_string(line_no) + ": ";
        if (!header_seen)
        {
            std::string joined;
            for (std::size_t i = 0; i < cells.size(); ++i)
                joined += (i ? "," : "") + cells[i];
            if (joined != kScenarioHeader)
                fail(ErrorCode::BadFormat, where + "expected header '" + kScenarioHeader + "'");
            header_seen = true;
            continue;
        }
        if (cells.size() != 12)
            fail(ErrorCode::BadFormat, where + "expected 12 columns, got " + std::to_string(cells.size()));
        try
        {
            IntakeRow r;
            r.invoice = cells[0];
            r.producer = cells[1];
            r.gross_kg = Decimal::parse(cells[2]);
            r.tare_kg = Decimal::parse(cells[3]);
            r.moisture = Decimal::parse(cells[4]);
            r.impurity = Decimal::parse(cells[5]);
            r.broken = Decimal::parse(cells[6]);
            r.greenish = Decimal::parse(cells[7]);
            r.damaged = Decimal::parse(cells[8]);
            r.analyte = cells[9];
            r.concentration = Decimal::parse(cells[10]);
            r.silo = cells[11];
            if (r.invoice.empty() || r.producer.empty() || r.analyte.empty() || r.silo.empty())
                fail(ErrorCode::BadFormat, "empty identifier column");
            rows.push_back(std::move(r));
        }
        catch (const Error& e)
        {
            fail(ErrorCode::BadFormat, where + e.message());
        }
    }
    if (!header_seen)
        fail(ErrorCode::BadFormat, "scenario CSV is empty");
    return rows;
}

std::string write_scenario_csv(const std::vector<IntakeRow>& rows)
{
    std::string out = std::string(kScenarioHeader) + "\n";
    for (const auto& r : rows)
    {
        for (const std::string& cell : {r.invoice, r.producer, r.gross_kg.to_string(), r.tare_kg.to_string(),
                 r.moisture.to_string(), r.impurity.to_string(), r.broken.to_string(), r.greenish.to_string(),
                 r.damaged.to_string(), r.analyte, r.concentration.to_string()})
            out += cell + ",";
        out += r.silo + "\n";
    }
    return out;
}

std::vector<LotDirective> default_lots(const std::vector<IntakeRow>& rows)
{
    std::vector<LotDirective> lots;
    std::set<std::string> seen;
    for (const auto& r : rows)
    {
        if (!seen.insert(r.silo).second)
            continue;
        lots.push_back({"LOT-" + r.silo + "-1", r.silo, Decimal(1), "OUT-" + r.silo + "-1",
            Decimal(41000), Decimal(15000)});
    }
    return lots;
}

Scenario generate_scenario(std::uint64_t seed, std::size_t rows, std::size_t silos)
{
    if (silos == 0 || silos > 26)
        fail(ErrorCode::InvalidArgument, "silo count must be within [1, 26]");
    std::mt19937_64 rng(seed);
    Scenario s;
    s.seed = seed;
    for (std::size_t i = 0; i < rows; ++i)
    {
        IntakeRow r;
        char invoice[32];
        std::snprintf(invoice, sizeof invoice, "INV-%05zu", i + 1);
        r.invoice = invoice;
        r.producer = std::uniform_int_distribution<int>(0, 1)(rng) ? "p-002" : "p-001";
        r.gross_kg = Decimal(std::uniform_int_distribution<int>(38000, 46000)(rng));
        r.tare_kg = Decimal(std::uniform_int_distribution<int>(13000, 17000)(rng));
        r.moisture = tenths(rng, 100, 160);
        r.impurity = tenths(rng, 5, 50);
        r.broken = tenths(rng, 10, 80);
        r.greenish = tenths(rng, 0, 30);
        r.damaged = tenths(rng, 5, 50);
        if (std::uniform_int_distribution<int>(0, 9)(rng) == 0)
        {
            r.analyte = "aflatoxin";
            r.concentration = tenths(rng, 10, 300);
        }
        else
        {
            r.analyte = std::string(kGmo);
            r.concentration = Decimal(std::uniform_int_distribution<int>(5, 150)(rng)).shifted_right(2);
        }
        r.silo = std::string("silo-") + static_cast<char>('A' + i % silos);
        s.intakes.push_back(std::move(r));
    }
    s.lots = default_lots(s.intakes);
    return s;
}

std::string_view to_string(TxStatus status)
{
    switch (status)
    {
    case TxStatus::valid:
        return "VALID";
    case TxStatus::invalid:
        return "INVALID";
    case TxStatus::rejected:
        return "REJECTED";
    }
    return "?";
}

ledger::Document ScenarioStep::to_document() const
{
    return {
        {"args", submission.args},
        {"error", result.error},
        {"operation", submission.operation},
        {"status", to_string(result.status)},
        {"step", step},
        {"subject", subject},
        {"tx_id", result.tx_id},
    };
}

std::vector<const ScenarioStep*> ScenarioReport::failures() const
{
    std::vector<const ScenarioStep*> out;
    for (const auto& s : log)
    {
        if (s.result.status == TxStatus::valid)
            continue;
        if (s.step == "register_silo" && s.result.error.find("DuplicateAsset") != std::string::npos)
            continue;
        out.push_back(&s);
    }
    return out;
}

ledger::Document ScenarioReport::to_document() const
{
    ledger::Document steps = ledger::Document::array();
    for (const auto& s : log)
        steps.push_back(s.to_document());
    return {{"all_valid", all_valid()}, {"failures", failures().size()}, {"steps", std::move(steps)}};
}

ScenarioReport run_scenario(const Scenario& scenario, ScenarioClient& client, const ScenarioParticipants& who)
{
    ScenarioReport report;
    std::set<std::string> failed;  // invoices that can no longer progress

    auto submit = [&](const std::string& contract_op_step, std::vector<ScenarioStep> steps) {
        std::vector<Submission> batch;
        for (const auto& s : steps)
            batch.push_back(s.submission);
        auto results = batch.empty() ? std::vector<SubmitResult>() : client.submit_batch(batch);
        if (results.size() != steps.size())
            fail(ErrorCode::Io, contract_op_step + ": client returned " + std::to_string(results.size()) +
                                    " results for " + std::to_string(steps.size()) + " submissions");
        for (std::size_t i = 0; i < steps.size(); ++i)
        {
            steps[i].result = results[i];
            report.log.push_back(std::move(steps[i]));
        }
    };
    auto step = [&](std::string name, std::string subject, const std::string& participant, std::string op,
                    ledger::Document args) {
        return ScenarioStep{std::move(name), std::move(subject),
            Submission{participant, who.channel, std::string("grain"), std::move(op), std::move(args)}, {}};
    };
    auto mark_failures = [&](std::size_t from) {
        for (std::size_t i = from; i < report.log.size(); ++i)
            if (report.log[i].result.status != TxStatus::valid)
                failed.insert(report.log[i].subject);
    };

    // Silos, in order of first appearance.
    std::vector<ScenarioStep> batch;
    std::set<std::string> silos;
    for (const auto& r : scenario.intakes)
        if (silos.insert(r.silo).second)
            batch.push_back(step("register_silo", r.silo, who.warehouse, "register_silo",
                {{"grain", "soy"}, {"silo_id", r.silo}}));
    submit("register_silo", std::move(batch));

    auto phase = [&](const std::string& name, const std::string& participant, const std::string& op,
                     auto make_args) {
        std::vector<ScenarioStep> steps;
        for (const auto& r : scenario.intakes)
            if (!failed.contains(r.invoice))
                steps.push_back(step(name, r.invoice, participant, op, make_args(r)));
        std::size_t mark = report.log.size();
        submit(name, std::move(steps));
        mark_failures(mark);
    };

    phase("weigh_in", who.warehouse, "record_weigh_in", [](const IntakeRow& r) {
        return ledger::Document{{"Invoice_Number", r.invoice}, {"direction", "incoming"}, {"grain", "soy"},
            {"gross_kg", r.gross_kg.to_json()}, {"producer_id", r.producer}, {"tare_kg", r.tare_kg.to_json()},
            {"truck_plate", "TRK-" + r.invoice}};
    });
    phase("extrinsic", who.qa, "record_extrinsic", [](const IntakeRow& r) {
        return ledger::Document{{"Broken_Percent", r.broken.to_json()}, {"Damaged_Percent", r.damaged.to_json()},
            {"Greenish_Percent", r.greenish.to_json()}, {"Impurity_Percent", r.impurity.to_json()},
            {"Invoice_Number", r.invoice}, {"Moisture_Percent", r.moisture.to_json()},
            {"Sample_Number", "S-" + r.invoice}};
    });
    phase("discounts", who.qa, "DiscountsTransaction",
        [](const IntakeRow& r) { return ledger::Document{{"Invoice_Number", r.invoice}}; });
    phase("intrinsic", who.qa, "record_intrinsic", [](const IntakeRow& r) {
        return ledger::Document{{"Invoice_Number", r.invoice}, {"Sample_Number", "S-" + r.invoice},
            {"analyte", r.analyte}, {"concentration", r.concentration.to_json()},
            {"strip_lot_id", "STRIP-" + r.analyte}};
    });

    // Assignments append to the silo asset, so one per silo per block.
    std::map<std::string, std::vector<const IntakeRow*>> per_silo;
    for (const auto& r : scenario.intakes)
        if (!failed.contains(r.invoice))
            per_silo[r.silo].push_back(&r);
    for (std::size_t round = 0;; ++round)
    {
        std::vector<ScenarioStep> steps;
        for (const auto& [silo, rows] : per_silo)
            if (round < rows.size())
                steps.push_back(step("assign", rows[round]->invoice, who.qa, "assign_silo",
                    {{"Invoice_Number", rows[round]->invoice}, {"silo_id", silo}}));
        if (steps.empty())
            break;
        std::size_t mark = report.log.size();
        submit("assign", std::move(steps));
        mark_failures(mark);
    }

    batch.clear();
    for (const auto& lot : scenario.lots)
        batch.push_back(step("outgoing", lot.lot_id, who.warehouse, "record_weigh_in",
            {{"Invoice_Number", lot.outgoing_invoice}, {"direction", "outgoing"}, {"grain", "soy"},
                {"gross_kg", lot.gross_kg.to_json()}, {"producer_id", who.warehouse},
                {"tare_kg", lot.tare_kg.to_json()}, {"truck_plate", "TRK-" + lot.outgoing_invoice}}));
    std::size_t mark = report.log.size();
    submit("outgoing", std::move(batch));
    mark_failures(mark);

    // Lots on the same silo would conflict; scenarios create at most one per
    // silo per batch.
    std::vector<const LotDirective*> pending;
    for (const auto& lot : scenario.lots)
        if (!failed.contains(lot.lot_id))
            pending.push_back(&lot);
    while (!pending.empty())
    {
        std::set<std::string> used;
        std::vector<ScenarioStep> steps;
        std::vector<const LotDirective*> later;
        for (const auto* lot : pending)
        {
            if (!used.insert(lot->silo_id).second)
            {
                later.push_back(lot);
                continue;
            }
            steps.push_back(step("lot", lot->lot_id, who.warehouse, "create_outgoing_lot",
                {{"base_price_per_kg", lot->base_price_per_kg.to_json()}, {"lot_id", lot->lot_id},
                    {"outgoing_tickets", ledger::Document::array({lot->outgoing_invoice})},
                    {"silo_id", lot->silo_id}}));
        }
        submit("lot", std::move(steps));
        pending = std::move(later);
    }
    return report;
}

}  // namespace grainledger::grain
