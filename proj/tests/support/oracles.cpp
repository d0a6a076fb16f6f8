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
#include "oracles.hpp"
#include "bench.hpp"

#include <cmath>
#include <sstream>

namespace grainledger::test
{
std::vector<DiscountVector> load_discount_vectors()
{
    std::istringstream in(read_text(fixture("discount_vectors.csv")));
    std::string line;
    std::getline(in, line);
    std::vector<DiscountVector> out;
    while (std::getline(in, line))
    {
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');)
            f.push_back(cell);
        if (f.size() != 7)
            fail(ErrorCode::BadFormat, "discount vector row: " + line);
        out.push_back({{Decimal::parse(f[0]), Decimal::parse(f[1]), Decimal::parse(f[2]), Decimal::parse(f[3]),
                           Decimal::parse(f[4])},
            Decimal::parse(f[5]), Decimal::parse(f[6])});
    }
    return out;
}

std::int64_t integer_discount_thousandths(const grain::ExtrinsicMeasures& m, grain::DiscountMode mode)
{
    auto hundredths = [](const Decimal& d) { return std::llround(d.to_double() * 100.0); };
    const std::int64_t M = hundredths(m.moisture), I = hundredths(m.impurity), B = hundredths(m.broken),
                       D = hundredths(m.damaged);
    const bool corrected = mode == grain::DiscountMode::corrected;
    std::int64_t d = 0;
    if (M > 1200)
        d += (M - 1200) * 40;
    if (I > 300)
        d += (I - 300) * 25;
    if (B > 500)
        d += (corrected ? B - 500 : M - 500) * 10;
    if (D > 300)
        d += (corrected ? D - 300 : I - 300) * 35;
    return d;
}

ExpectedLot reconstruct_lot(const grain::Scenario& scenario, const grain::ScenarioReport& report,
    const std::string& lot_id)
{
    std::map<std::string, const grain::IntakeRow*> rows;
    for (const auto& r : scenario.intakes)
        rows[r.invoice] = &r;

    std::map<std::string, ExpectedIntake> intakes;
    std::map<std::string, std::vector<std::string>> window;  // silo -> invoices since its last lot
    for (const auto& s : report.log)
    {
        if (s.result.status != grain::TxStatus::valid)
            continue;
        const auto& args = s.submission.args;
        const std::string& tx = s.result.tx_id;
        if (s.step == "weigh_in")
        {
            const auto* r = rows.at(s.subject);
            auto& in = intakes[s.subject];
            in.invoice = r->invoice;
            in.producer = r->producer;
            in.net_kg = r->gross_kg - r->tare_kg;
            in.weigh_in_tx = tx;
        }
        else if (s.step == "extrinsic")
            intakes.at(s.subject).extrinsic_tx = tx;
        else if (s.step == "discounts")
        {
            const auto* r = rows.at(s.subject);
            grain::ExtrinsicMeasures m{r->moisture, r->impurity, r->broken, r->greenish, r->damaged};
            auto& in = intakes.at(s.subject);
            in.discount = Decimal(integer_discount_thousandths(m, grain::DiscountMode::corrected)).shifted_right(3);
            in.discount_txs.push_back(tx);
        }
        else if (s.step == "intrinsic")
        {
            intakes.at(s.subject).intrinsic[args.at("analyte").get<std::string>()] = {
                tx, Decimal::from_json(args.at("concentration"))};
        }
        else if (s.step == "assign")
        {
            auto& in = intakes.at(s.subject);
            in.silo_tx = tx;
            // net * (1 - d/100), d in thousandths of a percent.
            const std::int64_t d = integer_discount_thousandths(
                {rows.at(s.subject)->moisture, rows.at(s.subject)->impurity, rows.at(s.subject)->broken,
                    rows.at(s.subject)->greenish, rows.at(s.subject)->damaged},
                grain::DiscountMode::corrected);
            in.contribution_kg = (in.net_kg * Decimal(100000 - d)).shifted_right(5).rounded(4);
            window[args.at("silo_id").get<std::string>()].push_back(s.subject);
        }
        else if (s.step == "lot")
        {
            const std::string silo = args.at("silo_id").get<std::string>();
            if (s.subject == lot_id)
            {
                ExpectedLot lot;
                lot.lot_id = lot_id;
                lot.silo_id = silo;
                lot.base_price = Decimal::from_json(args.at("base_price_per_kg"));
                lot.certified = true;
                for (const auto& invoice : window[silo])
                {
                    const auto& in = intakes.at(invoice);
                    auto gmo = in.intrinsic.find("GMO");
                    if (gmo == in.intrinsic.end() || !(gmo->second.second < Decimal::parse("0.9")))
                        lot.certified = false;
                    lot.intakes.push_back(in);
                }
                std::sort(lot.intakes.begin(), lot.intakes.end(),
                    [](const auto& a, const auto& b) { return a.invoice < b.invoice; });
                lot.final_price =
                    lot.certified ? (lot.base_price * Decimal::parse("1.15")).rounded(4) : lot.base_price;
                return lot;
            }
            window[silo].clear();
        }
    }
    fail(ErrorCode::LotNotFound, "lot " + lot_id + " is not in the scenario log");
}

std::vector<std::string> provenance_differences(const ExpectedLot& expected, const ledger::Document& tree)
{
    std::vector<std::string> diffs;
    auto expect = [&](bool ok, const std::string& what) {
        if (!ok)
            diffs.push_back(what);
    };
    auto text = [](const ledger::Document& d) { return d.is_string() ? d.get<std::string>() : d.dump(); };

    expect(text(tree.at("silo_id")) == expected.silo_id, "silo_id " + text(tree.at("silo_id")));
    const auto& lot = tree.at("lot");
    expect(lot.at("gm_free_certified").get<bool>() == expected.certified, "gm_free_certified");
    expect(Decimal::from_json(lot.at("final_price_per_kg")) == expected.final_price,
        "final_price_per_kg " + lot.at("final_price_per_kg").dump());

    const auto& intakes = tree.at("intakes");
    expect(intakes.size() == expected.intakes.size(),
        "intake count " + std::to_string(intakes.size()) + " vs " + std::to_string(expected.intakes.size()));
    for (std::size_t i = 0; i < std::min(intakes.size(), expected.intakes.size()); ++i)
    {
        const auto& got = intakes[i];
        const auto& want = expected.intakes[i];
        const std::string at = want.invoice + ": ";
        expect(text(got.at("invoice")) == want.invoice, at + "invoice " + text(got.at("invoice")));
        expect(text(got.at("producer_id")) == want.producer, at + "producer_id");
        expect(Decimal::from_json(got.at("contribution_kg")) == want.contribution_kg,
            at + "contribution_kg " + got.at("contribution_kg").dump() + " vs " + want.contribution_kg.to_string());
        expect(text(got.at("weigh_in_tx")) == want.weigh_in_tx, at + "weigh_in_tx");
        expect(text(got.at("extrinsic_tx")) == want.extrinsic_tx, at + "extrinsic_tx");
        expect(text(got.at("silo_tx")) == want.silo_tx, at + "silo_tx");
        expect(got.at("discount_txs") == ledger::Document(want.discount_txs), at + "discount_txs");
        expect(Decimal::from_json(got.at("weigh_ticket").at("net_kg")) == want.net_kg, at + "weigh_ticket.net_kg");
        expect(Decimal::from_json(got.at("extrinsic").at("Total_Discounts_KG")) == want.discount,
            at + "Total_Discounts_KG");
        const auto& intrinsic = got.at("intrinsic");
        expect(intrinsic.size() == want.intrinsic.size(), at + "intrinsic count");
        for (const auto& entry : intrinsic)
        {
            const auto& analysis = entry.at("analysis");
            auto it = want.intrinsic.find(text(analysis.at("analyte")));
            if (it == want.intrinsic.end())
            {
                diffs.push_back(at + "unexpected analyte " + text(analysis.at("analyte")));
                continue;
            }
            expect(text(entry.at("tx_id")) == it->second.first, at + "intrinsic tx_id");
            expect(Decimal::from_json(analysis.at("concentration")) == it->second.second, at + "concentration");
        }
    }
    return diffs;
}

std::vector<bool> MvccOracle::apply(const ledger::Block& b)
{
    std::vector<bool> valid;
    for (std::uint32_t i = 0; i < b.transactions.size(); ++i)
    {
        const auto& rw = b.transactions[i].rwset;
        bool ok = !rw.aborted();
        for (const auto& r : rw.reads)
        {
            auto it = versions.find(r.key);
            std::optional<ledger::Version> now;
            if (it != versions.end())
                now = it->second;
            ok = ok && now == r.version;
        }
        if (ok)
            for (const auto& w : rw.writes)
                versions[w.key] = ledger::Version{b.header.height, i};
        valid.push_back(ok);
    }
    return valid;
}

}  // namespace grainledger::test
