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
#include "grainledger/grain/provenance.hpp"
#include "grainledger/common/error.hpp"

#include <algorithm>

namespace grainledger::grain
{
namespace
{
const Document* lookup(const ledger::StateReader& state, std::string_view registry_id, std::string_view id)
{
    const auto* entry = state.find(state_key(registry_id, id));
    return entry ? &entry->value : nullptr;
}

Document intrinsic_list(const ledger::StateReader& state, const std::string& invoice, const Document& intake)
{
    Document list = Document::array();
    for (const auto& [analyte, tx_id] : intake.at("intrinsic_txs").items())
    {
        const Document* analysis = lookup(state, registry::kIntrinsic, intrinsic_id(invoice, analyte));
        list.push_back({{"analysis", analysis ? *analysis : Document()}, {"tx_id", tx_id}});
    }
    return list;
}

}  // namespace

Document trace_lot_provenance(const ledger::StateReader& state, std::string_view lot_id)
{
    const auto* lot_entry = state.find(state_key(registry::kLot, lot_id));
    if (!lot_entry)
        fail(ErrorCode::LotNotFound, "lot " + std::string(lot_id) + " is not on the ledger");
    Lot lot = Lot::from_document(lot_entry->value);

    const Document* window = lookup(state, registry::kSiloWindow, window_id(lot.silo_id, lot.lot_window));
    if (!window)
        fail(ErrorCode::LotNotFound, "silo window for lot " + std::string(lot_id) + " is missing");
    Silo contributors = Silo::from_document(*window);
    std::sort(contributors.contributions.begin(), contributors.contributions.end(),
        [](const auto& a, const auto& b) { return a.invoice_number < b.invoice_number; });

    Document intakes = Document::array();
    for (const auto& c : contributors.contributions)
    {
        const Document* intake = lookup(state, registry::kIntake, c.invoice_number);
        const Document* ticket = lookup(state, registry::kWeighTicket, ticket_id("incoming", c.invoice_number));
        const Document* extrinsic = lookup(state, registry::kExtrinsic, c.invoice_number);
        if (!intake || !ticket || !extrinsic)
            fail(ErrorCode::IncompleteIntake, "intake records for " + c.invoice_number + " are missing");
        intakes.push_back({
            {"contribution_kg", c.net_kg_after_discounts.to_json()},
            {"discount_txs", intake->at("discount_txs")},
            {"extrinsic", *extrinsic},
            {"extrinsic_tx", intake->at("extrinsic_tx")},
            {"intrinsic", intrinsic_list(state, c.invoice_number, *intake)},
            {"invoice", c.invoice_number},
            {"producer_id", intake->at("producer_id")},
            {"silo_tx", intake->at("silo_tx")},
            {"weigh_in_tx", intake->at("weigh_in_tx")},
            {"weigh_ticket", *ticket},
        });
    }
    return {
        {"intakes", std::move(intakes)},
        {"lot", lot_entry->value},
        {"lot_version", ledger::to_document(lot_entry->version)},
        {"silo_id", lot.silo_id},
        {"window", lot.lot_window},
    };
}

std::vector<std::string> provenance_invoices(const Document& tree)
{
    std::vector<std::string> out;
    for (const auto& intake : tree.at("intakes"))
        out.push_back(intake.at("invoice").get<std::string>());
    return out;
}

Document IngestReceipt::to_document() const
{
    return {{"receipt", body}, {"signature", ledger::to_document(signature)}};
}

IngestReceipt IngestReceipt::from_document(const Document& doc)
{
    if (!doc.is_object() || !doc.contains("receipt") || !doc.contains("signature"))
        fail(ErrorCode::BadFormat, "receipt must have 'receipt' and 'signature'");
    return {doc["receipt"], ledger::signature_from_document(doc["signature"])};
}

IngestReceipt issue_ingest_receipt(const ledger::StateReader& state, std::string_view invoice,
    const identity::KeyPair& signer, std::string_view issuer, std::int64_t issued_at)
{
    const Document* intake = lookup(state, registry::kIntake, invoice);
    const Document* ticket = lookup(state, registry::kWeighTicket, ticket_id("incoming", invoice));
    if (!intake || !ticket)
        fail(ErrorCode::IncompleteIntake, "no intake for invoice " + std::string(invoice));
    const Document* extrinsic = lookup(state, registry::kExtrinsic, invoice);
    if (!extrinsic || intake->at("discount_txs").empty())
        fail(ErrorCode::IncompleteIntake, "extrinsic analysis or discounts missing for " + std::string(invoice));
    if (intake->at("intrinsic_txs").empty())
        fail(ErrorCode::IncompleteIntake, "intrinsic analysis missing for " + std::string(invoice));
    if (intake->at("silo_id").is_null())
        fail(ErrorCode::IncompleteIntake, "invoice " + std::string(invoice) + " has no silo assignment");

    WeighTicket t = WeighTicket::from_document(*ticket);
    ExtrinsicAnalysis a = ExtrinsicAnalysis::from_document(*extrinsic);
    Decimal contribution = (t.net_kg * (Decimal(1) - a.total_discounts.shifted_right(2))).rounded();

    Document body = {
        {"contribution_kg", contribution.to_json()},
        {"discounts", a.total_discounts.to_json()},
        {"greenish", a.measures.greenish.to_json()},
        {"invoice", std::string(invoice)},
        {"issued_at", issued_at},
        {"issuer", std::string(issuer)},
        {"net_kg", t.net_kg.to_json()},
        {"producer", t.producer_id},
        {"silo", intake->at("silo_id")},
        {"tx_ids",
            {
                {"discounts", intake->at("discount_txs")},
                {"extrinsic", intake->at("extrinsic_tx")},
                {"intrinsic", intake->at("intrinsic_txs")},
                {"silo", intake->at("silo_tx")},
                {"weigh_in", intake->at("weigh_in_tx")},
            }},
    };
    ledger::Signature sig = signer.sign(ledger::canonicalize(body));
    return {std::move(body), std::move(sig)};
}

bool verify_receipt_signature(const IngestReceipt& receipt, std::span<const std::uint8_t> public_key)
{
    std::string bytes;
    try
    {
        bytes = ledger::canonicalize(receipt.body);
    }
    catch (const Error&)
    {
        return false;
    }
    return identity::verify_signature(receipt.signature, bytes, public_key);
}

std::vector<std::string> receipt_tx_ids(const IngestReceipt& receipt)
{
    std::vector<std::string> out;
    const Document& ids = receipt.body.at("tx_ids");
    for (const char* single : {"weigh_in", "extrinsic", "silo"})
        out.push_back(ids.at(single).get<std::string>());
    for (const auto& id : ids.at("discounts"))
        out.push_back(id.get<std::string>());
    for (const auto& [_, id] : ids.at("intrinsic").items())
        out.push_back(id.get<std::string>());
    return out;
}

}  // namespace grainledger::grain
