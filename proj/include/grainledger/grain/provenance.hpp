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
#pragma once

#include "grainledger/grain/assets.hpp"
#include "grainledger/identity/keys.hpp"
#include "grainledger/ledger/world_state.hpp"

#include <string>
#include <vector>

namespace grainledger::grain
{
/// Origin of an outgoing lot, read only from committed state:
///
///   {lot, lot_version, silo_id, window,
///    intakes: [{invoice, producer_id, contribution_kg, weigh_ticket, weigh_in_tx,
///               extrinsic, extrinsic_tx, discount_txs, intrinsic: [{analysis, tx_id}],
///               silo_tx}]}
///
/// Intakes are sorted by invoice. Throws Error(LotNotFound).
Document trace_lot_provenance(const ledger::StateReader& state, std::string_view lot_id);

/// Invoices a provenance document lists, in order.
std::vector<std::string> provenance_invoices(const Document& tree);

/// Signed statement of a completed intake that a producer can take to a bank.
struct IngestReceipt
{
    Document body;  // {invoice, producer, net_kg, discounts, greenish, contribution_kg, silo, tx_ids, issuer, issued_at}
    ledger::Signature signature;

    Document to_document() const;
    static IngestReceipt from_document(const Document& doc);
};

/// Throws Error(IncompleteIntake) unless weigh-in, both analyses, discounts
/// and silo assignment are on the ledger.
IngestReceipt issue_ingest_receipt(const ledger::StateReader& state, std::string_view invoice,
    const identity::KeyPair& signer, std::string_view issuer, std::int64_t issued_at);

bool verify_receipt_signature(const IngestReceipt& receipt, std::span<const std::uint8_t> public_key);

/// Every tx_id the receipt cites.
std::vector<std::string> receipt_tx_ids(const IngestReceipt& receipt);

}  // namespace grainledger::grain
