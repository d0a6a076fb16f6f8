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
#include "grainledger/grain/contract.hpp"
#include "grainledger/common/error.hpp"
#include "grainledger/qa/strip.hpp"

namespace grainledger::grain
{
using contract::AssetRegistry;
using contract::TxContext;

namespace
{
std::string text_arg(const Document& args, const char* name)
{
    if (!args.is_object() || !args.contains(name) || !args[name].is_string() ||
        args[name].get<std::string>().empty())
        fail(ErrorCode::InvalidArgument, std::string("argument '") + name + "' must be a non-empty string");
    return args[name].get<std::string>();
}

GrainConfig config_of(TxContext& ctx)
{
    auto doc = ctx.get_state(state_key(registry::kConfig, kConfigId));
    return doc ? GrainConfig::from_document(*doc) : default_config();
}

void check_percent(const Decimal& value, const char* name)
{
    if (value.is_negative() || value > Decimal(100))
        fail(ErrorCode::OutOfRange, std::string(name) + " must be within [0, 100]");
}

Document incoming_ticket(TxContext& ctx, const std::string& invoice, ErrorCode missing)
{
    AssetRegistry tickets(ctx, std::string(registry::kWeighTicket));
    auto ticket = tickets.find(ticket_id("incoming", invoice));
    if (!ticket)
        fail(missing, "no incoming weigh ticket for invoice " + invoice);
    return *ticket;
}

void record_weigh_in(TxContext& ctx, const Document& args)
{
    WeighTicket t = WeighTicket::from_document(args);
    if (args.contains("net_kg") && t.net_kg != t.gross_kg - t.tare_kg)
        fail(ErrorCode::BadWeights, "net_kg must equal gross_kg - tare_kg");
    t.net_kg = t.gross_kg - t.tare_kg;
    if (t.tare_kg.is_negative() || !(t.net_kg > Decimal(0)))
        fail(ErrorCode::BadWeights, "net weight must be positive (gross " + t.gross_kg.to_string() +
                                        ", tare " + t.tare_kg.to_string() + ")");
    if (t.grain != "soy" && t.grain != "corn")
        fail(ErrorCode::InvalidArgument, "grain must be soy or corn");
    if (!args.contains("timestamp"))
        t.timestamp = ctx.invocation().timestamp;

    AssetRegistry tickets(ctx, std::string(registry::kWeighTicket));
    std::string id = ticket_id(t.direction, t.invoice_number);
    if (tickets.exists(id))
        fail(ErrorCode::DuplicateInvoice, t.direction + " invoice " + t.invoice_number + " already recorded");
    tickets.add(id, t.to_document());

    if (t.direction == "incoming")
    {
        AssetRegistry intakes(ctx, std::string(registry::kIntake));
        intakes.add(t.invoice_number, {
                                          {"Invoice_Number", t.invoice_number},
                                          {"discount_txs", Document::array()},
                                          {"extrinsic_tx", nullptr},
                                          {"grain", t.grain},
                                          {"intrinsic_txs", Document::object()},
                                          {"producer_id", t.producer_id},
                                          {"silo_id", nullptr},
                                          {"silo_tx", nullptr},
                                          {"silo_window", nullptr},
                                          {"weigh_in_tx", ctx.invocation().tx_id},
                                      });
    }
    ctx.emit("WeighInRecorded", {{"direction", t.direction}, {"invoice", t.invoice_number}});
}

void record_extrinsic(TxContext& ctx, const Document& args)
{
    std::string invoice = text_arg(args, "Invoice_Number");
    incoming_ticket(ctx, invoice, ErrorCode::NoWeighTicket);

    ExtrinsicAnalysis a;
    a.invoice_number = invoice;
    a.sample_number = text_arg(args, "Sample_Number");
    a.operator_id = ctx.invocation().submitter;
    a.date = args.contains("date") ? args["date"].get<std::int64_t>() : ctx.invocation().timestamp;
    a.measures.moisture = decimal_field(args, "Moisture_Percent");
    a.measures.impurity = decimal_field(args, "Impurity_Percent");
    a.measures.broken = decimal_field(args, "Broken_Percent");
    a.measures.greenish = decimal_field(args, "Greenish_Percent");
    a.measures.damaged = decimal_field(args, "Damaged_Percent");
    check_percent(a.measures.moisture, "Moisture_Percent");
    check_percent(a.measures.impurity, "Impurity_Percent");
    check_percent(a.measures.broken, "Broken_Percent");
    check_percent(a.measures.greenish, "Greenish_Percent");
    check_percent(a.measures.damaged, "Damaged_Percent");

    AssetRegistry analyses(ctx, std::string(registry::kExtrinsic));
    analyses.add(invoice, a.to_document());

    AssetRegistry intakes(ctx, std::string(registry::kIntake));
    Document intake = intakes.get(invoice);
    intake["extrinsic_tx"] = ctx.invocation().tx_id;
    intakes.update(invoice, std::move(intake));
    ctx.emit("ExtrinsicRecorded", {{"invoice", invoice}});
}

void discounts_transaction(TxContext& ctx, const Document& args)
{
    std::string invoice = text_arg(args, "Invoice_Number");
    GrainConfig config = config_of(ctx);
    DiscountMode mode = args.contains("mode") ? parse_discount_mode(text_arg(args, "mode"))
                                              : config.discount_mode;

    AssetRegistry analyses(ctx, std::string(registry::kExtrinsic));
    ExtrinsicAnalysis a = ExtrinsicAnalysis::from_document(analyses.get(invoice));

    AssetRegistry intakes(ctx, std::string(registry::kIntake));
    Document intake = intakes.get(invoice);
    if (!intake["silo_id"].is_null())
        fail(ErrorCode::InvalidArgument, "invoice " + invoice + " is already assigned to a silo");

    a.total_discounts = compute_discount(a.measures, mode).rounded(Decimal::kLedgerDigits);
    Document asset = a.to_document();
    analyses.update(invoice, asset);

    intake["discount_txs"].push_back(ctx.invocation().tx_id);
    intake["discount_mode"] = to_string(mode);
    intakes.update(invoice, std::move(intake));
    ctx.emit("DiscountsEvent", {{"asset", std::move(asset)}});
}

void record_intrinsic(TxContext& ctx, const Document& args)
{
    std::string invoice = text_arg(args, "Invoice_Number");
    incoming_ticket(ctx, invoice, ErrorCode::NoWeighTicket);
    GrainConfig config = config_of(ctx);

    IntrinsicAnalysis a;
    a.invoice_number = invoice;
    a.sample_number = text_arg(args, "Sample_Number");
    a.analyte = text_arg(args, "analyte");
    a.operator_id = ctx.invocation().submitter;
    a.date = args.contains("date") ? args["date"].get<std::int64_t>() : ctx.invocation().timestamp;
    if (!config.known_analyte(a.analyte))
        fail(ErrorCode::UnknownAnalyte, "analyte '" + a.analyte + "' is not configured");

    Document extra = Document::object();
    if (args.contains("barcode"))
    {
        qa::StripLot lot = qa::decode_curve_barcode(text_arg(args, "barcode"));
        if (lot.analyte != a.analyte)
            fail(ErrorCode::InvalidArgument,
                "strip lot " + lot.strip_lot_id + " is for " + lot.analyte + ", not " + a.analyte);
        if (!args.contains("raw_response") || !args["raw_response"].is_number())
            fail(ErrorCode::InvalidArgument, "barcode readings need a numeric raw_response");
        auto q = qa::quantify(lot.curve, args["raw_response"].get<double>(), lot.c_min, lot.c_max);
        a.concentration = Decimal::from_double(q.concentration).rounded(Decimal::kLedgerDigits);
        a.strip_lot_id = lot.strip_lot_id;
        extra["quant_flag"] = qa::to_string(q.flag);
        extra["raw_response"] = args["raw_response"];
    }
    else
    {
        a.concentration = decimal_field(args, "concentration");
        a.strip_lot_id = text_arg(args, "strip_lot_id");
    }
    if (a.concentration.is_negative())
        fail(ErrorCode::OutOfRange, "concentration must be non-negative");
    a.pass = config.passes(a.analyte, a.concentration);

    Document doc = a.to_document();
    doc.update(extra);
    AssetRegistry analyses(ctx, std::string(registry::kIntrinsic));
    analyses.add(intrinsic_id(invoice, a.analyte), std::move(doc));

    AssetRegistry intakes(ctx, std::string(registry::kIntake));
    Document intake = intakes.get(invoice);
    intake["intrinsic_txs"][a.analyte] = ctx.invocation().tx_id;
    intakes.update(invoice, std::move(intake));
    ctx.emit("IntrinsicRecorded", {{"analyte", a.analyte}, {"invoice", invoice}, {"pass", a.pass}});
}

void register_silo(TxContext& ctx, const Document& args)
{
    Silo s;
    s.silo_id = text_arg(args, "silo_id");
    s.grain = text_arg(args, "grain");
    if (s.grain != "soy" && s.grain != "corn")
        fail(ErrorCode::InvalidArgument, "grain must be soy or corn");
    AssetRegistry silos(ctx, std::string(registry::kSilo));
    silos.add(s.silo_id, s.to_document());
}

void assign_silo(TxContext& ctx, const Document& args)
{
    std::string invoice = text_arg(args, "Invoice_Number");
    std::string silo_id = text_arg(args, "silo_id");

    AssetRegistry intakes(ctx, std::string(registry::kIntake));
    auto intake = intakes.find(invoice);
    if (!intake)
        fail(ErrorCode::IncompleteIntake, "no weigh ticket for invoice " + invoice);
    if (!(*intake)["silo_id"].is_null())
        fail(ErrorCode::InvalidArgument, "invoice " + invoice + " is already assigned");
    if ((*intake)["extrinsic_tx"].is_null())
        fail(ErrorCode::IncompleteIntake, "missing extrinsic analysis for " + invoice);
    if ((*intake)["discount_txs"].empty())
        fail(ErrorCode::IncompleteIntake, "discounts not computed for " + invoice);
    if ((*intake)["intrinsic_txs"].empty())
        fail(ErrorCode::IncompleteIntake, "missing intrinsic analysis for " + invoice);

    WeighTicket ticket = WeighTicket::from_document(incoming_ticket(ctx, invoice, ErrorCode::IncompleteIntake));
    AssetRegistry analyses(ctx, std::string(registry::kExtrinsic));
    ExtrinsicAnalysis a = ExtrinsicAnalysis::from_document(analyses.get(invoice));

    AssetRegistry silos(ctx, std::string(registry::kSilo));
    Silo silo = Silo::from_document(silos.get(silo_id));
    if (silo.grain != ticket.grain)
        fail(ErrorCode::GrainMismatch, "silo " + silo_id + " holds " + silo.grain + ", cargo is " + ticket.grain);

    Decimal kept = Decimal(1) - a.total_discounts.shifted_right(2);
    Decimal contribution = (ticket.net_kg * kept).rounded(Decimal::kLedgerDigits);
    silo.contributions.push_back({invoice, contribution});
    silos.update(silo_id, silo.to_document());

    (*intake)["silo_id"] = silo_id;
    (*intake)["silo_window"] = silo.current_lot_window;
    (*intake)["silo_tx"] = ctx.invocation().tx_id;
    intakes.update(invoice, std::move(*intake));
    ctx.emit("SiloAssigned", {{"contribution_kg", contribution.to_json()}, {"invoice", invoice},
                                 {"silo_id", silo_id}, {"window", silo.current_lot_window}});
}

void create_outgoing_lot(TxContext& ctx, const Document& args)
{
    GrainConfig config = config_of(ctx);
    Lot lot;
    lot.lot_id = text_arg(args, "lot_id");
    lot.silo_id = text_arg(args, "silo_id");
    lot.base_price_per_kg = decimal_field(args, "base_price_per_kg");
    if (lot.base_price_per_kg.is_negative())
        fail(ErrorCode::OutOfRange, "base_price_per_kg must be non-negative");
    if (!args.contains("outgoing_tickets") || !args["outgoing_tickets"].is_array() ||
        args["outgoing_tickets"].empty())
        fail(ErrorCode::InvalidArgument, "outgoing_tickets must be a non-empty list");
    lot.outgoing_tickets = args["outgoing_tickets"].get<std::vector<std::string>>();

    AssetRegistry lots(ctx, std::string(registry::kLot));
    if (lots.exists(lot.lot_id))
        fail(ErrorCode::DuplicateAsset, "lot " + lot.lot_id + " already exists");

    AssetRegistry silos(ctx, std::string(registry::kSilo));
    Silo silo = Silo::from_document(silos.get(lot.silo_id));
    if (silo.contributions.empty())
        fail(ErrorCode::EmptySilo, "silo " + lot.silo_id + " has no contributions in window " +
                                       std::to_string(silo.current_lot_window));

    AssetRegistry tickets(ctx, std::string(registry::kWeighTicket));
    for (const auto& invoice : lot.outgoing_tickets)
        if (!tickets.exists(ticket_id("outgoing", invoice)))
            fail(ErrorCode::UncommittedTicket, "outgoing ticket " + invoice + " is not on the ledger");

    AssetRegistry intrinsic(ctx, std::string(registry::kIntrinsic));
    bool certified = true;
    for (const auto& c : silo.contributions)
    {
        auto gmo = intrinsic.find(intrinsic_id(c.invoice_number, kGmo));
        if (!gmo || !(decimal_field(*gmo, "concentration") < config.gm_free_threshold))
            certified = false;
    }
    lot.lot_window = silo.current_lot_window;
    lot.gm_free_certified = certified;
    lot.final_price_per_kg =
        certified ? (lot.base_price_per_kg * (Decimal(1) + config.gm_free_premium)).rounded(Decimal::kLedgerDigits)
                  : lot.base_price_per_kg;
    Document lot_doc = lot.to_document();
    lots.add(lot.lot_id, lot_doc);

    Document window = silo.to_document();
    window["lot_id"] = lot.lot_id;
    AssetRegistry windows(ctx, std::string(registry::kSiloWindow));
    windows.add(window_id(silo.silo_id, silo.current_lot_window), std::move(window));

    silo.current_lot_window += 1;
    silo.contributions.clear();
    silos.update(silo.silo_id, silo.to_document());
    ctx.emit("LotCreated", {{"lot", std::move(lot_doc)}});
}

void configure(TxContext& ctx, const Document& args)
{
    GrainConfig config = GrainConfig::from_document(args);
    ctx.get_state(state_key(registry::kConfig, kConfigId));
    ctx.put_state(state_key(registry::kConfig, kConfigId), config.to_document());
}

}  // namespace

GrainConfig load_config(const ledger::StateReader& state)
{
    const auto* entry = state.find(state_key(registry::kConfig, kConfigId));
    return entry ? GrainConfig::from_document(entry->value) : default_config();
}

contract::ContractDefinition grain_contract(std::string policy_ref)
{
    contract::ContractDefinition def;
    def.contract_id = std::string(kContractId);
    def.version = 1;
    def.endorsement_policy_ref = std::move(policy_ref);
    def.operations = {
        {"record_weigh_in", record_weigh_in},
        {"record_extrinsic", record_extrinsic},
        {"DiscountsTransaction", discounts_transaction},
        {"compute_discounts", discounts_transaction},
        {"record_intrinsic", record_intrinsic},
        {"register_silo", register_silo},
        {"assign_silo", assign_silo},
        {"create_outgoing_lot", create_outgoing_lot},
        {"configure", configure},
    };
    return def;
}

}  // namespace grainledger::grain
