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
#include "grainledger/grain/assets.hpp"
#include "grainledger/common/error.hpp"

namespace grainledger::grain
{
namespace
{
std::string str(const Document& doc, const char* name)
{
    if (!doc.is_object() || !doc.contains(name) || !doc[name].is_string())
        fail(ErrorCode::InvalidArgument, std::string("missing string field '") + name + "'");
    return doc[name].get<std::string>();
}

std::int64_t integer(const Document& doc, const char* name)
{
    if (!doc.is_object() || !doc.contains(name) || !doc[name].is_number_integer())
        fail(ErrorCode::InvalidArgument, std::string("missing integer field '") + name + "'");
    return doc[name].get<std::int64_t>();
}

}  // namespace

Decimal decimal_field(const Document& doc, const char* name)
{
    if (!doc.is_object() || !doc.contains(name))
        fail(ErrorCode::InvalidArgument, std::string("missing decimal field '") + name + "'");
    return Decimal::from_json(doc[name]);
}

std::string state_key(std::string_view registry_id, std::string_view id)
{
    return std::string(registry_id) + "#" + std::string(id);
}

std::string ticket_id(std::string_view direction, std::string_view invoice)
{
    return std::string(direction) + ":" + std::string(invoice);
}

std::string intrinsic_id(std::string_view invoice, std::string_view analyte)
{
    return std::string(invoice) + ":" + std::string(analyte);
}

std::string window_id(std::string_view silo_id, std::int64_t window)
{
    return std::string(silo_id) + ":" + std::to_string(window);
}

Document ExtrinsicAnalysis::to_document() const
{
    return {
        {"Broken_Percent", measures.broken.to_json()},
        {"Damaged_Percent", measures.damaged.to_json()},
        {"Greenish_Percent", measures.greenish.to_json()},
        {"Impurity_Percent", measures.impurity.to_json()},
        {"Invoice_Number", invoice_number},
        {"Moisture_Percent", measures.moisture.to_json()},
        {"Sample_Number", sample_number},
        {"Total_Discounts_KG", total_discounts.to_json()},
        {"date", date},
        {"operator", operator_id},
    };
}

ExtrinsicAnalysis ExtrinsicAnalysis::from_document(const Document& doc)
{
    ExtrinsicAnalysis a;
    a.invoice_number = str(doc, "Invoice_Number");
    a.operator_id = str(doc, "operator");
    a.date = integer(doc, "date");
    a.sample_number = str(doc, "Sample_Number");
    a.measures.moisture = decimal_field(doc, "Moisture_Percent");
    a.measures.impurity = decimal_field(doc, "Impurity_Percent");
    a.measures.broken = decimal_field(doc, "Broken_Percent");
    a.measures.greenish = decimal_field(doc, "Greenish_Percent");
    a.measures.damaged = decimal_field(doc, "Damaged_Percent");
    a.total_discounts = doc.contains("Total_Discounts_KG") ? decimal_field(doc, "Total_Discounts_KG") : 0;
    return a;
}

Document IntrinsicAnalysis::to_document() const
{
    return {
        {"Invoice_Number", invoice_number},
        {"Sample_Number", sample_number},
        {"analyte", analyte},
        {"concentration", concentration.to_json()},
        {"date", date},
        {"operator", operator_id},
        {"pass", pass},
        {"strip_lot_id", strip_lot_id},
    };
}

IntrinsicAnalysis IntrinsicAnalysis::from_document(const Document& doc)
{
    IntrinsicAnalysis a;
    a.invoice_number = str(doc, "Invoice_Number");
    a.sample_number = str(doc, "Sample_Number");
    a.analyte = str(doc, "analyte");
    a.concentration = decimal_field(doc, "concentration");
    a.strip_lot_id = str(doc, "strip_lot_id");
    a.operator_id = str(doc, "operator");
    a.date = integer(doc, "date");
    a.pass = doc.value("pass", false);
    return a;
}

Document WeighTicket::to_document() const
{
    return {
        {"Invoice_Number", invoice_number},
        {"direction", direction},
        {"grain", grain},
        {"gross_kg", gross_kg.to_json()},
        {"net_kg", net_kg.to_json()},
        {"producer_id", producer_id},
        {"tare_kg", tare_kg.to_json()},
        {"timestamp", timestamp},
        {"truck_plate", truck_plate},
    };
}

WeighTicket WeighTicket::from_document(const Document& doc)
{
    WeighTicket t;
    t.invoice_number = str(doc, "Invoice_Number");
    t.producer_id = str(doc, "producer_id");
    t.truck_plate = doc.value("truck_plate", std::string());
    t.grain = doc.value("grain", std::string("soy"));
    t.gross_kg = decimal_field(doc, "gross_kg");
    t.tare_kg = decimal_field(doc, "tare_kg");
    t.net_kg = doc.contains("net_kg") ? decimal_field(doc, "net_kg") : t.gross_kg - t.tare_kg;
    t.direction = str(doc, "direction");
    if (t.direction != "incoming" && t.direction != "outgoing")
        fail(ErrorCode::InvalidArgument, "direction must be incoming or outgoing");
    t.timestamp = doc.contains("timestamp") ? integer(doc, "timestamp") : 0;
    return t;
}

Document Silo::to_document() const
{
    Document list = Document::array();
    for (const auto& c : contributions)
        list.push_back({{"Invoice_Number", c.invoice_number},
            {"net_kg_after_discounts", c.net_kg_after_discounts.to_json()}});
    return {
        {"contributions", std::move(list)},
        {"current_lot_window", current_lot_window},
        {"grain", grain},
        {"silo_id", silo_id},
    };
}

Silo Silo::from_document(const Document& doc)
{
    Silo s;
    s.silo_id = str(doc, "silo_id");
    s.grain = str(doc, "grain");
    s.current_lot_window = integer(doc, "current_lot_window");
    for (const auto& c : doc.at("contributions"))
        s.contributions.push_back(
            {str(c, "Invoice_Number"), decimal_field(c, "net_kg_after_discounts")});
    return s;
}

Document Lot::to_document() const
{
    return {
        {"base_price_per_kg", base_price_per_kg.to_json()},
        {"final_price_per_kg", final_price_per_kg.to_json()},
        {"gm_free_certified", gm_free_certified},
        {"lot_id", lot_id},
        {"lot_window", lot_window},
        {"outgoing_tickets", outgoing_tickets},
        {"silo_id", silo_id},
    };
}

Lot Lot::from_document(const Document& doc)
{
    Lot l;
    l.lot_id = str(doc, "lot_id");
    l.silo_id = str(doc, "silo_id");
    l.lot_window = integer(doc, "lot_window");
    l.outgoing_tickets = doc.at("outgoing_tickets").get<std::vector<std::string>>();
    l.gm_free_certified = doc.at("gm_free_certified").get<bool>();
    l.base_price_per_kg = decimal_field(doc, "base_price_per_kg");
    l.final_price_per_kg = decimal_field(doc, "final_price_per_kg");
    return l;
}

bool GrainConfig::known_analyte(std::string_view analyte) const
{
    return analyte == kGmo || toxin_limits.contains(std::string(analyte));
}

bool GrainConfig::passes(std::string_view analyte, const Decimal& concentration) const
{
    if (analyte == kGmo)
        return concentration < gm_free_threshold;
    auto it = toxin_limits.find(std::string(analyte));
    if (it == toxin_limits.end())
        fail(ErrorCode::UnknownAnalyte, "no limit configured for '" + std::string(analyte) + "'");
    return concentration <= it->second;
}

Document GrainConfig::to_document() const
{
    Document limits = Document::object();
    for (const auto& [analyte, limit] : toxin_limits)
        limits[analyte] = limit.to_json();
    return {
        {"discount_mode", to_string(discount_mode)},
        {"gm_free_premium", gm_free_premium.to_json()},
        {"gm_free_threshold", gm_free_threshold.to_json()},
        {"toxin_limits", std::move(limits)},
    };
}

GrainConfig GrainConfig::from_document(const Document& doc)
{
    GrainConfig c;
    c.gm_free_threshold = decimal_field(doc, "gm_free_threshold");
    c.gm_free_premium = decimal_field(doc, "gm_free_premium");
    c.discount_mode = parse_discount_mode(str(doc, "discount_mode"));
    if (!doc.contains("toxin_limits") || !doc["toxin_limits"].is_object())
        fail(ErrorCode::InvalidArgument, "toxin_limits must be an object");
    for (const auto& [analyte, limit] : doc["toxin_limits"].items())
        c.toxin_limits[analyte] = Decimal::from_json(limit);
    if (c.gm_free_threshold.is_negative() || c.gm_free_premium.is_negative())
        fail(ErrorCode::InvalidArgument, "threshold and premium must be non-negative");
    return c;
}

GrainConfig default_config()
{
    GrainConfig c;
    c.toxin_limits = {
        {"aflatoxin", Decimal(20)},
        {"fumonisin", Decimal(5000)},
        {"DON", Decimal(1000)},
    };
    return c;
}

}  // namespace grainledger::grain
