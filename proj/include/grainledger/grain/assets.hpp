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

#include "grainledger/common/decimal.hpp"
#include "grainledger/grain/discounts.hpp"
#include "grainledger/ledger/canonical.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace grainledger::grain
{
using ledger::Document;

namespace registry
{
inline constexpr std::string_view kExtrinsic = "com.agritech.Extrinsic_Analysis";
inline constexpr std::string_view kIntrinsic = "com.agritech.Intrinsic_Analysis";
inline constexpr std::string_view kWeighTicket = "com.agritech.WeighTicket";
inline constexpr std::string_view kIntake = "com.agritech.IntakeCase";
inline constexpr std::string_view kSilo = "com.agritech.Silo";
inline constexpr std::string_view kSiloWindow = "com.agritech.SiloWindow";
inline constexpr std::string_view kLot = "com.agritech.Lot";
inline constexpr std::string_view kConfig = "com.agritech.Config";
}  // namespace registry

std::string state_key(std::string_view registry_id, std::string_view id);
std::string ticket_id(std::string_view direction, std::string_view invoice);
std::string intrinsic_id(std::string_view invoice, std::string_view analyte);
std::string window_id(std::string_view silo_id, std::int64_t window);

inline constexpr std::string_view kGmo = "GMO";

/// Extrinsic grading record; field names follow the Extrinsic_Analysis asset.
struct ExtrinsicAnalysis
{
    std::string invoice_number;
    std::string operator_id;
    std::int64_t date = 0;
    std::string sample_number;
    ExtrinsicMeasures measures;
    Decimal total_discounts = 0;

    Document to_document() const;
    static ExtrinsicAnalysis from_document(const Document& doc);
};

struct IntrinsicAnalysis
{
    std::string invoice_number;
    std::string sample_number;
    std::string analyte;
    Decimal concentration = 0;  // GMO in %, toxins in ppb
    std::string strip_lot_id;
    std::string operator_id;
    std::int64_t date = 0;
    bool pass = false;

    Document to_document() const;
    static IntrinsicAnalysis from_document(const Document& doc);
};

struct WeighTicket
{
    std::string invoice_number;
    std::string producer_id;
    std::string truck_plate;
    std::string grain = "soy";
    Decimal gross_kg = 0;
    Decimal tare_kg = 0;
    Decimal net_kg = 0;
    std::string direction = "incoming";
    std::int64_t timestamp = 0;

    Document to_document() const;
    static WeighTicket from_document(const Document& doc);
};

struct Contribution
{
    std::string invoice_number;
    Decimal net_kg_after_discounts = 0;
};

struct Silo
{
    std::string silo_id;
    std::string grain = "soy";
    std::int64_t current_lot_window = 0;
    std::vector<Contribution> contributions;

    Document to_document() const;
    static Silo from_document(const Document& doc);
};

struct Lot
{
    std::string lot_id;
    std::string silo_id;
    std::int64_t lot_window = 0;
    std::vector<std::string> outgoing_tickets;
    bool gm_free_certified = false;
    Decimal base_price_per_kg = 0;
    Decimal final_price_per_kg = 0;

    Document to_document() const;
    static Lot from_document(const Document& doc);
};

/// Channel-level grading parameters, stored under com.agritech.Config#grain.
struct GrainConfig
{
    Decimal gm_free_threshold = Decimal::parse("0.9");  // GMO %, certified when below
    Decimal gm_free_premium = Decimal::parse("0.15");
    std::map<std::string, Decimal> toxin_limits;         // ppb, pass when at or below
    DiscountMode discount_mode = DiscountMode::corrected;

    bool known_analyte(std::string_view analyte) const;
    /// Throws Error(UnknownAnalyte).
    bool passes(std::string_view analyte, const Decimal& concentration) const;

    Document to_document() const;
    static GrainConfig from_document(const Document& doc);
};

GrainConfig default_config();

/// Decimal field of a document; throws Error(InvalidArgument) when missing.
Decimal decimal_field(const Document& doc, const char* name);

}  // namespace grainledger::grain
