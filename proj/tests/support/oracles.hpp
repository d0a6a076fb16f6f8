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
#include "grainledger/grain/scenario.hpp"
#include "grainledger/ledger/types.hpp"

#include <map>
#include <string>
#include <vector>

namespace grainledger::test
{
/// Frozen rows of fixtures/discount_vectors.csv.
struct DiscountVector
{
    grain::ExtrinsicMeasures measures;
    Decimal corrected;
    Decimal verbatim;
};
std::vector<DiscountVector> load_discount_vectors();

/// The discount formula evaluated in integer thousandths of a percent. Exact for inputs
/// with at most two fractional digits.
std::int64_t integer_discount_thousandths(const grain::ExtrinsicMeasures& m, grain::DiscountMode mode);

struct ExpectedIntake
{
    std::string invoice;
    std::string producer;
    Decimal net_kg;
    Decimal discount;
    Decimal contribution_kg;
    std::string weigh_in_tx;
    std::string extrinsic_tx;
    std::vector<std::string> discount_txs;
    std::map<std::string, std::pair<std::string, Decimal>> intrinsic;  // analyte -> (tx_id, concentration)
    std::string silo_tx;
};

struct ExpectedLot
{
    std::string lot_id;
    std::string silo_id;
    std::vector<ExpectedIntake> intakes;  // by invoice
    bool certified = false;
    Decimal base_price;
    Decimal final_price;
};

/// Lot provenance rebuilt from the scenario input and the VALID steps of its
/// submission log, without reading the ledger. Corrected discounts, GM-free
/// threshold 0.9 %, premium 15 %.
ExpectedLot reconstruct_lot(const grain::Scenario& scenario, const grain::ScenarioReport& report,
    const std::string& lot_id);

/// Human-readable differences between the reconstruction and a provenance tree.
std::vector<std::string> provenance_differences(const ExpectedLot& expected, const ledger::Document& tree);

/// Sequential reference model of multi-version validation: versions as a plain
/// map, a tx applies only if each read equals the version it recorded.
struct MvccOracle
{
    std::map<std::string, ledger::Version> versions;

    std::vector<bool> apply(const ledger::Block& b);
};

}  // namespace grainledger::test
