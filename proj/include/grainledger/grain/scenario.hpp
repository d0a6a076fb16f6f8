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
#include "grainledger/ledger/canonical.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace grainledger::grain
{
/// One incoming cargo. CSV columns:
///   invoice,producer,gross_kg,tare_kg,M,I,B,G,D,analyte,concentration,silo
struct IntakeRow
{
    std::string invoice;
    std::string producer;
    Decimal gross_kg;
    Decimal tare_kg;
    Decimal moisture;
    Decimal impurity;
    Decimal broken;
    Decimal greenish;
    Decimal damaged;
    std::string analyte;
    Decimal concentration;
    std::string silo;
};

struct LotDirective
{
    std::string lot_id;
    std::string silo_id;
    Decimal base_price_per_kg;
    std::string outgoing_invoice;
    Decimal gross_kg;
    Decimal tare_kg;
};

struct Scenario
{
    std::uint64_t seed = 0;
    std::vector<IntakeRow> intakes;
    std::vector<LotDirective> lots;
};

inline constexpr const char* kScenarioHeader =
    "invoice,producer,gross_kg,tare_kg,M,I,B,G,D,analyte,concentration,silo";

/// Throws Error(BadFormat) naming the offending line.
std::vector<IntakeRow> parse_scenario_csv(std::string_view text);
std::string write_scenario_csv(const std::vector<IntakeRow>& rows);

/// One lot per silo, in order of first appearance: LOT-<silo>-1 with an
/// outgoing ticket OUT-<silo>-1, base price 1.00.
std::vector<LotDirective> default_lots(const std::vector<IntakeRow>& rows);

/// Deterministic demo data: same (seed, rows, silos) gives the same scenario.
Scenario generate_scenario(std::uint64_t seed, std::size_t rows, std::size_t silos = 2);

/// A submission made on behalf of a participant.
struct Submission
{
    std::string participant;
    std::string channel;
    std::string contract_id;
    std::string operation;
    ledger::Document args;
};

enum class TxStatus
{
    valid,
    invalid,   // ordered, rejected at commit
    rejected,  // refused before ordering
};

std::string_view to_string(TxStatus status);

struct SubmitResult
{
    std::string tx_id;  // empty when rejected before a tx existed
    TxStatus status = TxStatus::rejected;
    std::string error;
};

/// Transport used by the runner: submits a batch and returns once every
/// submission has a terminal status.
class ScenarioClient
{
public:
    virtual ~ScenarioClient() = default;
    virtual std::vector<SubmitResult> submit_batch(const std::vector<Submission>& batch) = 0;
};

struct ScenarioStep
{
    std::string step;     // register_silo, weigh_in, extrinsic, discounts, intrinsic, assign, outgoing, lot
    std::string subject;  // invoice, silo or lot id
    Submission submission;
    SubmitResult result;

    ledger::Document to_document() const;
};

struct ScenarioParticipants
{
    std::string warehouse = "p-wh-01";
    std::string qa = "p-qa-01";
    std::string channel = "gebn-main";
};

struct ScenarioReport
{
    std::vector<ScenarioStep> log;

    /// Steps that did not commit VALID; a silo that already exists is not a failure.
    std::vector<const ScenarioStep*> failures() const;
    bool all_valid() const { return failures().empty(); }
    ledger::Document to_document() const;
};

/// Drives the intake and lot workflow phase by phase. Rows whose earlier step
/// failed are skipped; silo assignments are issued one per silo per batch.
ScenarioReport run_scenario(
    const Scenario& scenario, ScenarioClient& client, const ScenarioParticipants& who = {});

}  // namespace grainledger::grain
