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

#include "grainledger/contract/context.hpp"
#include "grainledger/identity/acl.hpp"
#include "grainledger/ledger/digest.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>

namespace grainledger::contract
{
/// Built-in system contract that deploys catalog contracts onto a channel.
inline constexpr std::string_view kLifecycleContract = "lifecycle";
inline constexpr std::string_view kLifecycleRegistry = "com.gebn.Lifecycle";

using Procedure = std::function<void(TxContext&, const ledger::Document& args)>;

/// A compiled-in contract. Procedures must depend only on their arguments and
/// on what they read through the context.
struct ContractDefinition
{
    std::string contract_id;
    std::uint32_t version = 1;
    std::map<std::string, Procedure> operations;
    std::string endorsement_policy_ref;

    /// {contract_id, version, operations: [names], endorsement_policy_ref}
    ledger::Document manifest() const;
    ledger::Digest manifest_hash() const;
};

/// Contracts this binary can execute, by (id, version).
class ContractCatalog
{
public:
    void add(ContractDefinition def);
    const ContractDefinition* find(std::string_view contract_id, std::uint32_t version) const;

private:
    std::map<std::pair<std::string, std::uint32_t>, ContractDefinition, std::less<>> m_defs;
};

/// Arguments of a lifecycle "deploy" transaction for `def`.
ledger::Document deploy_args(const ContractDefinition& def);

/// Stateless executor: same snapshot and arguments give the same ReadWriteSet.
class Engine
{
public:
    explicit Engine(const ContractCatalog& catalog) : m_catalog(catalog) {}

    /// Throws UnknownContract, UnknownOperation, AclDenied, or ContractAbort
    /// (message = the contract's error, e.g. "AssetNotFound: asset not found: ...").
    ledger::ReadWriteSet invoke(std::string_view contract_id, std::string_view operation,
        const ledger::Document& args, const Invocation& invocation, const ledger::StateReader& state,
        const identity::AccessControlList& acl) const;

    /// Deployment record currently visible in `state`, if any.
    static std::optional<ledger::Document> deployment(
        const ledger::StateReader& state, std::string_view contract_id);

private:
    void deploy(TxContext& ctx, const ledger::Document& args) const;

    const ContractCatalog& m_catalog;
};

}  // namespace grainledger::contract
