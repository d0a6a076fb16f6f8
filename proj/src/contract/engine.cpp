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
#include "grainledger/contract/engine.hpp"
#include "grainledger/common/error.hpp"

namespace grainledger::contract
{
ledger::Document ContractDefinition::manifest() const
{
    ledger::Document ops = ledger::Document::array();
    for (const auto& [name, _] : operations)
        ops.push_back(name);
    return {
        {"contract_id", contract_id},
        {"endorsement_policy_ref", endorsement_policy_ref},
        {"operations", std::move(ops)},
        {"version", version},
    };
}

ledger::Digest ContractDefinition::manifest_hash() const
{
    return ledger::hash_bytes(ledger::canonicalize(manifest()));
}

void ContractCatalog::add(ContractDefinition def)
{
    auto key = std::make_pair(def.contract_id, def.version);
    m_defs.insert_or_assign(std::move(key), std::move(def));
}

const ContractDefinition* ContractCatalog::find(std::string_view contract_id, std::uint32_t version) const
{
    auto it = m_defs.find(std::make_pair(std::string(contract_id), version));
    return it == m_defs.end() ? nullptr : &it->second;
}

ledger::Document deploy_args(const ContractDefinition& def)
{
    return {{"manifest", def.manifest()}, {"manifest_hash", def.manifest_hash().hex()}};
}

std::optional<ledger::Document> Engine::deployment(
    const ledger::StateReader& state, std::string_view contract_id)
{
    const auto* entry = state.find(std::string(kLifecycleRegistry) + "#" + std::string(contract_id));
    return entry ? std::optional<ledger::Document>(entry->value) : std::nullopt;
}

void Engine::deploy(TxContext& ctx, const ledger::Document& args) const
{
    if (ctx.invocation().role != identity::Role::admin)
        fail(ErrorCode::Unauthorized, "only admin may deploy contracts");
    const ledger::Document& manifest = args.at("manifest");
    std::string contract_id = manifest.at("contract_id").get<std::string>();
    auto version = manifest.at("version").get<std::uint32_t>();
    const ContractDefinition* def = m_catalog.find(contract_id, version);
    if (!def)
        fail(ErrorCode::UnknownContract,
            contract_id + " v" + std::to_string(version) + " is not in the catalog");
    if (ledger::canonicalize(manifest) != ledger::canonicalize(def->manifest()) ||
        args.at("manifest_hash").get<std::string>() != def->manifest_hash().hex())
        fail(ErrorCode::BadFormat, "manifest does not match catalog entry for " + contract_id);

    AssetRegistry lifecycle(ctx, std::string(kLifecycleRegistry));
    if (auto current = lifecycle.find(contract_id))
    {
        auto deployed = current->at("manifest").at("version").get<std::uint32_t>();
        if (version <= deployed)
            fail(ErrorCode::StaleVersion, contract_id + " v" + std::to_string(deployed) +
                                              " already deployed; got v" + std::to_string(version));
    }
    ctx.put_state(lifecycle.state_key(contract_id),
        {{"manifest", manifest}, {"manifest_hash", def->manifest_hash().hex()}});
}

ledger::ReadWriteSet Engine::invoke(std::string_view contract_id, std::string_view operation,
    const ledger::Document& args, const Invocation& invocation, const ledger::StateReader& state,
    const identity::AccessControlList& acl) const
{
    TxContext ctx(state, invocation);
    Procedure procedure;
    if (contract_id == kLifecycleContract)
    {
        if (operation != "deploy")
            fail(ErrorCode::UnknownOperation, std::string(contract_id) + "." + std::string(operation));
        procedure = [this](TxContext& c, const ledger::Document& a) { deploy(c, a); };
    }
    else
    {
        auto record = ctx.get_state(std::string(kLifecycleRegistry) + "#" + std::string(contract_id));
        if (!record)
            fail(ErrorCode::UnknownContract, std::string(contract_id) + " is not deployed on " +
                                                 invocation.channel_id);
        auto version = record->at("manifest").at("version").get<std::uint32_t>();
        const ContractDefinition* def = m_catalog.find(contract_id, version);
        if (!def)
            fail(ErrorCode::UnknownContract,
                std::string(contract_id) + " v" + std::to_string(version) + " is not in the catalog");
        auto op = def->operations.find(std::string(operation));
        if (op == def->operations.end())
            fail(ErrorCode::UnknownOperation, std::string(contract_id) + "." + std::string(operation));
        procedure = op->second;
    }
    if (identity::check_acl(acl, invocation.role, contract_id, operation) != identity::Decision::allow)
        fail(ErrorCode::AclDenied, std::string(identity::to_string(invocation.role)) + " may not call " +
                                       std::string(contract_id) + "." + std::string(operation));
    try
    {
        procedure(ctx, args);
    }
    catch (const Error& e)
    {
        fail(ErrorCode::ContractAbort, e.what());
    }
    catch (const nlohmann::json::exception& e)
    {
        fail(ErrorCode::ContractAbort, std::string("BadFormat: ") + e.what());
    }
    return std::move(ctx).take_rwset();
}

}  // namespace grainledger::contract
