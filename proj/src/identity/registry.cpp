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
#include "grainledger/identity/registry.hpp"

namespace grainledger::identity
{
namespace keys
{
namespace
{
std::string join(std::string_view registry, std::string_view id)
{
    std::string out(registry);
    out.push_back('#');
    out.append(id);
    return out;
}
}  // namespace

std::string participant(std::string_view id) { return join(kParticipantRegistry, id); }
std::string identity(std::string_view id) { return join(kIdentityRegistry, id); }
std::string node(std::string_view id) { return join(kNodeRegistry, id); }
std::string channel(std::string_view id) { return join(kChannelRegistry, id); }
std::string policy(std::string_view id) { return join(kPolicyRegistry, id); }
}  // namespace keys

GovernanceView GovernanceView::at(const ledger::StateHistory& history, std::uint64_t height)
{
    return GovernanceView([&history, height](const std::string& key) { return history.get(key, height); });
}

GovernanceView GovernanceView::current(const ledger::StateReader& state)
{
    return GovernanceView([&state](const std::string& key) -> std::optional<ledger::Document> {
        const auto* entry = state.find(key);
        return entry ? std::optional<ledger::Document>(entry->value) : std::nullopt;
    });
}

std::optional<Participant> GovernanceView::participant(std::string_view id) const
{
    auto doc = get(keys::participant(id));
    return doc ? std::optional<Participant>(Participant::from_document(*doc)) : std::nullopt;
}

std::optional<Identity> GovernanceView::identity(std::string_view id) const
{
    auto doc = get(keys::identity(id));
    return doc ? std::optional<Identity>(Identity::from_document(*doc)) : std::nullopt;
}

std::optional<Identity> GovernanceView::active_identity(std::string_view id) const
{
    auto ident = identity(id);
    if (!ident || ident->revoked)
        return std::nullopt;
    return ident;
}

AccessControlList GovernanceView::acl() const
{
    auto doc = get(std::string(keys::kAcl));
    return doc ? AccessControlList::from_document(*doc) : AccessControlList{};
}

}  // namespace grainledger::identity
