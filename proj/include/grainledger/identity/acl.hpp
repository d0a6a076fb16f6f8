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

#include "grainledger/identity/participant.hpp"
#include "grainledger/ledger/canonical.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace grainledger::identity
{
enum class Decision
{
    allow,
    deny,
};

/// `operation_pattern` is an exact name, or a prefix followed by a single
/// trailing `*`.
struct AclRule
{
    Role role = Role::producer;
    std::string contract_id;
    std::string operation_pattern;
    Decision decision = Decision::deny;
};

struct AccessControlList
{
    std::vector<AclRule> rules;

    ledger::Document to_document() const;
    static AccessControlList from_document(const ledger::Document& doc);
};

bool operation_matches(std::string_view pattern, std::string_view operation);

/// First matching rule wins; no match denies.
Decision check_acl(const AccessControlList& acl, Role role, std::string_view contract_id,
    std::string_view operation);

/// Rules installed at network bootstrap.
AccessControlList default_acl();

}  // namespace grainledger::identity
