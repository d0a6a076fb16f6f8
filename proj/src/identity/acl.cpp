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
#include "grainledger/identity/acl.hpp"
#include "grainledger/common/error.hpp"

namespace grainledger::identity
{
ledger::Document AccessControlList::to_document() const
{
    ledger::Document out = ledger::Document::array();
    for (const auto& r : rules)
        out.push_back({
            {"contract_id", r.contract_id},
            {"decision", r.decision == Decision::allow ? "allow" : "deny"},
            {"operation", r.operation_pattern},
            {"role", to_string(r.role)},
        });
    return {{"rules", std::move(out)}};
}

AccessControlList AccessControlList::from_document(const ledger::Document& doc)
{
    if (!doc.is_object() || !doc.contains("rules") || !doc["rules"].is_array())
        fail(ErrorCode::InvalidArgument, "ACL document needs a 'rules' array");
    AccessControlList acl;
    for (const auto& r : doc["rules"])
    {
        AclRule rule;
        rule.role = parse_role(r.at("role").get<std::string>());
        rule.contract_id = r.at("contract_id").get<std::string>();
        rule.operation_pattern = r.at("operation").get<std::string>();
        auto star = rule.operation_pattern.find('*');
        if (star != std::string::npos && star + 1 != rule.operation_pattern.size())
            fail(ErrorCode::InvalidArgument,
                "only a trailing '*' is supported in '" + rule.operation_pattern + "'");
        std::string decision = r.at("decision").get<std::string>();
        if (decision != "allow" && decision != "deny")
            fail(ErrorCode::InvalidArgument, "decision must be allow or deny");
        rule.decision = decision == "allow" ? Decision::allow : Decision::deny;
        acl.rules.push_back(std::move(rule));
    }
    return acl;
}

bool operation_matches(std::string_view pattern, std::string_view operation)
{
    if (!pattern.empty() && pattern.back() == '*')
        return operation.starts_with(pattern.substr(0, pattern.size() - 1));
    return pattern == operation;
}

Decision check_acl(const AccessControlList& acl, Role role, std::string_view contract_id,
    std::string_view operation)
{
    for (const auto& rule : acl.rules)
        if (rule.role == role && rule.contract_id == contract_id &&
            operation_matches(rule.operation_pattern, operation))
            return rule.decision;
    return Decision::deny;
}

AccessControlList default_acl()
{
    auto allow = [](Role role, const char* contract, const char* op) {
        return AclRule{role, contract, op, Decision::allow};
    };
    return {{
        allow(Role::admin, "lifecycle", "*"),
        allow(Role::admin, "governance", "*"),
        allow(Role::admin, "grain", "*"),
        allow(Role::qa_operator, "grain", "record_*"),
        allow(Role::qa_operator, "grain", "DiscountsTransaction"),
        allow(Role::qa_operator, "grain", "compute_discounts"),
        allow(Role::qa_operator, "grain", "assign_silo"),
        allow(Role::warehouse_operator, "grain", "record_weigh_in"),
        allow(Role::warehouse_operator, "grain", "register_silo"),
        allow(Role::warehouse_operator, "grain", "assign_silo"),
        allow(Role::warehouse_operator, "grain", "create_outgoing_lot"),
        allow(Role::trader, "grain", "create_outgoing_lot"),
    }};
}

}  // namespace grainledger::identity
