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
#include "grainledger/grain/discounts.hpp"
#include "grainledger/common/error.hpp"

#include <string>

namespace grainledger::grain
{
std::string_view to_string(DiscountMode mode)
{
    return mode == DiscountMode::corrected ? "corrected" : "verbatim";
}

DiscountMode parse_discount_mode(std::string_view text)
{
    if (text == "corrected")
        return DiscountMode::corrected;
    if (text == "verbatim")
        return DiscountMode::verbatim;
    fail(ErrorCode::InvalidArgument, "discount mode must be corrected or verbatim, got '" +
                                         std::string(text) + "'");
}

Decimal compute_discount(const ExtrinsicMeasures& m, DiscountMode mode)
{
    static const Decimal moisture_limit = 12;
    static const Decimal impurity_limit = 3;
    static const Decimal broken_limit = 5;
    static const Decimal damaged_limit = 3;
    static const Decimal impurity_rate = Decimal::parse("2.5");
    static const Decimal damaged_rate = Decimal::parse("3.5");

    Decimal d = 0;
    if (m.moisture > moisture_limit)
        d += (m.moisture - moisture_limit) * Decimal(4);
    if (m.impurity > impurity_limit)
        d += (m.impurity - impurity_limit) * impurity_rate;
    if (m.broken > broken_limit)
        d += mode == DiscountMode::corrected ? m.broken - broken_limit : m.moisture - broken_limit;
    if (m.damaged > damaged_limit)
        d += ((mode == DiscountMode::corrected ? m.damaged : m.impurity) - damaged_limit) * damaged_rate;
    return d;
}

}  // namespace grainledger::grain
