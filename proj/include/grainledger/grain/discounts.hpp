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

#include <string_view>

namespace grainledger::grain
{
/// How the DiscountsTransaction formula is read.
///
/// `verbatim` keeps the original contract text, whose Broken and Damaged
/// branches add (Moisture - 5) and (Impurity - 3) * 3.5. `corrected` uses the
/// field each branch tests.
enum class DiscountMode
{
    corrected,
    verbatim,
};

std::string_view to_string(DiscountMode mode);
DiscountMode parse_discount_mode(std::string_view text);

struct ExtrinsicMeasures
{
    Decimal moisture;
    Decimal impurity;
    Decimal broken;
    Decimal greenish;  // recorded, never discounted
    Decimal damaged;
};

/// Weighted discount in percent of net weight, exact (not yet rounded).
///
/// corrected: max(0,M-12)*4 + max(0,I-3)*2.5 + max(0,B-5)*1 + max(0,D-3)*3.5
/// verbatim:  same guards, but the B term adds (M-5)*1 and the D term (I-3)*3.5;
///            it can go negative when M < 5.
Decimal compute_discount(const ExtrinsicMeasures& m, DiscountMode mode);

}  // namespace grainledger::grain
