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

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>

namespace grainledger::ledger
{
using Document = nlohmann::json;

/// Sorted-key compact JSON over UTF-8.
///
/// Map keys are ordered by their UTF-8 bytes, no insignificant whitespace is
/// emitted, and decimals are written in shortest round-trip fixed notation
/// (no exponent, no trailing zeros). Throws Error(NonCanonicalizable) for
/// NaN/infinite numbers or binary values.
std::string canonicalize(const Document& doc);

/// Parses JSON text; throws Error(BadRecord) on malformed input.
Document parse_document(std::string_view text);

}  // namespace grainledger::ledger
