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
#include "doctest.h"
#include "support/bench.hpp"
#include "support/oracles.hpp"

#include "grainledger/grain/assets.hpp"
#include "grainledger/grain/discounts.hpp"

#include <random>

using namespace grainledger;
using namespace grainledger::grain;

namespace
{
ExtrinsicMeasures measures(const char* m, const char* i, const char* b, const char* d)
{
    return {Decimal::parse(m), Decimal::parse(i), Decimal::parse(b), Decimal(0), Decimal::parse(d)};
}
}  // namespace

TEST_SUITE("grain-network")
{
TEST_CASE("worked discount examples")
{
    for (auto mode : {DiscountMode::corrected, DiscountMode::verbatim})
    {
        CHECK(compute_discount(measures("11", "2", "4", "2"), mode) == Decimal(0));
        CHECK(compute_discount(measures("14", "3", "5", "3"), mode) == Decimal(8));
    }
    CHECK(compute_discount(measures("13", "5", "8", "4"), DiscountMode::corrected) == Decimal::parse("15.5"));
    CHECK(compute_discount(measures("13", "5", "8", "4"), DiscountMode::verbatim) == Decimal(24));
}

TEST_CASE("discounts agree with both reference oracles on 1000 cases")
{
    auto vectors = test::load_discount_vectors();
    REQUIRE(vectors.size() == 1000);
    int mismatches_fixture = 0;
    int mismatches_integer = 0;
    for (const auto& v : vectors)
    {
        for (auto mode : {DiscountMode::corrected, DiscountMode::verbatim})
        {
            Decimal got = compute_discount(v.measures, mode).rounded();
            const Decimal& frozen = mode == DiscountMode::corrected ? v.corrected : v.verbatim;
            if (got != frozen)
            {
                ++mismatches_fixture;
                MESSAGE(to_string(mode) << " M=" << v.measures.moisture.to_string() << " got " << got.to_string()
                                        << " expected " << frozen.to_string());
            }
            if (got != Decimal(test::integer_discount_thousandths(v.measures, mode)).shifted_right(3))
                ++mismatches_integer;
        }
    }
    CHECK(mismatches_fixture == 0);
    CHECK(mismatches_integer == 0);
}

TEST_CASE("corrected discount is zero below every threshold and monotone in each field")
{
    std::mt19937_64 rng(44);
    auto pct = [&](int hi) { return Decimal(static_cast<std::int64_t>(rng() % (hi * 100 + 1))).shifted_right(2); };
    for (int i = 0; i < 2000; ++i)
    {
        ExtrinsicMeasures m{pct(30), pct(10), pct(15), pct(5), pct(12)};
        Decimal base = compute_discount(m, DiscountMode::corrected);
        CHECK_FALSE(base.is_negative());
        bool below = m.moisture <= Decimal(12) && m.impurity <= Decimal(3) && m.broken <= Decimal(5) &&
                     m.damaged <= Decimal(3);
        CHECK((base == Decimal(0)) == below);

        Decimal step = Decimal(static_cast<std::int64_t>(1 + rng() % 300)).shifted_right(2);
        for (Decimal ExtrinsicMeasures::*field :
            {&ExtrinsicMeasures::moisture, &ExtrinsicMeasures::impurity, &ExtrinsicMeasures::broken,
                &ExtrinsicMeasures::damaged, &ExtrinsicMeasures::greenish})
        {
            ExtrinsicMeasures up = m;
            up.*field = up.*field + step;
            Decimal after = compute_discount(up, DiscountMode::corrected);
            CHECK(after >= base);
            // Continuity: the slope of every term is at most 4 per percent point.
            CHECK(after - base <= step * Decimal(4));
        }
    }
}

TEST_CASE("verbatim discount reads Broken and Damaged only through their guards")
{
    std::mt19937_64 rng(45);
    auto pct = [&](int lo, int hi) {
        return Decimal(static_cast<std::int64_t>(lo * 100 + rng() % ((hi - lo) * 100 + 1))).shifted_right(2);
    };
    for (int i = 0; i < 1000; ++i)
    {
        ExtrinsicMeasures m{pct(0, 30), pct(0, 10), Decimal(0), pct(0, 10), Decimal(0)};
        const bool broken_high = rng() % 2;
        const bool damaged_high = rng() % 2;
        std::optional<Decimal> first;
        for (int k = 0; k < 8; ++k)
        {
            m.broken = broken_high ? Decimal(5) + pct(0, 20) + Decimal::parse("0.01") : pct(0, 5);
            m.damaged = damaged_high ? Decimal(3) + pct(0, 20) + Decimal::parse("0.01") : pct(0, 3);
            Decimal d = compute_discount(m, DiscountMode::verbatim);
            if (!first)
                first = d;
            CHECK(d == *first);
        }
    }
    // Crossing a guard does change the verbatim result (line 29 adds M - 5).
    CHECK(compute_discount(measures("13", "5", "8", "4"), DiscountMode::verbatim) !=
          compute_discount(measures("13", "5", "5", "4"), DiscountMode::verbatim));
}

TEST_CASE("greenish is recorded but never discounted")
{
    auto m = measures("13", "5", "8", "4");
    auto g = m;
    g.greenish = Decimal(40);
    for (auto mode : {DiscountMode::corrected, DiscountMode::verbatim})
        CHECK(compute_discount(m, mode) == compute_discount(g, mode));
}

TEST_CASE("the contract stores the discount in the requested mode")
{
    for (auto mode : {DiscountMode::corrected, DiscountMode::verbatim})
    {
        test::ContractBench bench;
        bench.run("p-wh-01", identity::Role::warehouse_operator, "record_weigh_in",
            {{"Invoice_Number", "INV-9"}, {"direction", "incoming"}, {"grain", "soy"}, {"gross_kg", 42000},
                {"producer_id", "p-001"}, {"tare_kg", 15000}, {"truck_plate", "T"}});
        bench.run("p-qa-01", identity::Role::qa_operator, "record_extrinsic",
            {{"Invoice_Number", "INV-9"}, {"Sample_Number", "S"}, {"Moisture_Percent", 13}, {"Impurity_Percent", 5},
                {"Broken_Percent", 8}, {"Greenish_Percent", 0}, {"Damaged_Percent", 4}});
        bench.run("p-qa-01", identity::Role::qa_operator, "DiscountsTransaction",
            {{"Invoice_Number", "INV-9"}, {"mode", std::string(to_string(mode))}});
        auto asset = bench.get(registry::kExtrinsic, "INV-9");
        REQUIRE(asset);
        CHECK(Decimal::from_json((*asset)["Total_Discounts_KG"]) ==
              (mode == DiscountMode::corrected ? Decimal::parse("15.5") : Decimal(24)));
    }
}
}
