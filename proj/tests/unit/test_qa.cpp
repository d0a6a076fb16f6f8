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

#include "grainledger/common/error.hpp"
#include "grainledger/qa/devices.hpp"
#include "grainledger/qa/strip.hpp"

#include <cmath>
#include <random>

using namespace grainledger;
using namespace grainledger::qa;

namespace
{
nlohmann::json qa_vectors()
{
    return nlohmann::json::parse(test::read_text(test::fixture("qa_vectors.json")));
}

LogisticCurve curve_of(const nlohmann::json& v)
{
    return {v["a"].get<double>(), v["d"].get<double>(), v["c0"].get<double>(), v["b"].get<double>()};
}

ErrorCode code_of(const std::function<void()>& fn)
{
    try
    {
        fn();
    }
    catch (const Error& e)
    {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::Io;
}

SamplePrep good_prep()
{
    return {0.65, {2, 10}, 12, 300};
}
}  // namespace

TEST_SUITE("qa-devices")
{
TEST_CASE("the four-parameter curve matches the reference values")
{
    auto v = qa_vectors();
    auto example = curve_of(v["example_curve"]);
    CHECK(curve_response(example, 0) == doctest::Approx(v["example_curve"]["y_at_0"].get<double>()).epsilon(1e-12));
    CHECK(curve_response(example, 1) == doctest::Approx(v["example_curve"]["y_at_1"].get<double>()).epsilon(1e-12));

    REQUIRE(v["curves"].size() == 20);
    for (const auto& c : v["curves"])
    {
        auto curve = curve_of(c);
        for (const auto& p : c["points"])
        {
            double y = curve_response(curve, p["c"].get<double>());
            CHECK(y == doctest::Approx(p["y"].get<double>()).epsilon(1e-12));
            auto q = quantify(curve, p["y"].get<double>(), 0, 1e9);
            if (q.flag != QuantFlag::in_range)
                continue;  // response rounded onto an asymptote
            CHECK(q.concentration == doctest::Approx(p["inverse"].get<double>()).epsilon(1e-9));
        }
    }
}

TEST_CASE("quantification inverts the curve across its range")
{
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0;
    int checked = 0;
    for (int i = 0; i < 100; ++i)
    {
        LogisticCurve curve{0.05 + 2 * unit(rng), 0.05 + 2 * unit(rng), 0.2 + 10 * unit(rng), 0.5 + 3 * unit(rng)};
        if (std::abs(curve.blank - curve.saturation) < 0.2)
            curve.saturation = curve.blank + 0.5;
        for (int k = 0; k < 1000; ++k)
        {
            // Concentrations within a decade of the inflection point either side.
            double c = curve.inflection * std::pow(10.0, 2 * unit(rng) - 1);
            double y = curve_response(curve, c);
            auto q = quantify(curve, y, 0, 1e6);
            REQUIRE(q.flag == QuantFlag::in_range);
            worst = std::max(worst, std::abs(q.concentration - c) / c);
            ++checked;
        }
    }
    MESSAGE("worst relative error " << worst << " over " << checked);
    CHECK(worst < 1e-9);
}

TEST_CASE("quantification flags responses outside the curve and the valid range")
{
    LogisticCurve rising{0.1, 2.0, 1.0, 1.0};
    CHECK(quantify(rising, 0.05, 0, 10).flag == QuantFlag::below_range);
    CHECK(quantify(rising, 2.5, 0, 10).flag == QuantFlag::above_range);
    auto low = quantify(rising, curve_response(rising, 0.01), 0.1, 10);
    CHECK(low.flag == QuantFlag::below_valid_range);
    CHECK(low.concentration == 0.1);
    auto high = quantify(rising, curve_response(rising, 50), 0.1, 10);
    CHECK(high.flag == QuantFlag::above_valid_range);
    CHECK(high.concentration == 10);

    LogisticCurve falling{2.0, 0.1, 1.0, 1.5};
    auto mid = quantify(falling, curve_response(falling, 3), 0, 10);
    CHECK(mid.flag == QuantFlag::in_range);
    CHECK(mid.concentration == doctest::Approx(3).epsilon(1e-12));
    CHECK(code_of([] { quantify(LogisticCurve{1, 1, 1, 1}, 0.5, 0, 1); }) == ErrorCode::DegenerateCurve);
}

TEST_CASE("curve barcodes round-trip and carry a checksum")
{
    auto v = qa_vectors();
    for (const auto& row : v["crc16"])
    {
        char hex[8];
        std::snprintf(hex, sizeof(hex), "%04X", crc16_ccitt_false(row["text"].get<std::string>()));
        CHECK(std::string(hex) == row["crc"].get<std::string>());
    }

    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const char* analytes[] = {"GMO", "aflatoxin", "deoxynivalenol", "fumonisin"};
    int mutations_caught = 0;
    for (int i = 0; i < 1000; ++i)
    {
        StripLot lot;
        lot.strip_lot_id = "L-" + std::to_string(rng() % 100000);
        lot.analyte = analytes[rng() % 4];
        lot.curve = {unit(rng), 1 + unit(rng), 0.1 + 5 * unit(rng), 0.3 + 3 * unit(rng)};
        lot.c_min = unit(rng);
        lot.c_max = lot.c_min + 1 + 100 * unit(rng);
        auto code = encode_curve_barcode(lot);
        CHECK(decode_curve_barcode(code) == lot);

        // Change one payload character to another printable one.
        std::string bad = code;
        auto pos = rng() % (bad.size() - 5);
        char replacement = bad[pos] == '7' ? '8' : '7';
        bad[pos] = replacement;
        auto err = code_of([&] { decode_curve_barcode(bad); });
        mutations_caught += err == ErrorCode::BadChecksum ? 1 : 0;
    }
    CHECK(mutations_caught == 1000);

    StripLot flat{"L-1", "GMO", {1, 1, 1, 1}, 0, 5};
    CHECK(code_of([&] { encode_curve_barcode(flat); }) == ErrorCode::BadCurve);
    std::string payload = "GQ1|L-1|GMO|1|1|1|1|0|5";
    char crc[8];
    std::snprintf(crc, sizeof(crc), "%04X", crc16_ccitt_false(payload));
    CHECK(code_of([&] { decode_curve_barcode(payload + "|" + crc); }) == ErrorCode::BadCurve);
    CHECK(code_of([] { decode_curve_barcode("GQ1|L-1|GMO"); }) == ErrorCode::BadFormat);
}

TEST_CASE("simulated strip readings stay on the curve")
{
    StripLot lot{"L-9", "aflatoxin", {0.2, 1.8, 10, 1.2}, 1, 100};
    StripReaderSimulator exact("reader-1", 0, 1);
    auto r = exact.read(lot, 15, 42);
    CHECK_FALSE(r.clamped);
    CHECK(quantify(lot, r).concentration == doctest::Approx(15).epsilon(1e-9));

    StripReaderSimulator a("reader-1", 0.05, 5);
    StripReaderSimulator b("reader-1", 0.05, 5);
    for (int i = 0; i < 50; ++i)
    {
        auto ra = a.read(lot, 1e6, i);
        CHECK(ra.raw_response == b.read(lot, 1e6, i).raw_response);
        CHECK(ra.raw_response <= 1.8);
    }
    StripReading foreign{"L-0", 1, 0, false};
    CHECK(code_of([&] { quantify(lot, foreign); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("sample preparation boundaries")
{
    CHECK(validate_prep(good_prep()).empty());
    for (double fraction : {0.60, 0.70})
    {
        auto p = good_prep();
        p.sieve_pass_fraction = fraction;
        CHECK(validate_prep(p).empty());
    }
    for (double fraction : {0.5999, 0.7001})
    {
        auto p = good_prep();
        p.sieve_pass_fraction = fraction;
        CHECK(validate_prep(p) == std::vector{PrepViolation::sieve_fraction});
    }
    auto ratio = good_prep();
    ratio.dilution = {1, 4};
    CHECK(validate_prep(ratio) == std::vector{PrepViolation::dilution_ratio});
    auto volume = good_prep();
    volume.extract_volume_ml = 11.9;
    CHECK(validate_prep(volume) == std::vector{PrepViolation::extract_volume});
    auto time = good_prep();
    time.incubation_s = 299;
    CHECK(validate_prep(time) == std::vector{PrepViolation::incubation_time});
    time.incubation_s = 3600;
    CHECK(validate_prep(time).empty());
    auto zero = good_prep();
    zero.extract_volume_ml = 0;
    auto v = validate_prep(zero);
    CHECK(std::find(v.begin(), v.end(), PrepViolation::non_positive) != v.end());
}

TEST_CASE("moisture analyzers apply bias and seeded noise")
{
    MoistureAnalyzer biased({"m-1", 0.1, 0, 1});
    auto r = biased.read(13.2);
    CHECK(r.moisture_percent == doctest::Approx(13.3).epsilon(1e-12));
    CHECK(r.sequence == 0);
    CHECK(biased.read(13.2).sequence == 1);
    CHECK(code_of([&] { biased.read(40.5); }) == ErrorCode::OutOfRange);
    CHECK(code_of([&] { biased.read(-1); }) == ErrorCode::OutOfRange);

    MoistureAnalyzer a({"m-2", 0, 0.2, 99});
    MoistureAnalyzer b({"m-2", 0, 0.2, 99});
    MoistureAnalyzer c({"m-2", 0, 0.2, 100});
    bool differs = false;
    for (int i = 0; i < 100; ++i)
    {
        double va = a.read(14).moisture_percent;
        CHECK(va == b.read(14).moisture_percent);
        differs = differs || va != c.read(14).moisture_percent;
    }
    CHECK(differs);

    auto doc = DeviceProfile{"m-3", -0.2, 0.05, 4}.to_document();
    auto back = DeviceProfile::from_document(doc);
    CHECK(back.device_id == "m-3");
    CHECK(back.bias == -0.2);
    doc["noise_sd"] = -1;
    CHECK(code_of([&] { DeviceProfile::from_document(doc); }) == ErrorCode::BadConfig);
}
}
