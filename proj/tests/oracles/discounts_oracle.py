#!/usr/bin/env python3
# Copyright (C) 2026 GrainLedger contributors.
# SPDX-License-Identifier: Apache-2.0
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#   http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Reference evaluation of the DiscountsTransaction formula.

Writes fixtures/discount_vectors.csv: M,I,B,G,D,corrected,verbatim.
Inputs are random two-decimal percentages; outputs are exact decimals
rounded half-even to four fractional digits.
"""
import csv
import random
import sys
from decimal import Decimal, ROUND_HALF_EVEN
from pathlib import Path

FOUR = Decimal("0.0001")


def discount_verbatim(m, i, b, d):
    # Line-by-line transcription of the contract body.
    total = Decimal(0)
    if m > 12:
        total += (m - 12) * 4
    if i > 3:
        total += (i - 3) * Decimal("2.5")
    if b > 5:
        total += (m - 5) * 1
    if d > 3:
        total += (i - 3) * Decimal("3.5")
    return total


def discount_corrected(m, i, b, d):
    total = Decimal(0)
    if m > 12:
        total += (m - 12) * 4
    if i > 3:
        total += (i - 3) * Decimal("2.5")
    if b > 5:
        total += (b - 5) * 1
    if d > 3:
        total += (d - 3) * Decimal("3.5")
    return total


def fmt(x):
    x = x.quantize(FOUR, rounding=ROUND_HALF_EVEN).normalize()
    s = format(x, "f")
    return "0" if s in ("-0", "0E-4") else s


def pct(rng, hi):
    return Decimal(rng.randrange(0, hi * 100 + 1)) / 100


def main(out):
    rng = random.Random(20240117)
    rows = []
    fixed = [("11", "2", "4", "0", "2"), ("14", "3", "5", "0", "3"), ("13", "5", "8", "0", "4")]
    for f in fixed:
        rows.append(tuple(Decimal(v) for v in f))
    while len(rows) < 1000:
        # Bias towards the thresholds so every branch is exercised.
        m = pct(rng, 30) if rng.random() < 0.5 else Decimal(12) + Decimal(rng.randrange(-200, 201)) / 100
        i = pct(rng, 10) if rng.random() < 0.5 else Decimal(3) + Decimal(rng.randrange(-100, 101)) / 100
        b = pct(rng, 15) if rng.random() < 0.5 else Decimal(5) + Decimal(rng.randrange(-100, 101)) / 100
        g = pct(rng, 10)
        d = pct(rng, 12) if rng.random() < 0.5 else Decimal(3) + Decimal(rng.randrange(-100, 101)) / 100
        rows.append((m, i, b, g, d))
    with open(out, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["M", "I", "B", "G", "D", "corrected", "verbatim"])
        for m, i, b, g, d in rows:
            w.writerow([fmt(m), fmt(i), fmt(b), fmt(g), fmt(d),
                        fmt(discount_corrected(m, i, b, d)), fmt(discount_verbatim(m, i, b, d))])


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "fixtures" / "discount_vectors.csv")
