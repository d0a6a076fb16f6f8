#!/usr/bin/env python3
"""Prepend the Apache-2.0 header to project sources that lack it."""
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
DIRS = ["include", "src", "tools", "tests"]
MARK = "SPDX-License-Identifier: Apache-2.0"

TEXT = [
    "Copyright (C) 2026 GrainLedger contributors.",
    MARK,
    'Licensed under the Apache License, Version 2.0 (the "License");',
    "you may not use this file except in compliance with the License.",
    "You may obtain a copy of the License at",
    "",
    "  http://www.apache.org/licenses/LICENSE-2.0",
    "",
    "Unless required by applicable law or agreed to in writing, software",
    'distributed under the License is distributed on an "AS IS" BASIS,',
    "WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.",
    "See the License for the specific language governing permissions and",
    "limitations under the License.",
]


def c_header():
    return "/**\n" + "".join((" *  " + l).rstrip() + "\n" for l in TEXT) + " */\n"


def hash_header():
    return "".join(("# " + l).rstrip() + "\n" for l in TEXT)


def apply(path):
    text = path.read_text()
    if MARK in text[:1024]:
        return False
    if path.suffix in (".cpp", ".hpp"):
        text = c_header() + text
    else:
        shebang = ""
        if text.startswith("#!"):
            shebang, _, text = text.partition("\n")
            shebang += "\n"
        text = shebang + hash_header() + text
    path.write_text(text)
    return True


def main():
    changed = 0
    for d in DIRS:
        for path in sorted((ROOT / d).rglob("*")):
            if path.suffix in (".cpp", ".hpp", ".py") and "fixtures" not in path.parts:
                changed += apply(path)
    print(f"{changed} files updated")
    return 0


if __name__ == "__main__":
    sys.exit(main())
