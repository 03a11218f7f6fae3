# Copyright 2026 The LIiC Toolkit Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Converts Levy/Holt triple files to the JSONL instance format.

Each input line holds two comma-separated triples (left argument, verbal
expression, right argument) and a label, separated by tabs:

    hypothesis triple <TAB> premise triple <TAB> True|False

Use --order prem-hypo for files that list the premise first. Commas inside
arguments are not supported by the triple format; lines with more than three
fields per triple are reported and skipped.
"""

import argparse
import json
import sys


def parse_triple(text):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3 or not all(parts):
        return None
    return parts


def parse_label(text):
    value = text.strip().lower()
    if value in ("true", "1", "yes"):
        return 1
    if value in ("false", "0", "no"):
        return 0
    return None


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("input")
    parser.add_argument("output")
    parser.add_argument("--order", choices=["hypo-prem", "prem-hypo"], default="hypo-prem")
    parser.add_argument("--id-prefix", default="levyholt")
    args = parser.parse_args()

    written = skipped = reversed_args = 0
    with open(args.input, encoding="utf-8") as src, open(args.output, "w", encoding="utf-8", newline="\n") as out:
        for number, line in enumerate(src, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            cols = line.split("\t")
            if len(cols) < 3:
                print(f"line {number}: expected 3 tab-separated columns", file=sys.stderr)
                skipped += 1
                continue
            first, second = parse_triple(cols[0]), parse_triple(cols[1])
            label = parse_label(cols[2])
            if first is None or second is None or label is None:
                print(f"line {number}: malformed triple or label", file=sys.stderr)
                skipped += 1
                continue
            prem, hypo = (second, first) if args.order == "hypo-prem" else (first, second)
            if prem[1] == hypo[1]:
                print(f"line {number}: identical verbal expressions", file=sys.stderr)
                skipped += 1
                continue
            # Instances keep the premise argument order.
            if (hypo[0], hypo[2]) == (prem[2], prem[0]) and prem[0] != prem[2]:
                reversed_args += 1
            record = {
                "id": f"{args.id_prefix}-{number:06d}",
                "prem": {"tokens": prem[1].split(), "lemma": None},
                "hypo": {"tokens": hypo[1].split(), "lemma": None},
                "arg_left": prem[0],
                "arg_right": prem[2],
                "label": label,
                "source": "levyholt",
            }
            out.write(json.dumps(record, ensure_ascii=False) + "\n")
            written += 1
    print(f"wrote {written} instances, skipped {skipped}, hypothesis arguments reversed in {reversed_args}",
          file=sys.stderr)
    return 1 if skipped else 0


if __name__ == "__main__":
    sys.exit(main())
