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
"""Converts a SherLIiC CSV file to the JSONL instance format.

The CSV must have a header row. Column names default to the ones below and
can be overridden with --col-NAME=HEADER. Argument candidate columns hold the
instantiations of one side separated by --candidate-sep; the first one is used
to build sentences.
"""

import argparse
import csv
import json
import sys

COLUMNS = {
    "id": "id",
    "prem": "premise_relation",
    "hypo": "hypothesis_relation",
    "prem_lemma": "premise_lemma",
    "hypo_lemma": "hypothesis_lemma",
    "args_left": "arg1_instantiations",
    "args_right": "arg2_instantiations",
    "label": "is_entailment",
}


def candidates(text, sep):
    return [c.strip() for c in text.split(sep) if c.strip()]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("input")
    parser.add_argument("output")
    parser.add_argument("--candidate-sep", default="|")
    for key, default in COLUMNS.items():
        parser.add_argument(f"--col-{key.replace('_', '-')}", dest=key, default=default)
    args = parser.parse_args()

    written = skipped = 0
    with open(args.input, encoding="utf-8", newline="") as src, \
            open(args.output, "w", encoding="utf-8", newline="\n") as out:
        reader = csv.DictReader(src)
        missing = [getattr(args, k) for k in ("id", "prem", "hypo", "args_left", "args_right", "label")
                   if getattr(args, k) not in (reader.fieldnames or [])]
        if missing:
            print(f"missing columns: {', '.join(missing)}", file=sys.stderr)
            return 2
        for number, row in enumerate(reader, start=2):
            left = candidates(row[args.args_left], args.candidate_sep)
            right = candidates(row[args.args_right], args.candidate_sep)
            label = row[args.label].strip().lower()
            if not left or not right or label not in ("true", "false", "1", "0", "yes", "no"):
                print(f"line {number}: missing arguments or bad label", file=sys.stderr)
                skipped += 1
                continue

            def expr(col, lemma_col):
                lemma = row.get(lemma_col, "").strip().lower() or None
                return {"tokens": row[col].split(), "lemma": lemma}

            record = {
                "id": row[args.id].strip(),
                "prem": expr(args.prem, args.prem_lemma),
                "hypo": expr(args.hypo, args.hypo_lemma),
                "arg_left": left[0],
                "arg_right": right[0],
                "label": 1 if label in ("true", "1", "yes") else 0,
                "source": "sherliic",
                "arg_candidates_left": left,
                "arg_candidates_right": right,
            }
            out.write(json.dumps(record, ensure_ascii=False) + "\n")
            written += 1
    print(f"wrote {written} instances, skipped {skipped}", file=sys.stderr)
    return 1 if skipped else 0


if __name__ == "__main__":
    sys.exit(main())
