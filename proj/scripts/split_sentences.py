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
"""Splits raw text documents into the one-sentence-per-line corpus format.

Input is plain text with documents separated by blank lines (or one file per
document). Output lines are `doc_id<TAB>sent_index<TAB>sentence`.
"""

import argparse
import pathlib
import re
import sys

# Sentence end: terminal punctuation, optional closing quote or bracket, space,
# then an uppercase letter, digit or opening quote.
BOUNDARY = re.compile(r"(?<=[.!?])[\"')\]]?\s+(?=[\"'(\[]?[A-Z0-9])")


def sentences(text):
    text = " ".join(text.split())
    return [s.strip() for s in BOUNDARY.split(text) if s.strip()]


def documents(paths):
    for path in paths:
        text = pathlib.Path(path).read_text(encoding="utf-8")
        blocks = [b for b in re.split(r"\n\s*\n", text) if b.strip()]
        stem = pathlib.Path(path).stem
        for i, block in enumerate(blocks):
            yield (stem if len(blocks) == 1 else f"{stem}-{i}"), block


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("inputs", nargs="+")
    parser.add_argument("--out", required=True)
    parser.add_argument("--max-tokens", type=int, default=64)
    args = parser.parse_args()
    kept = dropped = 0
    with open(args.out, "w", encoding="utf-8", newline="\n") as out:
        for doc_id, text in documents(args.inputs):
            for index, sentence in enumerate(sentences(text)):
                if "\t" in sentence or len(sentence.split()) > args.max_tokens:
                    dropped += 1
                    continue
                out.write(f"{doc_id}\t{index}\t{sentence}\n")
                kept += 1
    print(f"wrote {kept} sentences, dropped {dropped}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
