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
"""Writes the bundled toy data under data/toy/.

The output is fully determined by SEED; rerunning reproduces the files
byte for byte.
"""

import argparse
import json
import pathlib
import random

SEED = 20240611

# (premise tokens, premise lemma, hypothesis tokens, hypothesis lemma, label)
RELATIONS = [
    (["bought"], "buy", ["owns"], "own", 1),
    (["purchased"], "purchase", ["owns"], "own", 1),
    (["won"], "win", ["competed", "in"], "compete in", 1),
    (["married"], "marry", ["knows"], "know", 1),
    (["rule"], "rule", ["control"], "control", 1),
    (["founded"], "found", ["leads"], "lead", 1),
    (["visited"], "visit", ["traveled", "to"], "travel to", 1),
    (["defeated"], "defeat", ["played", "against"], "play against", 1),
    (["sold"], "sell", ["acquired"], "acquire", 0),
    (["criticized"], "criticize", ["praised"], "praise", 0),
    (["left"], "leave", ["joined"], "join", 0),
    (["ignored"], "ignore", ["thanked"], "thank", 0),
    (["denied"], "deny", ["confirmed"], "confirm", 0),
    (["avoided"], "avoid", ["attended"], "attend", 0),
    (["feared"], "fear", ["trusted"], "trust", 0),
    (["doubted"], "doubt", ["believed"], "believe", 0),
]

LEFT_ARGS = ["Alice", "Bob", "the company", "the club", "Carol", "the team", "Dave", "the city",
             "Erin", "the board", "Frank", "the union"]
RIGHT_ARGS = ["the house", "the league", "the market", "the field", "the museum", "the rival",
              "the contract", "the report", "the island", "the plan", "the station", "the award"]

# Relations used for the labeled instances: four entailing, four not.
DATA_RELATIONS = [0, 1, 2, 3, 8, 9, 10, 11]
DATA_LEFT = ["Alice", "Bob", "Carol", "Dave", "Erin", "Frank", "Grace", "Heidi"]
DATA_RIGHT = ["Paris", "Oslo", "Lima", "Cairo", "Delhi", "Quito", "Rome", "Seoul"]

# Ten mining pairs: five entailing, five not.
MINING_PAIRS = [0, 1, 4, 5, 6, 8, 9, 10, 12, 15]

FRAMES = [
    "{L} {P} {R}, which means that {L} {H} {R}.",
    "{L} {P} {R} last year; today {L} {H} {R}.",
    "Because {L} {P} {R}, {L} {H} {R} as well.",
    "{L} {H} {R} only after {L} {P} {R}.",
    "Reports say {L} {P} {R} and that {L} {H} {R}.",
    "It is odd that {L} {P} {R} while {L} {H} {R}.",
    "{L} {P} {R}, although {L} {H} {R} too.",
    "When {L} {P} {R}, {L} also {H} {R}.",
]

FILLER = [
    "The weather was mild for most of the week.",
    "Several volunteers arrived early to set up the tables.",
    "The committee published its annual summary in March.",
    "Traffic on the northern bridge was slow again.",
    "A new bakery opened near the old railway station.",
    "Most of the guests stayed until the music ended.",
    "The library extended its opening hours in winter.",
    "Local farmers expect a good harvest this season.",
    "The museum added a wing for modern sculpture.",
    "Two ferries cross the bay every hour.",
]

CATCHERS = "Catchers rule the field; they control the plays and tell everyone where to be."


def expression(tokens, lemma):
  return {"tokens": tokens, "lemma": lemma}


def instance(idx, relation, left, right, prefix):
  prem, prem_lemma, hypo, hypo_lemma, label = relation
  return {
      "id": f"{prefix}-{idx:03d}",
      "prem": expression(prem, prem_lemma),
      "hypo": expression(hypo, hypo_lemma),
      "arg_left": left,
      "arg_right": right,
      "label": label,
      "source": "levyholt",
  }


def write_jsonl(path, records):
  with open(path, "w", encoding="utf-8", newline="\n") as out:
    for r in records:
      out.write(json.dumps(r, ensure_ascii=False) + "\n")


def main():
  parser = argparse.ArgumentParser(description=__doc__)
  parser.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "data" / "toy"))
  args = parser.parse_args()
  out = pathlib.Path(args.out)
  out.mkdir(parents=True, exist_ok=True)
  rng = random.Random(SEED)

  # 96 distinct (relation, argument) combinations: 64 for the development
  # portion, 32 held out as test.
  combos = [(r, l, rr) for r in DATA_RELATIONS for l in range(len(DATA_LEFT)) for rr in range(len(DATA_RIGHT))]
  rng.shuffle(combos)
  per_relation = {r: [] for r in DATA_RELATIONS}
  for combo in combos:
    if len(per_relation[combo[0]]) < 12:
      per_relation[combo[0]].append(combo)
  dev, test = [], []
  for r in DATA_RELATIONS:
    for k, (_, l, rr) in enumerate(per_relation[r]):
      (dev if k < 8 else test).append((r, DATA_LEFT[l], DATA_RIGHT[rr]))
  rng.shuffle(dev)
  rng.shuffle(test)
  write_jsonl(out / "dev.jsonl", [instance(i, RELATIONS[r], l, rr, "toy-dev") for i, (r, l, rr) in enumerate(dev)])
  write_jsonl(out / "test.jsonl", [instance(i, RELATIONS[r], l, rr, "toy-test") for i, (r, l, rr) in enumerate(test)])

  pairs = []
  for i, r in enumerate(MINING_PAIRS):
    pairs.append(instance(i, RELATIONS[r], LEFT_ARGS[i], RIGHT_ARGS[i], "toy-pair"))
  write_jsonl(out / "pairs.jsonl", pairs)

  sentences = [CATCHERS]
  for i, r in enumerate(MINING_PAIRS):
    prem, _, hypo, _, _ = RELATIONS[r]
    for f, frame in enumerate(FRAMES):
      for rep in range(2):
        left = LEFT_ARGS[(i + f + rep) % len(LEFT_ARGS)]
        right = RIGHT_ARGS[(i + 2 * f + rep) % len(RIGHT_ARGS)]
        text = frame.format(L=left, P=" ".join(prem), H=" ".join(hypo), R=right)
        sentences.append(text[0].upper() + text[1:])
  while len(sentences) < 200:
    sentences.append(FILLER[len(sentences) % len(FILLER)])
  sentences = sentences[:200]
  rng.shuffle(sentences)
  with open(out / "corpus.txt", "w", encoding="utf-8", newline="\n") as f:
    for i, s in enumerate(sentences):
      f.write(f"toy\t{i}\t{s}\n")


if __name__ == "__main__":
  main()
