// Copyright 2026 The LIiC Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Automatic pattern discovery.
//
// Corpus sentences that mention both expressions of a dev1 pair become
// templates by replacing the two mentions with {PREM} and {HYPO}. Candidates
// from entailing pairs are patterns, candidates from non-entailing pairs are
// antipatterns. Each template then earns one point per direction in which a
// masked LM recovers the held-out representative token among its k best
// completions.
//
// Corpus format: UTF-8, one sentence per line, with an optional
// "doc_id TAB sent_index TAB" prefix.

#ifndef LIIC_MINING_H_
#define LIIC_MINING_H_

#include <cstddef>
#include <filesystem>
#include <istream>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "liic/datamodel.h"
#include "liic/lmbackend.h"
#include "liic/pattern_approach.h"

namespace liic {

struct CorpusSentence {
  std::string text;
  std::string doc_id;
  long long sent_index = 0;
};

// Lines without the prefix get an empty doc_id and their 0-based line index.
std::vector<CorpusSentence> ReadCorpus(std::istream& in);
std::vector<CorpusSentence> LoadCorpus(const std::filesystem::path& path);

// Byte range [begin, end) in the source sentence.
struct TextSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  bool Overlaps(const TextSpan& other) const { return begin < other.end && other.begin < end; }
};

struct CandidatePattern {
  Pattern pattern;
  CorpusSentence source_sentence;
  std::string matched_pair_id;
  TextSpan prem_span;
  TextSpan hypo_span;
  std::string prem_filler;
  std::string hypo_filler;

  // Template with the original fillers put back.
  std::string Reconstruct() const;
};

enum class MatchMode { kVerbatim, kLemmaInflected };
MatchMode ParseMatchMode(std::string_view name);  // "verbatim" | "lemma"

class Inflector {
 public:
  virtual ~Inflector() = default;
  // Lowercase surface forms of a verb lemma, the lemma itself included.
  virtual std::vector<std::string> Forms(std::string_view lemma) const = 0;
};

// Regular English verb morphology (-s/-es, -ed, -ing, consonant doubling for a
// fixed list) plus an irregular-verb table.
class RuleBasedInflector : public Inflector {
 public:
  std::vector<std::string> Forms(std::string_view lemma) const override;
};

struct MiningOptions {
  MatchMode mode = MatchMode::kVerbatim;
  // Required in lemma mode.
  const Inflector* inflector = nullptr;
  // Sentences with more whitespace tokens are skipped.
  std::size_t max_template_tokens = 64;
  std::size_t threads = 1;
};

struct MiningStats {
  std::size_t sentences = 0;
  std::size_t candidates = 0;
  std::size_t skipped_overlap = 0;
  std::size_t skipped_length = 0;
  std::size_t skipped_slot_literal = 0;
};

struct MiningResult {
  std::vector<CandidatePattern> candidates;
  MiningStats stats;
};

// One candidate per (sentence, pair) match, ordered by (doc_id, sent_index),
// then corpus position, then pair order; independent of `threads`. The first
// non-overlapping (premise, hypothesis) mention pair in reading order is
// slotted. Throws ConfigError in lemma mode without an inflector and
// ContractError when a pair lacks lemmas in lemma mode.
MiningResult FindCandidates(std::span<const CorpusSentence> corpus, std::span<const EntailmentInstance> pairs,
                            const MiningOptions& options);

struct ScoringPair {
  std::string prem_repr;
  std::string hypo_repr;
  int label = 0;
};

// Representative tokens of dev1 pairs (last token or lemma, by source).
std::vector<ScoringPair> ScoringPairs(std::span<const EntailmentInstance> pairs);

struct RankedPattern {
  CandidatePattern candidate;
  long long points = 0;
  std::size_t k_used = 0;
};

// Masked query for one direction: `filled` goes into its slot, the other
// verb slot becomes the backend mask. A slot glued to a preceding hyphenated
// word ("community-{HYPO}") is masked together with that word. Argument slots
// are left empty.
std::string MaskedQuery(const Pattern& pattern, Slot filled_slot, std::string_view filled,
                        std::string_view mask_token);

// Scores patterns against entailing pairs and antipatterns against
// non-entailing pairs, both directions each. Candidates repeating an earlier
// (polarity, template) are dropped. Sorted by points descending, ties by
// (doc_id, sent_index) and then input order.
std::vector<RankedPattern> RankCandidates(const LmBackend& backend, std::span<const CandidatePattern> candidates,
                                          std::span<const ScoringPair> scoring_pairs, std::size_t k = 100,
                                          std::size_t threads = 1);

std::vector<PatternRecord> ToRecords(std::span<const RankedPattern> ranked);
void SaveRanked(const std::filesystem::path& path, std::span<const RankedPattern> ranked);

struct Selection {
  PatternSet patterns;
  // Set when fewer than n patterns (or antipatterns, in phi_psi mode) existed.
  bool short_pool = false;
};

// Top n patterns, plus the top n antipatterns in phi_psi mode, preserving the
// ranking order of `ranked`. Throws ContractError for n < 1.
Selection SelectTopN(std::span<const PatternRecord> ranked, std::size_t n, ScoringMode mode);

// Curated or argument-rewritten patterns in the pattern file format. Every
// record must have origin auto_curated or auto_arg; auto_arg records must use
// argument slots. Violations raise ParseError with the line number.
PatternSet LoadCurated(const std::filesystem::path& path, ScoringMode mode = ScoringMode::kPhiOnly);
PatternSet ReadCurated(std::istream& in, ScoringMode mode = ScoringMode::kPhiOnly);

}  // namespace liic

#endif  // LIIC_MINING_H_
