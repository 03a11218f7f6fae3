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

#include "liic/mining.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "liic/errors.h"
#include "liic/mock_backend.h"
#include "test_util.h"

namespace liic {
namespace {

using testing::MakeInstance;

const std::filesystem::path kToy = std::filesystem::path(LIIC_SOURCE_DIR) / "data" / "toy";

const char* kCatchers = "Catchers rule the field; they control the plays and tell everyone where to be.";

std::vector<CorpusSentence> Corpus(std::vector<std::string> lines) {
  std::vector<CorpusSentence> out;
  for (std::size_t i = 0; i < lines.size(); ++i) out.push_back({lines[i], "d", static_cast<long long>(i)});
  return out;
}

EntailmentInstance RuleControl() { return MakeInstance("rc", {"rule"}, {"control"}, "x", "y", 1); }

TEST(FindCandidatesTest, CatchersTemplate) {
  const auto corpus = Corpus({kCatchers});
  const std::vector<EntailmentInstance> pairs{RuleControl()};
  const MiningResult r = FindCandidates(corpus, pairs, {});
  ASSERT_EQ(r.candidates.size(), 1u);
  const auto& c = r.candidates[0];
  EXPECT_EQ(c.pattern.template_text(),
            "Catchers {PREM} the field; they {HYPO} the plays and tell everyone where to be.");
  EXPECT_EQ(c.pattern.polarity(), Polarity::kPattern);
  EXPECT_EQ(c.pattern.origin(), Origin::kAuto);
  EXPECT_EQ(c.Reconstruct(), kCatchers);
  EXPECT_EQ(c.matched_pair_id, "rc");
}

TEST(FindCandidatesTest, NoCooccurrenceNoCandidates) {
  const auto corpus = Corpus({"Catchers rule the field.", "They control the plays.", "Unrelated filler."});
  const std::vector<EntailmentInstance> pairs{RuleControl()};
  EXPECT_TRUE(FindCandidates(corpus, pairs, {}).candidates.empty());
}

TEST(FindCandidatesTest, WholeWordOnly) {
  const auto corpus = Corpus({"The ruler controls nothing."});
  const std::vector<EntailmentInstance> pairs{RuleControl()};
  EXPECT_TRUE(FindCandidates(corpus, pairs, {}).candidates.empty());
}

TEST(FindCandidatesTest, NegativePairsGiveAntipatterns) {
  const auto corpus = Corpus({"They sold it and later acquired it again."});
  const std::vector<EntailmentInstance> pairs{MakeInstance("sa", {"sold"}, {"acquired"}, "x", "y", 0)};
  const auto r = FindCandidates(corpus, pairs, {});
  ASSERT_EQ(r.candidates.size(), 1u);
  EXPECT_EQ(r.candidates[0].pattern.polarity(), Polarity::kAntipattern);
}

TEST(FindCandidatesTest, LemmaModeRepeatedForm) {
  const auto corpus = Corpus({"Most community-acquired pneumonia is acquired outside hospitals."});
  const std::vector<EntailmentInstance> pairs{
      MakeInstance("aa", {"acquires"}, {"acquire"}, "x", "y", 1, "acquire", "acquire")};
  RuleBasedInflector inflector;
  MiningOptions options;
  options.mode = MatchMode::kLemmaInflected;
  options.inflector = &inflector;
  const auto r = FindCandidates(corpus, pairs, options);
  ASSERT_EQ(r.candidates.size(), 1u);
  const auto& c = r.candidates[0];
  EXPECT_EQ(c.pattern.template_text(), "Most community-{PREM} pneumonia is {HYPO} outside hospitals.");
  EXPECT_EQ(c.prem_filler, "acquired");
  EXPECT_EQ(c.hypo_filler, "acquired");
  EXPECT_EQ(c.Reconstruct(), corpus[0].text);
  EXPECT_TRUE(FindCandidates(corpus, pairs, {}).candidates.empty());
  options.inflector = nullptr;
  EXPECT_THROW(FindCandidates(corpus, pairs, options), ConfigError);
}

TEST(FindCandidatesTest, SkipsLongAndSlotLiteralSentences) {
  std::string long_sentence = "rule";
  for (int i = 0; i < 70; ++i) long_sentence += " w";
  long_sentence += " control";
  const auto corpus = Corpus({long_sentence, "we rule {PREM} and control"});
  const std::vector<EntailmentInstance> pairs{RuleControl()};
  const auto r = FindCandidates(corpus, pairs, {});
  EXPECT_TRUE(r.candidates.empty());
  EXPECT_EQ(r.stats.skipped_length, 1u);
  EXPECT_EQ(r.stats.skipped_slot_literal, 1u);
}

TEST(InflectorTest, Forms) {
  RuleBasedInflector inf;
  const auto has = [&](const char* lemma, const char* form) {
    const auto forms = inf.Forms(lemma);
    return std::find(forms.begin(), forms.end(), form) != forms.end();
  };
  EXPECT_TRUE(has("acquire", "acquired"));
  EXPECT_TRUE(has("acquire", "acquires"));
  EXPECT_TRUE(has("acquire", "acquiring"));
  EXPECT_TRUE(has("buy", "bought"));
  EXPECT_TRUE(has("carry", "carried"));
  EXPECT_TRUE(has("watch", "watches"));
  EXPECT_TRUE(has("stop", "stopped"));
  EXPECT_TRUE(has("own", "own"));
}

TEST(MaskedQueryTest, Shapes) {
  const Pattern p("{PARGL} {PREM} {PARGR} so {HARGL} {HYPO_NEG} {HARGR}.", Polarity::kPattern, Origin::kManual);
  EXPECT_EQ(MaskedQuery(p, Slot::kPrem, "bought", "<mask>"), " bought  so  does not <mask> .");
  const Pattern h("community-{PREM} pneumonia is {HYPO} here", Polarity::kPattern, Origin::kAuto);
  EXPECT_EQ(MaskedQuery(h, Slot::kHypo, "acquired", "<mask>"), "<mask> pneumonia is acquired here");
  EXPECT_THROW(MaskedQuery(p, Slot::kPargl, "x", "<mask>"), ContractError);
}

std::shared_ptr<MockBackend> QuietMock() {
  MockBackend::Options o;
  o.completion_vocabulary = {"zzz"};
  return std::make_shared<MockBackend>(o);
}

TEST(RankCandidatesTest, CatchersPoints) {
  const auto corpus = Corpus({kCatchers});
  const std::vector<EntailmentInstance> pairs{RuleControl()};
  const auto found = FindCandidates(corpus, pairs, {});
  const auto scoring = ScoringPairs(pairs);
  const Pattern& pat = found.candidates[0].pattern;

  auto mock = QuietMock();
  EXPECT_EQ(RankCandidates(*mock, found.candidates, scoring)[0].points, 0);
  mock->SetCompletions(MaskedQuery(pat, Slot::kPrem, "rule", "<mask>"), {{"control", 0.4}, {"own", 0.1}});
  EXPECT_EQ(RankCandidates(*mock, found.candidates, scoring)[0].points, 1);
  mock->SetCompletions(MaskedQuery(pat, Slot::kHypo, "control", "<mask>"), {{"Ġrule", 0.3}});
  const auto ranked = RankCandidates(*mock, found.candidates, scoring);
  EXPECT_EQ(ranked[0].points, 2);
  EXPECT_EQ(ranked[0].k_used, 100u);

  const std::vector<ScoringPair> none;
  EXPECT_EQ(RankCandidates(*mock, found.candidates, none)[0].points, 0);
  const std::vector<ScoringPair> negative{{"rule", "control", 0}};
  EXPECT_EQ(RankCandidates(*mock, found.candidates, negative)[0].points, 0);
}

TEST(RankCandidatesTest, DeduplicatesAndOrders) {
  const auto corpus = Corpus({"We rule and control.", "We rule and control.", kCatchers});
  const std::vector<EntailmentInstance> pairs{RuleControl()};
  const auto found = FindCandidates(corpus, pairs, {});
  ASSERT_EQ(found.candidates.size(), 3u);
  auto mock = QuietMock();
  mock->SetCompletions(MaskedQuery(found.candidates[2].pattern, Slot::kPrem, "rule", "<mask>"), {{"control", 0.9}});
  const auto ranked = RankCandidates(*mock, found.candidates, ScoringPairs(pairs));
  ASSERT_EQ(ranked.size(), 2u);
  EXPECT_EQ(ranked[0].candidate.source_sentence.text, kCatchers);
  EXPECT_EQ(ranked[1].candidate.source_sentence.sent_index, 0);
}

TEST(ToyCorpusTest, ReconstructionAndThreadIndependence) {
  const auto corpus = LoadCorpus(kToy / "corpus.txt");
  ASSERT_EQ(corpus.size(), 200u);
  const auto pairs = LoadDataset(kToy / "pairs.jsonl", Source::kLevyHolt).instances;
  ASSERT_EQ(pairs.size(), 10u);
  MiningOptions one;
  const auto a = FindCandidates(corpus, pairs, one);
  ASSERT_FALSE(a.candidates.empty());
  for (const auto& c : a.candidates) EXPECT_EQ(c.Reconstruct(), c.source_sentence.text);
  MiningOptions four;
  four.threads = 4;
  const auto b = FindCandidates(corpus, pairs, four);
  ASSERT_EQ(a.candidates.size(), b.candidates.size());
  for (std::size_t i = 0; i < a.candidates.size(); ++i) {
    EXPECT_EQ(a.candidates[i].pattern, b.candidates[i].pattern);
  }

  std::vector<std::string> vocab;
  for (const auto& p : ScoringPairs(pairs)) {
    vocab.push_back(p.prem_repr);
    vocab.push_back(p.hypo_repr);
  }
  MockBackend::Options o;
  o.completion_vocabulary = vocab;
  MockBackend mock(o);
  const auto r1 = RankCandidates(mock, a.candidates, ScoringPairs(pairs), 3, 1);
  const auto r2 = RankCandidates(mock, a.candidates, ScoringPairs(pairs), 3, 4);
  ASSERT_EQ(r1.size(), r2.size());
  for (std::size_t i = 0; i < r1.size(); ++i) {
    EXPECT_EQ(r1[i].candidate.pattern, r2[i].candidate.pattern);
    EXPECT_EQ(r1[i].points, r2[i].points);
    if (i > 0) EXPECT_GE(r1[i - 1].points, r1[i].points);
  }
}

std::vector<PatternRecord> Records(std::size_t pats, std::size_t antis) {
  std::vector<PatternRecord> out;
  for (std::size_t i = 0; i < std::max(pats, antis); ++i) {
    if (i < pats) out.push_back({Pattern("{PREM} p" + std::to_string(i) + " {HYPO}", Polarity::kPattern, Origin::kAuto), 9, 0});
    if (i < antis) out.push_back({Pattern("{PREM} a" + std::to_string(i) + " {HYPO}", Polarity::kAntipattern, Origin::kAuto), 8, 0});
  }
  return out;
}

TEST(SelectTopNTest, PrefixAndSaturation) {
  const auto recs = Records(6, 4);
  for (std::size_t n = 1; n <= 6; ++n) {
    const Selection small = SelectTopN(recs, n, ScoringMode::kPhiPsi);
    const Selection big = SelectTopN(recs, n + 1, ScoringMode::kPhiPsi);
    ASSERT_EQ(small.patterns.patterns.size(), n);
    EXPECT_TRUE(std::equal(small.patterns.patterns.begin(), small.patterns.patterns.end(),
                           big.patterns.patterns.begin()));
    EXPECT_EQ(small.short_pool, n > 4);
  }
  const Selection sat = SelectTopN(recs, 50, ScoringMode::kPhiPsi);
  EXPECT_EQ(sat.patterns.patterns.size(), 6u);
  EXPECT_EQ(sat.patterns.antipatterns.size(), 4u);
  EXPECT_TRUE(sat.short_pool);
  const Selection phi = SelectTopN(recs, 3, ScoringMode::kPhiOnly);
  EXPECT_TRUE(phi.patterns.antipatterns.empty());
  EXPECT_FALSE(phi.short_pool);
  EXPECT_THROW(SelectTopN(recs, 0, ScoringMode::kPhiOnly), ContractError);
}

TEST(CuratedTest, Formats) {
  const PatternSet set = LoadCurated(std::filesystem::path(LIIC_SOURCE_DIR) / "data" / "patterns" / "autarg.tsv");
  EXPECT_EQ(set.patterns.size(), 5u);
  for (const auto& p : set.patterns) EXPECT_TRUE(p.HasArgumentSlots());

  std::istringstream empty("");
  EXPECT_THROW(ReadCurated(empty).Validate(), ContractError);

  std::istringstream missing("pattern\tauto_arg\t{PARGL} {PREM} {PARGR} alone\n");
  EXPECT_THROW(ReadCurated(missing), ParseError);
  std::istringstream manual("pattern\tmanual\t{PREM} and {HYPO}\n");
  EXPECT_THROW(ReadCurated(manual), ParseError);
  std::istringstream no_args("pattern\tauto_curated\t{PREM} and {HYPO}\npattern\tauto_arg\t{PREM} or {HYPO}\n");
  try {
    ReadCurated(no_args);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(CorpusTest, Formats) {
  std::istringstream in("doc1\t4\tFirst sentence.\n\nBare sentence\n");
  const auto c = ReadCorpus(in);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].doc_id, "doc1");
  EXPECT_EQ(c[0].sent_index, 4);
  EXPECT_EQ(c[0].text, "First sentence.");
  EXPECT_EQ(c[1].text, "Bare sentence");
}

}  // namespace
}  // namespace liic
