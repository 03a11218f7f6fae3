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

#include "liic/pattern_approach.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "liic/errors.h"
#include "liic/random.h"

namespace liic {
namespace {

constexpr std::array<std::string_view, kNumSlots> kSlotNames = {
    "PREM", "HYPO", "PREM_NEG", "HYPO_NEG", "PARGL", "PARGR", "HARGL", "HARGR"};

constexpr std::array<std::string_view, 17> kAuxiliaries = {
    "is", "are", "was", "were", "has", "have", "had", "can", "could",
    "will", "would", "may", "might", "must", "does", "do", "did"};

std::size_t Index(Slot slot) { return static_cast<std::size_t>(slot); }

std::string Lowercase(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

}  // namespace

std::string_view SlotName(Slot slot) { return kSlotNames[Index(slot)]; }

std::string_view PolarityName(Polarity p) { return p == Polarity::kPattern ? "pattern" : "antipattern"; }

std::string_view OriginName(Origin o) {
  switch (o) {
    case Origin::kManual:
      return "manual";
    case Origin::kAuto:
      return "auto";
    case Origin::kAutoCurated:
      return "auto_curated";
    case Origin::kAutoArg:
      return "auto_arg";
  }
  return "manual";
}

std::string_view ScoringModeName(ScoringMode m) { return m == ScoringMode::kPhiPsi ? "phi_psi" : "phi_only"; }

Polarity ParsePolarity(std::string_view name) {
  if (name == "pattern") return Polarity::kPattern;
  if (name == "antipattern") return Polarity::kAntipattern;
  throw ConfigError("unknown polarity '" + std::string(name) + "'");
}

Origin ParseOrigin(std::string_view name) {
  if (name == "manual") return Origin::kManual;
  if (name == "auto") return Origin::kAuto;
  if (name == "auto_curated") return Origin::kAutoCurated;
  if (name == "auto_arg") return Origin::kAutoArg;
  throw ConfigError("unknown pattern origin '" + std::string(name) + "'");
}

ScoringMode ParseScoringMode(std::string_view name) {
  if (name == "phi_psi") return ScoringMode::kPhiPsi;
  if (name == "phi_only") return ScoringMode::kPhiOnly;
  throw ConfigError("unknown scoring mode '" + std::string(name) + "'");
}

Pattern::Pattern(std::string template_text, Polarity polarity, Origin origin)
    : template_(std::move(template_text)), polarity_(polarity), origin_(origin) {
  std::array<int, kNumSlots> counts{};
  std::string literal;
  std::size_t pos = 0;
  while (pos < template_.size()) {
    bool matched = false;
    if (template_[pos] == '{') {
      for (std::size_t s = 0; s < kNumSlots; ++s) {
        const std::string token = "{" + std::string(kSlotNames[s]) + "}";
        if (template_.compare(pos, token.size(), token) == 0) {
          if (!literal.empty()) pieces_.push_back({std::move(literal), std::nullopt});
          literal.clear();
          pieces_.push_back({{}, static_cast<Slot>(s)});
          ++counts[s];
          pos += token.size();
          matched = true;
          break;
        }
      }
    }
    if (!matched) literal += template_[pos++];
  }
  if (!literal.empty()) pieces_.push_back({std::move(literal), std::nullopt});

  for (std::size_t s = 0; s < kNumSlots; ++s) {
    if (counts[s] > 1) {
      throw TemplateError("slot {" + std::string(kSlotNames[s]) + "} appears more than once in '" + template_ + "'");
    }
  }
  auto has = [&](Slot s) { return counts[Index(s)] > 0; };
  if (has(Slot::kPrem) && has(Slot::kPremNeg)) throw TemplateError("template mixes {PREM} and {PREM_NEG}");
  if (has(Slot::kHypo) && has(Slot::kHypoNeg)) throw TemplateError("template mixes {HYPO} and {HYPO_NEG}");
  if (!has(Slot::kPrem) && !has(Slot::kPremNeg)) {
    throw TemplateError("template lacks a premise slot: '" + template_ + "'");
  }
  if (!has(Slot::kHypo) && !has(Slot::kHypoNeg)) {
    throw TemplateError("template lacks a hypothesis slot: '" + template_ + "'");
  }
}

bool Pattern::HasSlot(Slot slot) const {
  return std::any_of(pieces_.begin(), pieces_.end(), [&](const Piece& p) { return p.slot == slot; });
}

bool Pattern::HasArgumentSlots() const {
  return HasSlot(Slot::kPargl) || HasSlot(Slot::kPargr) || HasSlot(Slot::kHargl) || HasSlot(Slot::kHargr);
}

std::string Pattern::Fill(const SlotFillers& fillers) const {
  std::string out;
  bool drop_leading_space = false;
  for (const auto& piece : pieces_) {
    if (!piece.slot) {
      std::string_view text = piece.literal;
      if (drop_leading_space && !text.empty() && text.front() == ' ') text.remove_prefix(1);
      drop_leading_space = false;
      out += text;
      continue;
    }
    const auto& filler = fillers[Index(*piece.slot)];
    if (!filler) throw TemplateError("no filler for slot {" + std::string(SlotName(*piece.slot)) + "}");
    if (filler->empty()) {
      if (!out.empty() && out.back() == ' ') {
        out.pop_back();
      } else {
        drop_leading_space = true;
      }
      continue;
    }
    drop_leading_space = false;
    out += *filler;
  }
  const auto first = out.find_first_not_of(' ');
  if (first == std::string::npos) return {};
  const auto last = out.find_last_not_of(' ');
  return out.substr(first, last - first + 1);
}

std::string NegateExpression(const VerbalExpression& expr) {
  const auto& tokens = expr.tokens();
  const std::string first = Lowercase(tokens.front());
  if (std::find(kAuxiliaries.begin(), kAuxiliaries.end(), first) != kAuxiliaries.end()) {
    std::string out = tokens.front() + " not";
    for (std::size_t i = 1; i < tokens.size(); ++i) out += " " + tokens[i];
    return out;
  }
  std::string out = "does not ";
  if (expr.lemma()) {
    out += expr.lemma()->substr(0, expr.lemma()->find(' '));
  } else {
    out += tokens.front();
  }
  for (std::size_t i = 1; i < tokens.size(); ++i) out += " " + tokens[i];
  return out;
}

SlotFillers InstanceFillers(const EntailmentInstance& inst) {
  SlotFillers f;
  f[Index(Slot::kPrem)] = inst.prem.Text();
  f[Index(Slot::kHypo)] = inst.hypo.Text();
  f[Index(Slot::kPremNeg)] = NegateExpression(inst.prem);
  f[Index(Slot::kHypoNeg)] = NegateExpression(inst.hypo);
  f[Index(Slot::kPargl)] = inst.arg_left;
  f[Index(Slot::kPargr)] = inst.arg_right;
  f[Index(Slot::kHargl)] = inst.arg_left;
  f[Index(Slot::kHargr)] = inst.arg_right;
  return f;
}

std::string Instantiate(const Pattern& pattern, const EntailmentInstance& inst) {
  return pattern.Fill(InstanceFillers(inst));
}

void PatternSet::Validate() const {
  if (patterns.empty()) throw ContractError("pattern set needs at least one pattern");
  for (const auto& p : patterns) {
    if (p.polarity() != Polarity::kPattern) throw ContractError("antipattern in the pattern list");
  }
  for (const auto& p : antipatterns) {
    if (p.polarity() != Polarity::kAntipattern) throw ContractError("pattern in the antipattern list");
  }
  if (mode == ScoringMode::kPhiPsi && antipatterns.empty()) {
    throw ContractError("phi_psi scoring needs at least one antipattern");
  }
}

std::string PatternSet::Hash() const {
  std::string blob(ScoringModeName(mode));
  for (const auto& p : patterns) blob += "\n+" + p.template_text();
  if (mode == ScoringMode::kPhiPsi) {
    for (const auto& p : antipatterns) blob += "\n-" + p.template_text();
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(Fnv1a64(blob)));
  return hex;
}

ScoreResult CombineScores(std::span<const double> pattern_probs, std::span<const double> antipattern_probs,
                          ScoringMode mode) {
  if (pattern_probs.empty()) throw ContractError("scoring needs at least one pattern");
  ScoreResult r;
  r.m_pos = pattern_probs[0];
  for (std::size_t i = 1; i < pattern_probs.size(); ++i) {
    if (pattern_probs[i] > r.m_pos) {
      r.m_pos = pattern_probs[i];
      r.pos_argmax = i;
    }
  }
  if (mode == ScoringMode::kPhiPsi) {
    if (antipattern_probs.empty()) throw ContractError("phi_psi scoring needs at least one antipattern");
    r.m_neg = antipattern_probs[0];
    for (std::size_t i = 1; i < antipattern_probs.size(); ++i) {
      if (antipattern_probs[i] > r.m_neg) {
        r.m_neg = antipattern_probs[i];
        r.neg_argmax = i;
      }
    }
  } else {
    r.m_neg = 1.0 - pattern_probs[0];
    for (std::size_t i = 1; i < pattern_probs.size(); ++i) {
      if (1.0 - pattern_probs[i] > r.m_neg) {
        r.m_neg = 1.0 - pattern_probs[i];
        r.neg_argmax = i;
      }
    }
  }
  r.s = r.m_pos - r.m_neg;
  return r;
}

int DecidePat(double s, double threshold) { return s > threshold ? 1 : 0; }

PatternModel::PatternModel(SequenceClassifier classifier, PatternSet patterns, double threshold)
    : classifier_(std::move(classifier)), patterns_(std::move(patterns)) {
  patterns_.Validate();
  set_threshold(threshold);
}

void PatternModel::set_threshold(double threshold) {
  if (!(threshold >= -1.0 && threshold <= 1.0)) {
    throw ContractError("pattern threshold must lie in [-1, 1], got " + std::to_string(threshold));
  }
  threshold_ = threshold;
}

void PatternModel::set_pattern_set(PatternSet patterns) {
  patterns.Validate();
  patterns_ = std::move(patterns);
}

double PatternModel::PFel(const std::string& sentence) const {
  return classifier_.Predict(TextInput::Single(sentence)).p1;
}

ScoreResult PatternModel::ScoreDetailed(const EntailmentInstance& inst) const {
  const SlotFillers fillers = InstanceFillers(inst);
  std::vector<double> pos;
  pos.reserve(patterns_.patterns.size());
  for (const auto& p : patterns_.patterns) pos.push_back(PFel(p.Fill(fillers)));
  std::vector<double> neg;
  if (patterns_.mode == ScoringMode::kPhiPsi) {
    neg.reserve(patterns_.antipatterns.size());
    for (const auto& p : patterns_.antipatterns) neg.push_back(PFel(p.Fill(fillers)));
  }
  return CombineScores(pos, neg, patterns_.mode);
}

int PatternModel::Decide(const EntailmentInstance& inst, double threshold) const {
  if (!(threshold >= -1.0 && threshold <= 1.0)) throw ContractError("pattern threshold must lie in [-1, 1]");
  return DecidePat(Score(inst), threshold);
}

std::vector<WeightedExample> PatternTrainingExamples(const PatternSet& patterns, const EntailmentInstance& inst,
                                                     int y) {
  if (y != 0 && y != 1) throw ContractError("labels must be 0 or 1");
  const SlotFillers fillers = InstanceFillers(inst);
  std::vector<WeightedExample> out;
  auto add = [&](const std::vector<Pattern>& omega, int target) {
    if (omega.empty()) return;
    const double weight = 1.0 / static_cast<double>(omega.size());
    for (const auto& p : omega) out.push_back({TextInput::Single(p.Fill(fillers)), target, weight});
  };
  add(patterns.patterns, y);
  if (patterns.mode == ScoringMode::kPhiPsi) add(patterns.antipatterns, 1 - y);
  return out;
}

LossResult LossPat(const SequenceClassifier& classifier, const PatternSet& patterns,
                   std::span<const EntailmentInstance> batch) {
  std::vector<WeightedExample> examples;
  for (const auto& inst : batch) {
    auto terms = PatternTrainingExamples(patterns, inst, inst.label);
    examples.insert(examples.end(), std::make_move_iterator(terms.begin()), std::make_move_iterator(terms.end()));
  }
  return classifier.Loss(examples);
}

LossResult LossPat(const PatternModel& model, std::span<const EntailmentInstance> batch) {
  return LossPat(model.classifier(), model.pattern_set(), batch);
}

std::vector<PatternSet> ChunkedTrainingView(const PatternSet& patterns, std::size_t chunk_size) {
  if (chunk_size < 1) throw ContractError("chunk size must be at least 1");
  auto chunks_of = [&](const std::vector<Pattern>& v) { return (v.size() + chunk_size - 1) / chunk_size; };
  const std::size_t psi_chunks = patterns.mode == ScoringMode::kPhiPsi ? chunks_of(patterns.antipatterns) : 0;
  const std::size_t n = std::max<std::size_t>({chunks_of(patterns.patterns), psi_chunks, 1});
  std::vector<PatternSet> out(n);
  for (std::size_t c = 0; c < n; ++c) {
    out[c].mode = patterns.mode;
    out[c].mined_on = patterns.mined_on;
    auto slice = [&](const std::vector<Pattern>& src, std::vector<Pattern>& dst) {
      const std::size_t begin = c * chunk_size;
      for (std::size_t i = begin; i < std::min(src.size(), begin + chunk_size); ++i) dst.push_back(src[i]);
    };
    slice(patterns.patterns, out[c].patterns);
    if (patterns.mode == ScoringMode::kPhiPsi) slice(patterns.antipatterns, out[c].antipatterns);
  }
  return out;
}

std::vector<PatternRecord> ReadPatternRecords(std::istream& in) {
  std::vector<PatternRecord> out;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto fields = SplitTabs(line);
    if (fields.size() != 3 && fields.size() != 4) {
      throw ParseError("expected <polarity> TAB <origin> TAB <template> [TAB <points>]", line_number);
    }
    try {
      Pattern pattern(std::string(fields[2]), ParsePolarity(fields[0]), ParseOrigin(fields[1]));
      std::optional<long long> points;
      if (fields.size() == 4) {
        std::size_t used = 0;
        const std::string text(fields[3]);
        points = std::stoll(text, &used);
        if (used != text.size() || *points < 0) throw ConfigError("bad points column '" + text + "'");
      }
      out.push_back({std::move(pattern), points, line_number});
    } catch (const ParseError&) {
      throw;
    } catch (const std::invalid_argument&) {
      throw ParseError("points column is not an integer", line_number);
    } catch (const std::out_of_range&) {
      throw ParseError("points column out of range", line_number);
    } catch (const std::exception& e) {
      throw ParseError(e.what(), line_number);
    }
  }
  return out;
}

std::vector<PatternRecord> LoadPatternRecords(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open pattern file '" + path.string() + "'");
  return ReadPatternRecords(in);
}

std::string FormatPatternRecord(const Pattern& pattern, std::optional<long long> points) {
  std::string out = std::string(PolarityName(pattern.polarity())) + "\t" + std::string(OriginName(pattern.origin())) +
                    "\t" + pattern.template_text();
  if (points) out += "\t" + std::to_string(*points);
  return out;
}

PatternSet ToPatternSet(std::span<const PatternRecord> records, ScoringMode mode) {
  PatternSet set;
  set.mode = mode;
  for (const auto& r : records) {
    (r.pattern.polarity() == Polarity::kPattern ? set.patterns : set.antipatterns).push_back(r.pattern);
  }
  return set;
}

PatternSet LoadPatternFile(const std::filesystem::path& path, ScoringMode mode) {
  const auto records = LoadPatternRecords(path);
  return ToPatternSet(records, mode);
}

void SavePatternFile(const std::filesystem::path& path, const PatternSet& patterns) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write pattern file '" + path.string() + "'");
  out << "# polarity\torigin\ttemplate\n";
  for (const auto& p : patterns.patterns) out << FormatPatternRecord(p) << '\n';
  for (const auto& p : patterns.antipatterns) out << FormatPatternRecord(p) << '\n';
}

PatternSet DefaultManualPatterns(ScoringMode mode) {
  PatternSet set;
  set.mode = mode;
  const auto pat = [](const char* t) { return Pattern(t, Polarity::kPattern, Origin::kManual); };
  const auto anti = [](const char* t) { return Pattern(t, Polarity::kAntipattern, Origin::kManual); };
  set.patterns = {
      pat("{PARGL} {PREM} {PARGR}, which means that {HARGL} {HYPO} {HARGR}."),
      pat("{HARGL} {HYPO} {HARGR} because {PARGL} {PREM} {PARGR}."),
      pat("{PARGL} {PREM_NEG} {PARGR} because {HARGL} {HYPO_NEG} {HARGR}."),
      pat("{HARGL} {HYPO_NEG} {HARGR}, which means that {PARGL} {PREM_NEG} {PARGR}."),
  };
  set.antipatterns = {
      anti("It is not the case that {HARGL} {HYPO} {HARGR}, let alone that {PARGL} {PREM} {PARGR}."),
      anti("It is not sure that {HARGL} {HYPO} {HARGR} just because {PARGL} {PREM} {PARGR}."),
  };
  return set;
}

}  // namespace liic
