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

#include <algorithm>
#include <cctype>
#include <fstream>
#include <future>
#include <map>
#include <set>
#include <tuple>
#include <unordered_set>

#include "liic/errors.h"

namespace liic {
namespace {

std::string Lowercase(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool IsWordChar(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || u >= 0x80 || c == '_';
}

std::vector<std::string> SplitWords(std::string_view text) {
  std::vector<std::string> words;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    const std::size_t end = std::min(text.find(' ', pos), text.size());
    if (end > pos) words.emplace_back(text.substr(pos, end - pos));
    pos = end;
  }
  return words;
}

std::size_t CountTokens(std::string_view text) {
  std::size_t n = 0;
  bool in_token = false;
  for (char c : text) {
    const bool space = std::isspace(static_cast<unsigned char>(c));
    if (!space && !in_token) ++n;
    in_token = !space;
  }
  return n;
}

// Whole-word occurrences of any needle, sorted by start; the longest needle
// wins at a shared start.
std::vector<TextSpan> FindMentions(std::string_view haystack, const std::vector<std::string>& needles) {
  std::vector<TextSpan> spans;
  for (const auto& needle : needles) {
    if (needle.empty()) continue;
    for (auto pos = haystack.find(needle); pos != std::string_view::npos; pos = haystack.find(needle, pos + 1)) {
      const std::size_t end = pos + needle.size();
      const bool left_ok = pos == 0 || !IsWordChar(haystack[pos - 1]);
      const bool right_ok = end == haystack.size() || !IsWordChar(haystack[end]);
      if (left_ok && right_ok) spans.push_back({pos, end});
    }
  }
  std::sort(spans.begin(), spans.end(), [](const TextSpan& a, const TextSpan& b) {
    return a.begin != b.begin ? a.begin < b.begin : a.end > b.end;
  });
  spans.erase(std::unique(spans.begin(), spans.end(),
                          [](const TextSpan& a, const TextSpan& b) { return a.begin == b.begin; }),
              spans.end());
  return spans;
}

struct PairNeedles {
  std::vector<std::string> prem;
  std::vector<std::string> hypo;
};

std::vector<std::string> LemmaNeedles(const VerbalExpression& expr, const Inflector& inflector,
                                      const std::string& pair_id) {
  if (!expr.lemma()) throw ContractError("lemma-mode mining needs lemmas; pair '" + pair_id + "' has none");
  const std::vector<std::string> lemma_words = SplitWords(*expr.lemma());
  const std::vector<std::string> forms = inflector.Forms(lemma_words.front());

  std::vector<std::string> tail;
  const auto& tokens = expr.tokens();
  auto head = std::find_if(tokens.begin(), tokens.end(), [&](const std::string& t) {
    return std::find(forms.begin(), forms.end(), Lowercase(t)) != forms.end();
  });
  if (head != tokens.end()) {
    for (auto it = head + 1; it != tokens.end(); ++it) tail.push_back(Lowercase(*it));
  } else {
    tail.assign(lemma_words.begin() + 1, lemma_words.end());
  }
  std::vector<std::string> needles;
  for (const auto& form : forms) {
    std::string needle = form;
    for (const auto& t : tail) needle += " " + t;
    needles.push_back(std::move(needle));
  }
  return needles;
}

struct Hit {
  std::size_t sentence = 0;
  std::size_t pair = 0;
  CandidatePattern candidate;
};

bool ContainsSlotLiteral(std::string_view text) {
  for (std::size_t s = 0; s < kNumSlots; ++s) {
    if (text.find("{" + std::string(SlotName(static_cast<Slot>(s))) + "}") != std::string_view::npos) return true;
  }
  return false;
}

void ScanShard(std::span<const CorpusSentence> corpus, std::size_t begin, std::size_t end,
               std::span<const EntailmentInstance> pairs, const std::vector<PairNeedles>& needles,
               MatchMode mode, std::size_t max_tokens, std::vector<Hit>& hits, MiningStats& stats) {
  for (std::size_t si = begin; si < end; ++si) {
    const CorpusSentence& sentence = corpus[si];
    ++stats.sentences;
    if (CountTokens(sentence.text) > max_tokens) {
      ++stats.skipped_length;
      continue;
    }
    if (ContainsSlotLiteral(sentence.text)) {
      ++stats.skipped_slot_literal;
      continue;
    }
    const std::string haystack = mode == MatchMode::kLemmaInflected ? Lowercase(sentence.text) : sentence.text;
    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
      const auto prem_spans = FindMentions(haystack, needles[pi].prem);
      if (prem_spans.empty()) continue;
      const auto hypo_spans = FindMentions(haystack, needles[pi].hypo);
      if (hypo_spans.empty()) continue;

      const TextSpan* prem = nullptr;
      const TextSpan* hypo = nullptr;
      for (const auto& p : prem_spans) {
        for (const auto& h : hypo_spans) {
          if (!p.Overlaps(h)) {
            prem = &p;
            hypo = &h;
            break;
          }
        }
        if (prem != nullptr) break;
      }
      if (prem == nullptr) {
        ++stats.skipped_overlap;
        continue;
      }

      const bool prem_first = prem->begin < hypo->begin;
      const TextSpan& a = prem_first ? *prem : *hypo;
      const TextSpan& b = prem_first ? *hypo : *prem;
      const std::string_view text = sentence.text;
      std::string templ;
      templ += text.substr(0, a.begin);
      templ += prem_first ? "{PREM}" : "{HYPO}";
      templ += text.substr(a.end, b.begin - a.end);
      templ += prem_first ? "{HYPO}" : "{PREM}";
      templ += text.substr(b.end);

      const EntailmentInstance& pair = pairs[pi];
      const Polarity polarity = pair.label == 1 ? Polarity::kPattern : Polarity::kAntipattern;
      hits.push_back({si, pi,
                      CandidatePattern{Pattern(std::move(templ), polarity, Origin::kAuto), sentence, pair.id, *prem,
                                       *hypo, std::string(text.substr(prem->begin, prem->end - prem->begin)),
                                       std::string(text.substr(hypo->begin, hypo->end - hypo->begin))}});
      ++stats.candidates;
    }
  }
}

// Normalizes LM vocabulary entries ("Ġrule", "▁Rule") for comparison.
std::string NormalizeToken(std::string_view token) {
  while (!token.empty() && std::isspace(static_cast<unsigned char>(token.front()))) token.remove_prefix(1);
  while (!token.empty() && std::isspace(static_cast<unsigned char>(token.back()))) token.remove_suffix(1);
  for (std::string_view marker : {std::string_view("\xC4\xA0"), std::string_view("\xE2\x96\x81")}) {
    if (token.starts_with(marker)) token.remove_prefix(marker.size());
  }
  return Lowercase(token);
}

bool InTopK(const LmBackend& backend, const std::string& query, const std::string& target, std::size_t k) {
  const std::string wanted = NormalizeToken(target);
  for (const auto& c : backend.TopK({query, k})) {
    if (NormalizeToken(c.token) == wanted) return true;
  }
  return false;
}

}  // namespace

std::vector<CorpusSentence> ReadCorpus(std::istream& in) {
  std::vector<CorpusSentence> out;
  std::string line;
  long long index = 0;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    CorpusSentence s;
    const auto tab1 = line.find('\t');
    const auto tab2 = tab1 == std::string::npos ? std::string::npos : line.find('\t', tab1 + 1);
    if (tab2 != std::string::npos) {
      s.doc_id = line.substr(0, tab1);
      const std::string idx = line.substr(tab1 + 1, tab2 - tab1 - 1);
      try {
        std::size_t used = 0;
        s.sent_index = std::stoll(idx, &used);
        if (used != idx.size()) throw std::invalid_argument(idx);
      } catch (const std::exception&) {
        throw ParseError("sentence index '" + idx + "' is not an integer", line_number);
      }
      s.text = line.substr(tab2 + 1);
    } else {
      s.sent_index = index;
      s.text = line;
    }
    ++index;
    if (s.text.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<CorpusSentence> LoadCorpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open corpus '" + path.string() + "'");
  return ReadCorpus(in);
}

std::string CandidatePattern::Reconstruct() const {
  SlotFillers fillers;
  fillers[static_cast<std::size_t>(Slot::kPrem)] = prem_filler;
  fillers[static_cast<std::size_t>(Slot::kHypo)] = hypo_filler;
  return pattern.Fill(fillers);
}

MatchMode ParseMatchMode(std::string_view name) {
  if (name == "verbatim") return MatchMode::kVerbatim;
  if (name == "lemma" || name == "lemma_inflected") return MatchMode::kLemmaInflected;
  throw ConfigError("unknown match mode '" + std::string(name) + "'");
}

std::vector<std::string> RuleBasedInflector::Forms(std::string_view lemma_in) const {
  static const std::map<std::string, std::vector<std::string>, std::less<>> kIrregular = {
      {"be", {"am", "is", "are", "was", "were", "been", "being"}},
      {"have", {"has", "had", "having"}},
      {"do", {"does", "did", "done", "doing"}},
      {"go", {"goes", "went", "gone", "going"}},
      {"bear", {"bears", "bore", "born", "borne", "bearing"}},
      {"beat", {"beats", "beat", "beaten", "beating"}},
      {"become", {"becomes", "became", "becoming"}},
      {"begin", {"begins", "began", "begun", "beginning"}},
      {"bite", {"bites", "bit", "bitten", "biting"}},
      {"break", {"breaks", "broke", "broken", "breaking"}},
      {"bring", {"brings", "brought", "bringing"}},
      {"build", {"builds", "built", "building"}},
      {"buy", {"buys", "bought", "buying"}},
      {"catch", {"catches", "caught", "catching"}},
      {"choose", {"chooses", "chose", "chosen", "choosing"}},
      {"come", {"comes", "came", "coming"}},
      {"cut", {"cuts", "cut", "cutting"}},
      {"draw", {"draws", "drew", "drawn", "drawing"}},
      {"drink", {"drinks", "drank", "drunk", "drinking"}},
      {"drive", {"drives", "drove", "driven", "driving"}},
      {"eat", {"eats", "ate", "eaten", "eating"}},
      {"fall", {"falls", "fell", "fallen", "falling"}},
      {"feel", {"feels", "felt", "feeling"}},
      {"fight", {"fights", "fought", "fighting"}},
      {"find", {"finds", "found", "finding"}},
      {"fly", {"flies", "flew", "flown", "flying"}},
      {"forget", {"forgets", "forgot", "forgotten", "forgetting"}},
      {"get", {"gets", "got", "gotten", "getting"}},
      {"give", {"gives", "gave", "given", "giving"}},
      {"grow", {"grows", "grew", "grown", "growing"}},
      {"hit", {"hits", "hit", "hitting"}},
      {"hold", {"holds", "held", "holding"}},
      {"keep", {"keeps", "kept", "keeping"}},
      {"know", {"knows", "knew", "known", "knowing"}},
      {"lay", {"lays", "laid", "laying"}},
      {"lead", {"leads", "led", "leading"}},
      {"leave", {"leaves", "left", "leaving"}},
      {"lend", {"lends", "lent", "lending"}},
      {"let", {"lets", "let", "letting"}},
      {"lie", {"lies", "lay", "lain", "lying"}},
      {"lose", {"loses", "lost", "losing"}},
      {"make", {"makes", "made", "making"}},
      {"mean", {"means", "meant", "meaning"}},
      {"meet", {"meets", "met", "meeting"}},
      {"pay", {"pays", "paid", "paying"}},
      {"put", {"puts", "put", "putting"}},
      {"read", {"reads", "read", "reading"}},
      {"ride", {"rides", "rode", "ridden", "riding"}},
      {"rise", {"rises", "rose", "risen", "rising"}},
      {"run", {"runs", "ran", "running"}},
      {"say", {"says", "said", "saying"}},
      {"see", {"sees", "saw", "seen", "seeing"}},
      {"seek", {"seeks", "sought", "seeking"}},
      {"sell", {"sells", "sold", "selling"}},
      {"send", {"sends", "sent", "sending"}},
      {"set", {"sets", "set", "setting"}},
      {"shake", {"shakes", "shook", "shaken", "shaking"}},
      {"shoot", {"shoots", "shot", "shooting"}},
      {"sing", {"sings", "sang", "sung", "singing"}},
      {"sit", {"sits", "sat", "sitting"}},
      {"speak", {"speaks", "spoke", "spoken", "speaking"}},
      {"spend", {"spends", "spent", "spending"}},
      {"stand", {"stands", "stood", "standing"}},
      {"steal", {"steals", "stole", "stolen", "stealing"}},
      {"strike", {"strikes", "struck", "striking"}},
      {"swim", {"swims", "swam", "swum", "swimming"}},
      {"take", {"takes", "took", "taken", "taking"}},
      {"teach", {"teaches", "taught", "teaching"}},
      {"tell", {"tells", "told", "telling"}},
      {"think", {"thinks", "thought", "thinking"}},
      {"throw", {"throws", "threw", "thrown", "throwing"}},
      {"understand", {"understands", "understood", "understanding"}},
      {"wear", {"wears", "wore", "worn", "wearing"}},
      {"win", {"wins", "won", "winning"}},
      {"withdraw", {"withdraws", "withdrew", "withdrawn", "withdrawing"}},
      {"write", {"writes", "wrote", "written", "writing"}},
  };
  static const std::set<std::string, std::less<>> kDoubling = {
      "admit", "ban",  "beg",  "chat", "commit", "compel", "control", "drop",    "equip", "expel",
      "grab",  "hug",  "jog",  "occur", "patrol", "permit", "plan",   "prefer",  "propel", "refer",
      "regret", "rob", "ship", "shop", "skip",   "slip",   "stop",    "submit",  "tap",   "transfer",
      "trap",  "wrap"};

  const std::string lemma = Lowercase(lemma_in);
  std::vector<std::string> forms{lemma};
  if (auto it = kIrregular.find(lemma); it != kIrregular.end()) {
    forms.insert(forms.end(), it->second.begin(), it->second.end());
  } else if (!lemma.empty()) {
    auto is_vowel = [](char c) { return std::string_view("aeiou").find(c) != std::string_view::npos; };
    const char last = lemma.back();
    const bool consonant_y = last == 'y' && lemma.size() > 1 && !is_vowel(lemma[lemma.size() - 2]);

    if (consonant_y) {
      forms.push_back(lemma.substr(0, lemma.size() - 1) + "ies");
    } else if (lemma.ends_with("s") || lemma.ends_with("x") || lemma.ends_with("z") || lemma.ends_with("ch") ||
               lemma.ends_with("sh") || lemma.ends_with("o")) {
      forms.push_back(lemma + "es");
    } else {
      forms.push_back(lemma + "s");
    }

    if (kDoubling.contains(lemma)) {
      forms.push_back(lemma + last + "ed");
      forms.push_back(lemma + last + "ing");
    } else {
      if (last == 'e') {
        forms.push_back(lemma + "d");
      } else if (consonant_y) {
        forms.push_back(lemma.substr(0, lemma.size() - 1) + "ied");
      } else {
        forms.push_back(lemma + "ed");
      }
      if (lemma.ends_with("ie")) {
        forms.push_back(lemma.substr(0, lemma.size() - 2) + "ying");
      } else if (last == 'e' && !lemma.ends_with("ee") && lemma.size() > 2) {
        forms.push_back(lemma.substr(0, lemma.size() - 1) + "ing");
      } else {
        forms.push_back(lemma + "ing");
      }
    }
  }
  std::vector<std::string> unique;
  for (auto& f : forms) {
    if (std::find(unique.begin(), unique.end(), f) == unique.end()) unique.push_back(std::move(f));
  }
  return unique;
}

MiningResult FindCandidates(std::span<const CorpusSentence> corpus, std::span<const EntailmentInstance> pairs,
                            const MiningOptions& options) {
  if (options.mode == MatchMode::kLemmaInflected && options.inflector == nullptr) {
    throw ConfigError("lemma-mode mining needs an inflector");
  }
  std::vector<PairNeedles> needles;
  needles.reserve(pairs.size());
  for (const auto& pair : pairs) {
    if (options.mode == MatchMode::kVerbatim) {
      needles.push_back({{pair.prem.Text()}, {pair.hypo.Text()}});
    } else {
      needles.push_back({LemmaNeedles(pair.prem, *options.inflector, pair.id),
                         LemmaNeedles(pair.hypo, *options.inflector, pair.id)});
    }
  }

  const std::size_t threads = std::max<std::size_t>(1, std::min(options.threads, corpus.size()));
  std::vector<std::vector<Hit>> shard_hits(threads);
  std::vector<MiningStats> shard_stats(threads);
  std::vector<std::future<void>> jobs;
  const std::size_t per_shard = threads == 0 ? 0 : (corpus.size() + threads - 1) / threads;
  for (std::size_t t = 0; t < threads; ++t) {
    const std::size_t begin = std::min(corpus.size(), t * per_shard);
    const std::size_t end = std::min(corpus.size(), begin + per_shard);
    auto run = [&, t, begin, end] {
      ScanShard(corpus, begin, end, pairs, needles, options.mode, options.max_template_tokens, shard_hits[t],
                shard_stats[t]);
    };
    if (threads == 1) {
      run();
    } else {
      jobs.push_back(std::async(std::launch::async, run));
    }
  }
  for (auto& job : jobs) job.get();

  std::vector<Hit> hits;
  MiningResult result;
  for (std::size_t t = 0; t < threads; ++t) {
    hits.insert(hits.end(), std::make_move_iterator(shard_hits[t].begin()),
                std::make_move_iterator(shard_hits[t].end()));
    result.stats.sentences += shard_stats[t].sentences;
    result.stats.candidates += shard_stats[t].candidates;
    result.stats.skipped_overlap += shard_stats[t].skipped_overlap;
    result.stats.skipped_length += shard_stats[t].skipped_length;
    result.stats.skipped_slot_literal += shard_stats[t].skipped_slot_literal;
  }
  std::sort(hits.begin(), hits.end(), [&](const Hit& a, const Hit& b) {
    const auto& sa = corpus[a.sentence];
    const auto& sb = corpus[b.sentence];
    return std::tie(sa.doc_id, sa.sent_index, a.sentence, a.pair) <
           std::tie(sb.doc_id, sb.sent_index, b.sentence, b.pair);
  });
  result.candidates.reserve(hits.size());
  for (auto& hit : hits) result.candidates.push_back(std::move(hit.candidate));
  return result;
}

std::vector<ScoringPair> ScoringPairs(std::span<const EntailmentInstance> pairs) {
  std::vector<ScoringPair> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) {
    out.push_back({p.prem.Representative(p.source), p.hypo.Representative(p.source), p.label});
  }
  return out;
}

std::string MaskedQuery(const Pattern& pattern, Slot filled_slot, std::string_view filled,
                        std::string_view mask_token) {
  auto is_prem = [](Slot s) { return s == Slot::kPrem || s == Slot::kPremNeg; };
  auto is_hypo = [](Slot s) { return s == Slot::kHypo || s == Slot::kHypoNeg; };
  const bool fill_prem = is_prem(filled_slot);
  if (!fill_prem && !is_hypo(filled_slot)) throw ContractError("only verb slots can be filled for ranking");

  std::string out;
  for (const auto& piece : pattern.pieces()) {
    if (!piece.slot) {
      out += piece.literal;
      continue;
    }
    const Slot slot = *piece.slot;
    const bool negated = slot == Slot::kPremNeg || slot == Slot::kHypoNeg;
    if (is_prem(slot) || is_hypo(slot)) {
      const bool masked = is_prem(slot) != fill_prem;
      if (negated) out += "does not ";
      if (!masked) {
        out += filled;
        continue;
      }
      // Hyphen-attached: mask the whole hyphenated word.
      if (!negated && out.size() >= 2 && out.back() == '-' && IsWordChar(out[out.size() - 2])) {
        std::size_t start = out.size() - 1;
        while (start > 0 && (IsWordChar(out[start - 1]) || out[start - 1] == '-')) --start;
        out.erase(start);
      }
      out += mask_token;
    }
    // Argument slots stay empty.
  }
  return out;
}

std::vector<RankedPattern> RankCandidates(const LmBackend& backend, std::span<const CandidatePattern> candidates,
                                          std::span<const ScoringPair> scoring_pairs, std::size_t k,
                                          std::size_t threads) {
  if (k < 1) throw ContractError("k must be at least 1");
  std::vector<std::size_t> unique;
  std::set<std::pair<Polarity, std::string>> seen;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (seen.emplace(candidates[i].pattern.polarity(), candidates[i].pattern.template_text()).second) {
      unique.push_back(i);
    }
  }

  const std::string mask(backend.mask_token());
  auto score = [&](const Pattern& pattern) {
    const int wanted_label = pattern.polarity() == Polarity::kPattern ? 1 : 0;
    const Slot prem_slot = pattern.HasSlot(Slot::kPrem) ? Slot::kPrem : Slot::kPremNeg;
    const Slot hypo_slot = pattern.HasSlot(Slot::kHypo) ? Slot::kHypo : Slot::kHypoNeg;
    long long points = 0;
    for (const auto& pair : scoring_pairs) {
      if (pair.label != wanted_label) continue;
      if (InTopK(backend, MaskedQuery(pattern, prem_slot, pair.prem_repr, mask), pair.hypo_repr, k)) ++points;
      if (InTopK(backend, MaskedQuery(pattern, hypo_slot, pair.hypo_repr, mask), pair.prem_repr, k)) ++points;
    }
    return points;
  };

  std::vector<long long> points(unique.size(), 0);
  const std::size_t workers = std::max<std::size_t>(1, std::min(threads, unique.size()));
  if (workers == 1) {
    for (std::size_t i = 0; i < unique.size(); ++i) points[i] = score(candidates[unique[i]].pattern);
  } else {
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < workers; ++w) {
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t i = w; i < unique.size(); i += workers) points[i] = score(candidates[unique[i]].pattern);
      }));
    }
    for (auto& job : jobs) job.get();
  }

  std::vector<RankedPattern> ranked;
  ranked.reserve(unique.size());
  for (std::size_t i = 0; i < unique.size(); ++i) ranked.push_back({candidates[unique[i]], points[i], k});
  std::stable_sort(ranked.begin(), ranked.end(), [](const RankedPattern& a, const RankedPattern& b) {
    if (a.points != b.points) return a.points > b.points;
    const auto& sa = a.candidate.source_sentence;
    const auto& sb = b.candidate.source_sentence;
    return std::tie(sa.doc_id, sa.sent_index) < std::tie(sb.doc_id, sb.sent_index);
  });
  return ranked;
}

std::vector<PatternRecord> ToRecords(std::span<const RankedPattern> ranked) {
  std::vector<PatternRecord> out;
  out.reserve(ranked.size());
  for (const auto& r : ranked) out.push_back({r.candidate.pattern, r.points, 0});
  return out;
}

void SaveRanked(const std::filesystem::path& path, std::span<const RankedPattern> ranked) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write ranked patterns to '" + path.string() + "'");
  out << "# polarity\torigin\ttemplate\tpoints\n";
  for (const auto& r : ranked) out << FormatPatternRecord(r.candidate.pattern, r.points) << '\n';
}

Selection SelectTopN(std::span<const PatternRecord> ranked, std::size_t n, ScoringMode mode) {
  if (n < 1) throw ContractError("select_top_n needs n >= 1");
  Selection sel;
  sel.patterns.mode = mode;
  for (const auto& r : ranked) {
    auto& dst = r.pattern.polarity() == Polarity::kPattern ? sel.patterns.patterns : sel.patterns.antipatterns;
    if (dst.size() < n) dst.push_back(r.pattern);
  }
  if (mode == ScoringMode::kPhiOnly) sel.patterns.antipatterns.clear();
  sel.short_pool = sel.patterns.patterns.size() < n ||
                   (mode == ScoringMode::kPhiPsi && sel.patterns.antipatterns.size() < n);
  return sel;
}

PatternSet ReadCurated(std::istream& in, ScoringMode mode) {
  const auto records = ReadPatternRecords(in);
  for (const auto& r : records) {
    const Origin origin = r.pattern.origin();
    if (origin != Origin::kAutoCurated && origin != Origin::kAutoArg) {
      throw ParseError("curated pattern files accept origins auto_curated and auto_arg only", r.line);
    }
    if (origin == Origin::kAutoArg && !r.pattern.HasArgumentSlots()) {
      throw ParseError("auto_arg pattern without argument slots", r.line);
    }
  }
  return ToPatternSet(records, mode);
}

PatternSet LoadCurated(const std::filesystem::path& path, ScoringMode mode) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open curated pattern file '" + path.string() + "'");
  return ReadCurated(in, mode);
}

}  // namespace liic
