#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "microstyle/record.h"

namespace microstyle {

// Deterministic stand-ins for trained micro-style classifiers. Each is a pure
// function of the text with a published formula so downstream values can be
// checked by hand.

using Lexicon = std::set<std::string>;

// clamp01(0.8 - 0.2*C - 0.1*E); C = apostrophes between two letters
// (ASCII ' or U+2019), E = '!' count. Throws EmptyText on blank input.
double ScoreFormalityHeuristic(std::string_view text);

// clamp01(0.2 + 0.2*E + 0.1*Q + 0.1*L); E = '!' count, Q = '?' count,
// L = lowercased word tokens found in `lexicon`. Throws EmptyText.
double ScoreArousalHeuristic(std::string_view text, const Lexicon &lexicon);

// Lowercased runs of ASCII letters/digits, keeping word-internal apostrophes.
std::vector<std::string> WordTokens(std::string_view text);

// One lowercase word per line; blank lines ignored.
Lexicon LoadLexicon(const std::filesystem::path &path);

// A few high-arousal words used when no lexicon file is given.
const Lexicon &DefaultArousalLexicon();

enum class ScorerKind { kHeuristic, kExternalFile };

struct ScorerSpec {
  std::string name;
  std::vector<std::string> styles_produced;
  ScorerKind kind = ScorerKind::kHeuristic;
};

// Styles the built-in heuristics can score.
bool HasHeuristic(std::string_view style);

// Scores every requested style with the built-in heuristics. Throws
// UnknownStyle for a style without a heuristic.
StyleScores ScoreHeuristic(std::string_view text, const std::vector<std::string> &styles,
                           const Lexicon &lexicon);

// Reads a score file produced by an external scorer. Same validation as the
// corpus score join, plus UnknownStyle for styles the spec does not produce.
std::map<std::string, StyleScores> LoadExternalScores(const ScorerSpec &spec,
                                                      const std::filesystem::path &path);

}  // namespace microstyle
