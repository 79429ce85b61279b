#include "microstyle/scoring.h"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "microstyle/corpus.h"
#include "microstyle/error.h"

namespace microstyle {

namespace {

bool IsAsciiAlpha(unsigned char c) { return std::isalpha(c) != 0; }

bool IsBlank(std::string_view text) {
  return std::all_of(text.begin(), text.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

// U+2019 RIGHT SINGLE QUOTATION MARK.
constexpr std::string_view kCurlyApostrophe = "\xE2\x80\x99";

std::size_t CountChar(std::string_view text, char c) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), c));
}

// Letters on both sides of an apostrophe at [pos, pos + width).
bool BetweenLetters(std::string_view text, std::size_t pos, std::size_t width) {
  return pos > 0 && pos + width < text.size() &&
         IsAsciiAlpha(static_cast<unsigned char>(text[pos - 1])) &&
         IsAsciiAlpha(static_cast<unsigned char>(text[pos + width]));
}

std::size_t CountContractions(std::string_view text) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\'' && BetweenLetters(text, i, 1)) {
      ++count;
    } else if (text.substr(i, kCurlyApostrophe.size()) == kCurlyApostrophe) {
      if (BetweenLetters(text, i, kCurlyApostrophe.size())) ++count;
      i += kCurlyApostrophe.size() - 1;
    }
  }
  return count;
}

// Formulas are evaluated in integer tenths so 0.8 - 0.2 - 0.1 is exactly 0.5.
double ClampTenths(long tenths) { return static_cast<double>(std::clamp(tenths, 0L, 10L)) / 10.0; }

}  // namespace

double ScoreFormalityHeuristic(std::string_view text) {
  if (IsBlank(text)) throw Error(ErrorKind::kEmptyText, "formality heuristic");
  const auto contractions = static_cast<long>(CountContractions(text));
  const auto exclamations = static_cast<long>(CountChar(text, '!'));
  return ClampTenths(8 - 2 * contractions - exclamations);
}

double ScoreArousalHeuristic(std::string_view text, const Lexicon &lexicon) {
  if (IsBlank(text)) throw Error(ErrorKind::kEmptyText, "arousal heuristic");
  const auto exclamations = static_cast<long>(CountChar(text, '!'));
  const auto questions = static_cast<long>(CountChar(text, '?'));
  long hits = 0;
  for (const auto &token : WordTokens(text)) hits += lexicon.count(token) ? 1 : 0;
  return ClampTenths(2 + 2 * exclamations + questions + hits);
}

std::vector<std::string> WordTokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    while (!current.empty() && current.back() == '\'') current.pop_back();
    if (!current.empty()) tokens.push_back(current);
    current.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (std::isalnum(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else if (c == '\'' && !current.empty()) {
      current.push_back('\'');
    } else if (text.substr(i, kCurlyApostrophe.size()) == kCurlyApostrophe && !current.empty()) {
      current.push_back('\'');
      i += kCurlyApostrophe.size() - 1;
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

Lexicon LoadLexicon(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  Lexicon lexicon;
  std::string line;
  while (std::getline(in, line)) {
    auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    auto end = line.find_last_not_of(" \t\r");
    std::string word = line.substr(begin, end - begin + 1);
    std::transform(word.begin(), word.end(), word.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    lexicon.insert(std::move(word));
  }
  return lexicon;
}

const Lexicon &DefaultArousalLexicon() {
  static const Lexicon lexicon = {"amazing", "angry",   "awesome", "excited", "furious",
                                  "hate",    "love",    "scared",  "terrible", "thrilled",
                                  "wow",     "yay",     "omg",     "hell",    "damn"};
  return lexicon;
}

bool HasHeuristic(std::string_view style) { return style == "formality" || style == "arousal"; }

StyleScores ScoreHeuristic(std::string_view text, const std::vector<std::string> &styles,
                           const Lexicon &lexicon) {
  StyleScores out;
  for (const auto &style : styles) {
    if (style == "formality") {
      out[style] = ScoreFormalityHeuristic(text);
    } else if (style == "arousal") {
      out[style] = ScoreArousalHeuristic(text, lexicon);
    } else {
      throw Error(ErrorKind::kUnknownStyle, "no heuristic scorer for '" + style + "'");
    }
  }
  return out;
}

std::map<std::string, StyleScores> LoadExternalScores(const ScorerSpec &spec,
                                                      const std::filesystem::path &path) {
  if (spec.kind != ScorerKind::kExternalFile) {
    throw Error(ErrorKind::kInvalidConfig, "scorer '" + spec.name + "' is not file-backed");
  }
  auto scores = ReadScoreFile(path);
  for (const auto &[id, styles] : scores) {
    for (const auto &[style, value] : styles) {
      if (std::find(spec.styles_produced.begin(), spec.styles_produced.end(), style) ==
          spec.styles_produced.end()) {
        throw Error(ErrorKind::kUnknownStyle, id + ": '" + style + "' is not produced by " + spec.name);
      }
    }
  }
  return scores;
}

}  // namespace microstyle
