#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace microstyle {

// Style name -> score in [0, 1].
using StyleScores = std::map<std::string, double>;

struct SentenceRecord {
  std::string id;
  std::string text;
  StyleScores scores;

  bool operator==(const SentenceRecord &) const = default;
};

// An anchor sentence with its paraphrase candidates in beam order.
struct PairRecord {
  std::string anchor_id;
  std::vector<std::string> candidate_ids;
  std::optional<std::string> selected_id;

  bool operator==(const PairRecord &) const = default;
};

}  // namespace microstyle
