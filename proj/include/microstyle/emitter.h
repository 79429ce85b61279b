#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "microstyle/corpus.h"
#include "microstyle/record.h"
#include "microstyle/style_space.h"

namespace microstyle {

inline constexpr std::string_view kPromptPrefix = "transfer: ";
inline constexpr std::string_view kPromptSeparator = " | ";

struct TrainingExample {
  std::string input;   // full prompt
  std::string target;  // anchor text
  std::string anchor_id;
  std::string paraphrase_id;
  BucketVector input_buckets;   // paraphrase buckets
  BucketVector output_buckets;  // anchor buckets
};

// "transfer: {text} | input {style}: {token} ... | output {style}: {token} ..."
// with input segments for every configured style before any output segment.
// Throws StyleMismatch when a bucket vector does not list exactly the
// configured styles in order, SeparatorInText when `text` contains " | ".
std::string RenderPrompt(std::string_view text, const BucketVector &input_buckets,
                         const BucketVector &output_buckets, const StyleSpaceConfig &config);

struct ParsedPrompt {
  std::string text;
  BucketVector input_buckets;
  BucketVector output_buckets;
};

// Inverse of RenderPrompt. The 2n style segments are read from the right, so
// the text may itself end in " |". Throws MalformedPrompt.
ParsedPrompt ParsePrompt(std::string_view prompt, const StyleSpaceConfig &config);

// One example per pair: input is the selected paraphrase with its buckets,
// output buckets and target come from the anchor. Order preserved.
std::vector<TrainingExample> EmitDataset(const std::vector<PairRecord> &pairs,
                                         const RecordIndex &records,
                                         const StyleSpaceConfig &config);

// {"input", "target", "anchor_id", "paraphrase_id"} per line.
void WriteTrainingFile(const std::filesystem::path &path,
                       const std::vector<TrainingExample> &examples);

// Re-parses every line of a training file and its prompt. Returns the number
// of examples; throws MalformedLine / MalformedPrompt / EmptyText.
std::size_t ValidateTrainingFile(const std::filesystem::path &path,
                                 const StyleSpaceConfig &config);

}  // namespace microstyle
