#include "microstyle/emitter.h"

#include "microstyle/error.h"
#include "microstyle/jsonl.h"

namespace microstyle {

namespace {

void CheckCovers(const BucketVector &buckets, const StyleSpaceConfig &config,
                 std::string_view role) {
  bool ok = buckets.entries.size() == config.size();
  for (std::size_t i = 0; ok && i < config.size(); ++i) {
    ok = buckets.entries[i].first == config.styles()[i].name;
  }
  if (!ok) {
    throw Error(ErrorKind::kStyleMismatch,
                std::string(role) + " buckets do not match the configured styles");
  }
}

bool StartsWith(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

// Parses "{role} {style}: {token}" for the expected role and style.
Bucket ParseSegment(std::string_view segment, std::string_view role, const std::string &style) {
  std::string head = std::string(role) + " " + style + ": ";
  if (!StartsWith(segment, head)) {
    throw Error(ErrorKind::kMalformedPrompt,
                "expected '" + head + "...', got '" + std::string(segment) + "'");
  }
  try {
    return ParseBucketToken(segment.substr(head.size()));
  } catch (const Error &) {
    throw Error(ErrorKind::kMalformedPrompt, "bad bucket in '" + std::string(segment) + "'");
  }
}

}  // namespace

std::string RenderPrompt(std::string_view text, const BucketVector &input_buckets,
                         const BucketVector &output_buckets, const StyleSpaceConfig &config) {
  CheckCovers(input_buckets, config, "input");
  CheckCovers(output_buckets, config, "output");
  if (text.find(kPromptSeparator) != std::string_view::npos) {
    throw Error(ErrorKind::kSeparatorInText, std::string(text));
  }
  std::string prompt(kPromptPrefix);
  prompt += text;
  for (const auto &[style, bucket] : input_buckets.entries) {
    prompt += kPromptSeparator;
    prompt += "input " + style + ": ";
    prompt += BucketToken(bucket);
  }
  for (const auto &[style, bucket] : output_buckets.entries) {
    prompt += kPromptSeparator;
    prompt += "output " + style + ": ";
    prompt += BucketToken(bucket);
  }
  return prompt;
}

ParsedPrompt ParsePrompt(std::string_view prompt, const StyleSpaceConfig &config) {
  if (!StartsWith(prompt, kPromptPrefix)) {
    throw Error(ErrorKind::kMalformedPrompt, "missing 'transfer: ' prefix");
  }
  std::string_view rest = prompt.substr(kPromptPrefix.size());

  const std::size_t n = config.size();
  std::vector<std::string_view> segments(2 * n);
  for (std::size_t k = 2 * n; k-- > 0;) {
    auto cut = rest.rfind(kPromptSeparator);
    if (cut == std::string_view::npos) {
      throw Error(ErrorKind::kMalformedPrompt, "too few style segments");
    }
    segments[k] = rest.substr(cut + kPromptSeparator.size());
    rest = rest.substr(0, cut);
  }

  ParsedPrompt parsed;
  parsed.text = std::string(rest);
  for (std::size_t i = 0; i < n; ++i) {
    const auto &style = config.styles()[i].name;
    parsed.input_buckets.entries.emplace_back(style, ParseSegment(segments[i], "input", style));
    parsed.output_buckets.entries.emplace_back(style,
                                               ParseSegment(segments[n + i], "output", style));
  }
  return parsed;
}

std::vector<TrainingExample> EmitDataset(const std::vector<PairRecord> &pairs,
                                         const RecordIndex &records,
                                         const StyleSpaceConfig &config) {
  std::vector<TrainingExample> out;
  out.reserve(pairs.size());
  for (const auto &pair : pairs) {
    if (!pair.selected_id) throw Error(ErrorKind::kUnselectedPair, pair.anchor_id);
    const auto &anchor = LookUp(records, pair.anchor_id);
    const auto &paraphrase = LookUp(records, *pair.selected_id);
    TrainingExample ex;
    ex.anchor_id = anchor.id;
    ex.paraphrase_id = paraphrase.id;
    ex.input_buckets = MakeBucketVector(paraphrase, config);
    ex.output_buckets = MakeBucketVector(anchor, config);
    ex.input = RenderPrompt(paraphrase.text, ex.input_buckets, ex.output_buckets, config);
    ex.target = anchor.text;
    out.push_back(std::move(ex));
  }
  return out;
}

void WriteTrainingFile(const std::filesystem::path &path,
                       const std::vector<TrainingExample> &examples) {
  std::vector<OrderedJson> rows;
  rows.reserve(examples.size());
  for (const auto &ex : examples) {
    OrderedJson row;
    row["input"] = ex.input;
    row["target"] = ex.target;
    row["anchor_id"] = ex.anchor_id;
    row["paraphrase_id"] = ex.paraphrase_id;
    rows.push_back(std::move(row));
  }
  WriteJsonLines(path, rows);
}

std::size_t ValidateTrainingFile(const std::filesystem::path &path,
                                 const StyleSpaceConfig &config) {
  std::size_t count = 0;
  ForEachJsonLine(path, [&](std::size_t line, const Json &obj) {
    const auto input = RequireString(obj, "input", line);
    const auto target = RequireString(obj, "target", line);
    RequireString(obj, "anchor_id", line);
    RequireString(obj, "paraphrase_id", line);
    if (target.find_first_not_of(" \t\r\n") == std::string::npos) {
      throw Error(ErrorKind::kEmptyText, "line " + std::to_string(line) + ": empty target");
    }
    try {
      ParsePrompt(input, config);
    } catch (const Error &e) {
      throw Error(ErrorKind::kMalformedPrompt, "line " + std::to_string(line) + ": " + e.detail());
    }
    ++count;
  });
  return count;
}

}  // namespace microstyle
