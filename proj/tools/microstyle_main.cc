// microstyle: staged command-line front end for building micro-style transfer
// datasets and evaluating transferred output. Every stage reads and writes
// files only; each run leaves <out>.manifest.json next to its output.

#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "microstyle/corpus.h"
#include "microstyle/distribution.h"
#include "microstyle/emitter.h"
#include "microstyle/error.h"
#include "microstyle/eval.h"
#include "microstyle/jsonl.h"
#include "microstyle/pair_pipeline.h"
#include "microstyle/rng.h"
#include "microstyle/scoring.h"
#include "microstyle/style_space.h"

namespace fs = std::filesystem;
using namespace microstyle;

namespace {

struct Options {
  std::string config;
  std::string in;
  std::string out;
  std::string scores;
  std::string pairs;
  std::string plan;
  std::string counts;
  std::string corpus;
  std::string lexicon;
  std::string embeddings;
  std::string fluency;
  std::string metrics;
  std::string metrics_out;
  std::string mode = "balanced";
  std::string apply_to = "both";
  std::string reference_column;
  std::string corpus_name;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> total;
  double floor_share = kDefaultFloorShare;
  double max_perplexity = kDefaultMaxPerplexity;
  double min_adversarial = kDefaultMinAdversarial;
  bool allow_missing = false;
};

std::string Hex64(std::uint64_t v) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << v;
  return s.str();
}

std::string ConfigHash(const Options &o) {
  return o.config.empty() ? "none" : Hex64(Fnv1a64(ReadTextFile(o.config)));
}

StyleSpaceConfig LoadConfig(const Options &o) { return StyleSpaceConfig::Load(o.config); }

std::string CorpusName(const Options &o) {
  return o.corpus_name.empty() ? fs::path(o.in).stem().string() : o.corpus_name;
}

// Run manifest: stage, config hash and seed first, then stage-specific fields.
void WriteRunManifest(const Options &o, const std::string &stage, OrderedJson extra) {
  OrderedJson doc;
  doc["stage"] = stage;
  doc["config_hash"] = ConfigHash(o);
  doc["seed"] = o.seed.value_or(0);
  for (auto &[k, v] : extra.items()) doc[k] = v;
  WriteJsonFile(o.out + ".manifest.json", doc);
}

OrderedJson DatasetManifestFields(const DatasetManifest &m) { return ManifestToJson(m); }

std::string ReplaceExtension(const std::string &path, const std::string &ext) {
  return fs::path(path).replace_extension(ext).string();
}

std::vector<SentenceRecord> LoadScoredCorpus(const Options &o, const StyleSpaceConfig &config) {
  auto records = IngestSentences(o.in);
  if (!o.scores.empty()) {
    auto joined = AttachScores(records, o.scores, config.names());
    joined.RequireComplete();
    return joined.records;
  }
  return records;
}

// Anchor records of `pairs`, one per pair.
std::vector<SentenceRecord> AnchorsOf(const std::vector<PairRecord> &pairs,
                                      const RecordIndex &index) {
  std::vector<SentenceRecord> anchors;
  std::set<std::string> seen;
  for (const auto &p : pairs) {
    if (!seen.insert(p.anchor_id).second) throw Error(ErrorKind::kDuplicateId, p.anchor_id);
    anchors.push_back(LookUp(index, p.anchor_id));
  }
  return anchors;
}

// ---------------------------------------------------------------------------

int RunIngest(Options &o) {
  auto records = IngestSentences(o.in);
  WriteSentences(o.out, records);
  OrderedJson extra;
  extra["input"] = fs::path(o.in).filename().string();
  extra["record_count"] = records.size();
  WriteRunManifest(o, "ingest", extra);
  return 0;
}

int RunScore(Options &o) {
  const auto config = LoadConfig(o);
  auto records = IngestSentences(o.in);
  std::vector<std::pair<std::string, StyleScores>> rows;
  std::string scorer;
  if (!o.scores.empty()) {
    ScorerSpec spec{"external:" + fs::path(o.scores).filename().string(), config.names(),
                    ScorerKind::kExternalFile};
    auto external = LoadExternalScores(spec, o.scores);
    auto joined = AttachScores(records, external, config.names());
    for (const auto &m : joined.missing) {
      std::cerr << "{\"warning\":\"MissingScore\",\"id\":" << Json(m.id).dump()
                << ",\"style\":" << Json(m.style).dump() << "}\n";
    }
    joined.RequireComplete();
    for (const auto &r : joined.records) rows.emplace_back(r.id, r.scores);
    scorer = spec.name;
  } else {
    const Lexicon lexicon = o.lexicon.empty() ? DefaultArousalLexicon() : LoadLexicon(o.lexicon);
    for (const auto &r : records) rows.emplace_back(r.id, ScoreHeuristic(r.text, config.names(), lexicon));
    scorer = "heuristic";
  }
  WriteScoreFile(o.out, rows);
  OrderedJson extra;
  extra["scorer"] = scorer;
  extra["record_count"] = rows.size();
  WriteRunManifest(o, "score", extra);
  return 0;
}

int RunBucket(Options &o) {
  const auto config = LoadConfig(o);
  auto records = IngestSentences(o.in);
  auto joined = AttachScores(records, o.scores, config.names());
  for (const auto &m : joined.missing) {
    std::cerr << "{\"warning\":\"MissingScore\",\"id\":" << Json(m.id).dump()
              << ",\"style\":" << Json(m.style).dump() << "}\n";
  }
  if (!o.allow_missing) joined.RequireComplete();
  const auto scored = joined.ScoredOnly();

  std::vector<OrderedJson> rows;
  for (const auto &r : scored) {
    OrderedJson row = SentenceToJson(r);
    OrderedJson buckets = OrderedJson::object();
    for (const auto &[style, b] : MakeBucketVector(r, config).entries) buckets[style] = BucketToken(b);
    row["buckets"] = std::move(buckets);
    row["combination"] = CombinationOf(r, config);
    rows.push_back(std::move(row));
  }
  WriteJsonLines(o.out, rows);

  auto extra = DatasetManifestFields(BuildManifest(CorpusName(o), scored, config, DatasetMode::kRaw,
                                                   o.seed.value_or(0)));
  extra["dropped_unscored"] = records.size() - scored.size();
  WriteRunManifest(o, "bucket", extra);
  return 0;
}

int RunPair(Options &o) {
  const auto config = LoadConfig(o);
  const auto records = LoadScoredCorpus(o, config);
  const auto index = IndexById(records);
  auto pairs = ReadPairs(o.pairs);
  ValidatePairs(pairs, index);
  std::vector<PairRecord> selected;
  selected.reserve(pairs.size());
  for (const auto &p : pairs) selected.push_back(SelectBestParaphrase(p, index, config));
  WritePairs(o.out, selected);
  OrderedJson extra;
  extra["pair_count"] = selected.size();
  WriteRunManifest(o, "pair", extra);
  return 0;
}

int RunFilter(Options &o) {
  const auto config = LoadConfig(o);
  const auto records = LoadScoredCorpus(o, config);
  const auto index = IndexById(records);
  auto pairs = ReadPairs(o.pairs);
  ValidatePairs(pairs, index);

  const std::size_t before = pairs.size();
  auto kept = DiversityFilter(pairs, index, config);
  const std::size_t after_diversity = kept.size();
  OrderedJson extra;
  extra["input_pairs"] = before;
  extra["after_diversity"] = after_diversity;
  if (!o.fluency.empty()) {
    const auto target = ParseFluencyTarget(o.apply_to);
    kept = FluencyFilterPairs(kept, index, ReadFluency(o.fluency), target,
                              {o.max_perplexity, o.min_adversarial});
    extra["fluency_applied_to"] = FluencyTargetName(target);
    extra["max_perplexity"] = o.max_perplexity;
    extra["min_adversarial"] = o.min_adversarial;
  } else {
    extra["fluency_applied_to"] = "none";
  }
  extra["output_pairs"] = kept.size();
  WritePairs(o.out, kept);
  WriteRunManifest(o, "filter", extra);
  return 0;
}

CombinationCounts CountsFromFile(const std::string &path, const StyleSpaceConfig &config) {
  Json doc = ReadJsonFile(path);
  const Json &counts = doc.contains("counts") ? doc["counts"] : doc;
  CombinationCounts out;
  for (auto &key : EnumerateCombinations(config)) out.emplace_back(key, 0);
  for (const auto &[key, n] : counts.items()) {
    if (!n.is_number_unsigned()) {
      throw Error(ErrorKind::kMalformedLine, path + ": count for '" + key + "' must be a non-negative integer");
    }
    out[CombinationIndex(key, config)].second = n.get<std::uint64_t>();
  }
  return out;
}

int RunPlan(Options &o) {
  const auto config = LoadConfig(o);
  CombinationCounts source;
  if (!o.counts.empty()) {
    source = CountsFromFile(o.counts, config);
  } else {
    const auto records = LoadScoredCorpus(o, config);
    if (!o.pairs.empty()) {
      const auto index = IndexById(records);
      source = Tally(AnchorsOf(ReadPairs(o.pairs), index), config);
    } else {
      source = Tally(records, config);
    }
  }
  const auto mode = ParseDatasetMode(o.mode);
  const std::uint64_t seed = o.seed.value_or(0);
  DistributionPlan plan;
  if (mode == DatasetMode::kBalanced) {
    plan = PlanBalanced(source, o.floor_share, seed);
  } else if (mode == DatasetMode::kSkewed) {
    const std::uint64_t total =
        o.total.value_or(PlanBalanced(source, o.floor_share, seed).total_target());
    plan = PlanSkewed(source, total, seed, o.floor_share);
  } else {
    throw Error(ErrorKind::kInvalidConfig, "plan mode must be balanced or skewed");
  }
  for (const auto &w : DuplicationWarnings(plan)) {
    std::cerr << "{\"warning\":\"HighDuplication\",\"detail\":" << Json(w).dump() << "}\n";
  }
  WritePlan(o.out, plan);
  OrderedJson extra;
  extra["mode"] = DatasetModeName(plan.mode);
  extra["floor_share"] = plan.floor_share;
  extra["total_target"] = plan.total_target();
  extra["source_std_dev"] = StdDevReport(plan.source_counts);
  extra["target_std_dev"] = StdDevReport(plan.target_counts);
  WriteRunManifest(o, "plan", extra);
  return 0;
}

int RunSample(Options &o) {
  const auto config = LoadConfig(o);
  auto plan = ReadPlan(o.plan);
  if (o.seed) plan.seed = *o.seed;
  o.seed = plan.seed;
  const auto records = LoadScoredCorpus(o, config);
  for (const auto &w : DuplicationWarnings(plan)) {
    std::cerr << "{\"warning\":\"HighDuplication\",\"detail\":" << Json(w).dump() << "}\n";
  }

  std::vector<SentenceRecord> sampled;
  if (!o.pairs.empty()) {
    const auto index = IndexById(records);
    const auto pairs = ReadPairs(o.pairs);
    ValidatePairs(pairs, index);
    std::map<std::string, const PairRecord *> by_anchor;
    for (const auto &p : pairs) by_anchor[p.anchor_id] = &p;
    sampled = Materialize(plan, AnchorsOf(pairs, index), config);
    std::vector<PairRecord> out;
    out.reserve(sampled.size());
    for (const auto &anchor : sampled) out.push_back(*by_anchor.at(anchor.id));
    WritePairs(o.out, out);
  } else {
    sampled = Materialize(plan, records, config);
    WriteSentences(o.out, sampled);
  }
  auto extra =
      DatasetManifestFields(BuildManifest(CorpusName(o), sampled, config, plan.mode, plan.seed));
  extra["plan"] = fs::path(o.plan).filename().string();
  WriteRunManifest(o, "sample", extra);
  return 0;
}

int RunEmit(Options &o) {
  const auto config = LoadConfig(o);
  const auto records = LoadScoredCorpus(o, config);
  const auto index = IndexById(records);
  const auto pairs = ReadPairs(o.pairs);
  ValidatePairs(pairs, index);
  const auto examples = EmitDataset(pairs, index, config);
  WriteTrainingFile(o.out, examples);
  const std::size_t validated = ValidateTrainingFile(o.out, config);

  std::vector<SentenceRecord> anchors;
  for (const auto &ex : examples) anchors.push_back(LookUp(index, ex.anchor_id));
  auto extra = DatasetManifestFields(
      BuildManifest(CorpusName(o), anchors, config, DatasetMode::kRaw, o.seed.value_or(0)));
  extra["examples"] = validated;
  WriteRunManifest(o, "emit", extra);
  return 0;
}

// Measured scores: the record's own "scores", else the --scores file, else
// heuristic re-scoring of the transferred text.
void FillMeasuredScores(std::vector<TransferredRecord> &records, const Options &o,
                        const StyleSpaceConfig &config) {
  std::optional<std::map<std::string, StyleScores>> file;
  if (!o.scores.empty()) file = ReadScoreFile(o.scores);
  const Lexicon lexicon = o.lexicon.empty() ? DefaultArousalLexicon() : LoadLexicon(o.lexicon);
  for (auto &rec : records) {
    if (rec.measured_scores) continue;
    if (file) {
      auto it = file->find(rec.id);
      if (it == file->end()) throw Error(ErrorKind::kMissingScore, rec.id);
      rec.measured_scores = it->second;
    } else {
      rec.measured_scores = ScoreHeuristic(rec.text, config.names(), lexicon);
    }
  }
}

void WriteReports(const Options &o, const OrderedJson &doc, const std::string &csv) {
  WriteJsonFile(o.out, doc);
  WriteTextFile(ReplaceExtension(o.out, ".csv"), csv);
}

int RunEval(Options &o) {
  const auto config = LoadConfig(o);
  EvalInputs inputs;
  inputs.records = ReadTransferred(o.in, config);
  FillMeasuredScores(inputs.records, o, config);
  inputs.reference_column = ParseReferenceColumn(o.reference_column);
  if (!o.corpus.empty()) {
    for (const auto &r : IngestSentences(o.corpus)) inputs.source_texts.emplace(r.id, r.text);
  } else if (inputs.reference_column == ReferenceColumn::kSource) {
    throw Error(ErrorKind::kInvalidConfig, "--reference-column source needs --corpus");
  }
  if (!o.embeddings.empty()) inputs.embeddings = ReadEmbeddings(o.embeddings);
  if (!o.fluency.empty()) inputs.fluency = ReadFluency(o.fluency);

  const auto report = Evaluate(inputs, config);
  WriteReports(o, EvalReportToJson(report), EvalReportToCsv(report));
  if (!o.metrics_out.empty()) WriteMetrics(o.metrics_out, report.per_record);
  OrderedJson extra;
  extra["record_count"] = report.record_count;
  extra["reference_column"] = report.reference_column;
  WriteRunManifest(o, "eval", extra);
  return 0;
}

int RunReport(Options &o) {
  const auto config = LoadConfig(o);
  auto records = ReadTransferred(o.in, config);
  FillMeasuredScores(records, o, config);
  const auto representation = RepresentationReport(records, config);

  OrderedJson doc;
  doc["record_count"] = records.size();
  OrderedJson rep = OrderedJson::object();
  for (const auto &[key, pct] : representation) rep[key] = pct;
  doc["representation_percent"] = std::move(rep);

  std::ostringstream csv;
  csv.precision(17);
  csv << "combination,metric,value,count\n";
  for (const auto &[key, pct] : representation) {
    csv << key << ",representation_percent," << pct << ',' << records.size() << '\n';
  }
  if (!o.metrics.empty()) {
    const auto agg = AggregateByCombination(records, ReadMetrics(o.metrics), config);
    OrderedJson rows = OrderedJson::array();
    for (const auto &row : agg.rows) {
      OrderedJson entry;
      entry["combination"] = row.key;
      entry["count"] = row.count;
      OrderedJson metrics = OrderedJson::object();
      for (auto name : kMetricNames) {
        if (auto v = MetricByName(row.means, name)) {
          metrics[std::string(name)] = *v;
          csv << row.key << ',' << name << ',' << *v << ',' << row.count << '\n';
        }
      }
      entry["metrics"] = std::move(metrics);
      rows.push_back(std::move(entry));
    }
    doc["per_combination"] = std::move(rows);
    doc["notices"] = agg.notices;
    for (const auto &n : agg.notices) std::cerr << "{\"notice\":" << Json(n).dump() << "}\n";
  }
  WriteReports(o, doc, csv.str());
  OrderedJson extra;
  extra["record_count"] = records.size();
  WriteRunManifest(o, "report", extra);
  return 0;
}

void PrintError(std::string_view name, const std::string &detail) {
  std::cerr << "{\"error\":" << Json(std::string(name)).dump() << ",\"detail\":" << Json(detail).dump()
            << "}\n";
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"microstyle: micro-style transfer dataset construction and evaluation"};
  app.require_subcommand(1);
  Options o;

  auto existing = CLI::ExistingFile;
  auto add_config = [&](CLI::App *cmd) {
    cmd->add_option("--config", o.config, "Style-space configuration (JSON)")->required()->check(existing);
  };
  auto add_io = [&](CLI::App *cmd, const char *in_help) {
    cmd->add_option("--in", o.in, in_help)->required()->check(existing);
    cmd->add_option("--out", o.out, "Output path")->required();
  };
  auto add_seed = [&](CLI::App *cmd) { cmd->add_option("--seed", o.seed, "64-bit sampling seed"); };
  auto add_name = [&](CLI::App *cmd) {
    cmd->add_option("--corpus-name", o.corpus_name, "Name recorded in manifests");
  };

  auto *ingest = app.add_subcommand("ingest", "Validate a sentences file");
  add_io(ingest, "Sentences file (JSONL: id, text)");
  add_seed(ingest);

  auto *score = app.add_subcommand("score", "Score sentences per micro-style");
  add_config(score);
  add_io(score, "Sentences file");
  score->add_option("--scores", o.scores, "External score file to validate instead of heuristics")
      ->check(existing);
  score->add_option("--lexicon", o.lexicon, "Arousal lexicon (one word per line)")->check(existing);
  add_seed(score);

  auto *bucket = app.add_subcommand("bucket", "Join scores and assign buckets/combinations");
  add_config(bucket);
  add_io(bucket, "Sentences file");
  bucket->add_option("--scores", o.scores, "Score file")->required()->check(existing);
  bucket->add_flag("--allow-missing", o.allow_missing, "Drop (and report) unscored sentences");
  add_seed(bucket);
  add_name(bucket);

  auto *pair = app.add_subcommand("pair", "Select the most style-diverse paraphrase per anchor");
  add_config(pair);
  add_io(pair, "Scored sentences file");
  pair->add_option("--pairs", o.pairs, "Pairs file (anchor_id, candidate_ids)")->required()->check(existing);
  pair->add_option("--scores", o.scores, "Score file, if --in is unscored")->check(existing);
  add_seed(pair);

  auto *filter = app.add_subcommand("filter", "Apply the diversity and fluency filters to pairs");
  add_config(filter);
  add_io(filter, "Scored sentences file");
  filter->add_option("--pairs", o.pairs, "Selected pairs file")->required()->check(existing);
  filter->add_option("--scores", o.scores, "Score file, if --in is unscored")->check(existing);
  filter->add_option("--fluency", o.fluency, "Fluency file (id, perplexity, adversarial)")->check(existing);
  filter->add_option("--max-perplexity", o.max_perplexity, "Keep perplexity < this")->capture_default_str();
  filter->add_option("--min-adversarial", o.min_adversarial, "Keep adversarial > this")->capture_default_str();
  filter->add_option("--apply-to", o.apply_to, "anchors | paraphrases | both")
      ->check(CLI::IsMember({"anchors", "paraphrases", "both"}))
      ->capture_default_str();
  add_seed(filter);

  auto *plan = app.add_subcommand("plan", "Plan a balanced or skewed distribution");
  add_config(plan);
  plan->add_option("--in", o.in, "Scored sentences file")->check(existing);
  plan->add_option("--counts", o.counts, "Per-combination counts (JSON) instead of --in")->check(existing);
  plan->add_option("--pairs", o.pairs, "Tally the anchors of these pairs")->check(existing);
  plan->add_option("--scores", o.scores, "Score file, if --in is unscored")->check(existing);
  plan->add_option("--out", o.out, "Plan file")->required();
  plan->add_option("--mode", o.mode, "balanced | skewed")
      ->check(CLI::IsMember({"balanced", "skewed"}))
      ->capture_default_str();
  plan->add_option("--floor", o.floor_share, "Minimum share per combination")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  plan->add_option("--total", o.total, "Skewed total (default: balanced total)");
  add_seed(plan);

  auto *sample = app.add_subcommand("sample", "Materialize a plan");
  add_config(sample);
  add_io(sample, "Scored sentences file");
  sample->add_option("--plan", o.plan, "Plan file")->required()->check(existing);
  sample->add_option("--pairs", o.pairs, "Sample these pairs by anchor")->check(existing);
  sample->add_option("--scores", o.scores, "Score file, if --in is unscored")->check(existing);
  add_seed(sample);
  add_name(sample);

  auto *emit = app.add_subcommand("emit", "Write the pseudo-parallel training file");
  add_config(emit);
  add_io(emit, "Scored sentences file");
  emit->add_option("--pairs", o.pairs, "Selected pairs")->required()->check(existing);
  emit->add_option("--scores", o.scores, "Score file, if --in is unscored")->check(existing);
  add_seed(emit);
  add_name(emit);

  auto *eval = app.add_subcommand("eval", "Evaluate transferred sentences");
  add_config(eval);
  add_io(eval, "Transferred file (id, source_id, text, intended)");
  eval->add_option("--reference-column", o.reference_column, "source | reference")
      ->required()
      ->check(CLI::IsMember({"source", "reference"}));
  eval->add_option("--corpus", o.corpus, "Sentences file holding the source texts")->check(existing);
  eval->add_option("--scores", o.scores, "Measured score file")->check(existing);
  eval->add_option("--lexicon", o.lexicon, "Arousal lexicon for heuristic re-scoring")->check(existing);
  eval->add_option("--embeddings", o.embeddings, "Sentence and token embeddings")->check(existing);
  eval->add_option("--fluency", o.fluency, "Fluency file for transferred ids")->check(existing);
  eval->add_option("--metrics-out", o.metrics_out, "Write per-record metric tuples here");
  add_seed(eval);

  auto *report = app.add_subcommand("report", "Representation and per-combination report");
  add_config(report);
  add_io(report, "Transferred file");
  report->add_option("--metrics", o.metrics, "Per-record metrics (from eval --metrics-out)")->check(existing);
  report->add_option("--scores", o.scores, "Measured score file")->check(existing);
  report->add_option("--lexicon", o.lexicon, "Arousal lexicon for heuristic re-scoring")->check(existing);
  add_seed(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }
  if (plan->parsed() && o.in.empty() == o.counts.empty()) {
    PrintError("UsageError", "plan needs exactly one of --in or --counts");
    return 2;
  }

  try {
    if (ingest->parsed()) return RunIngest(o);
    if (score->parsed()) return RunScore(o);
    if (bucket->parsed()) return RunBucket(o);
    if (pair->parsed()) return RunPair(o);
    if (filter->parsed()) return RunFilter(o);
    if (plan->parsed()) return RunPlan(o);
    if (sample->parsed()) return RunSample(o);
    if (emit->parsed()) return RunEmit(o);
    if (eval->parsed()) return RunEval(o);
    if (report->parsed()) return RunReport(o);
  } catch (const Error &e) {
    PrintError(ErrorName(e.kind()), e.detail());
    return 1;
  } catch (const std::exception &e) {
    PrintError("InternalError", e.what());
    return 1;
  }
  return 2;
}
