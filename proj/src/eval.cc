#include "microstyle/eval.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "microstyle/error.h"

namespace microstyle {

// ---------------------------------------------------------------------------
// Tokenization and BLEU
// ---------------------------------------------------------------------------

Tokens Tokenize(std::string_view text) {
  Tokens out;
  std::istringstream in{std::string(text)};
  std::string word;
  while (in >> word) {
    std::transform(word.begin(), word.end(), word.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    std::vector<std::string> trailing;
    while (word.size() > 1 && std::ispunct(static_cast<unsigned char>(word.back()))) {
      trailing.emplace_back(1, word.back());
      word.pop_back();
    }
    out.push_back(word);
    out.insert(out.end(), trailing.rbegin(), trailing.rend());
  }
  return out;
}

namespace {

using NgramCounts = std::map<std::vector<std::string>, std::size_t>;

NgramCounts CountNgrams(const Tokens &tokens, std::size_t n) {
  NgramCounts counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    counts[Tokens(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                  tokens.begin() + static_cast<std::ptrdiff_t>(i + n))]++;
  }
  return counts;
}

struct NgramStats {
  std::vector<std::uint64_t> matches;
  std::vector<std::uint64_t> totals;
  std::uint64_t candidate_length = 0;
  std::uint64_t reference_length = 0;
};

void Accumulate(NgramStats &stats, const Tokens &candidate, const Tokens &reference, int max_n) {
  stats.candidate_length += candidate.size();
  stats.reference_length += reference.size();
  for (int n = 1; n <= max_n; ++n) {
    auto cand = CountNgrams(candidate, static_cast<std::size_t>(n));
    auto ref = CountNgrams(reference, static_cast<std::size_t>(n));
    for (const auto &[gram, count] : cand) {
      auto it = ref.find(gram);
      std::size_t clip = it == ref.end() ? 0 : it->second;
      stats.matches[n - 1] += std::min(count, clip);
      stats.totals[n - 1] += count;
    }
  }
}

double BrevityPenalty(std::uint64_t c, std::uint64_t r) {
  if (c == 0) return 0.0;
  if (c > r) return 1.0;
  return std::exp(1.0 - static_cast<double>(r) / static_cast<double>(c));
}

void CheckOrder(int max_n) {
  if (max_n < 1) throw Error(ErrorKind::kInvalidConfig, "BLEU order must be >= 1");
}

}  // namespace

double Bleu(const std::vector<Tokens> &candidates, const std::vector<Tokens> &references,
            int max_n) {
  CheckOrder(max_n);
  if (candidates.size() != references.size()) {
    throw Error(ErrorKind::kLengthMismatch, std::to_string(candidates.size()) + " candidates vs " +
                                                std::to_string(references.size()) + " references");
  }
  if (candidates.empty()) throw Error(ErrorKind::kEmptyCorpus, "no sentences");

  NgramStats stats{std::vector<std::uint64_t>(max_n), std::vector<std::uint64_t>(max_n)};
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    Accumulate(stats, candidates[i], references[i], max_n);
  }
  double log_sum = 0.0;
  for (int n = 0; n < max_n; ++n) {
    if (stats.matches[n] == 0) return 0.0;
    log_sum += std::log(static_cast<double>(stats.matches[n]) / static_cast<double>(stats.totals[n]));
  }
  return BrevityPenalty(stats.candidate_length, stats.reference_length) * std::exp(log_sum / max_n);
}

double SentenceBleu(const Tokens &candidate, const Tokens &reference, int max_n) {
  CheckOrder(max_n);
  NgramStats stats{std::vector<std::uint64_t>(max_n), std::vector<std::uint64_t>(max_n)};
  Accumulate(stats, candidate, reference, max_n);
  if (stats.matches[0] == 0) return 0.0;
  double log_sum = 0.0;
  for (int n = 0; n < max_n; ++n) {
    const double add = n == 0 ? 0.0 : 1.0;
    log_sum += std::log((static_cast<double>(stats.matches[n]) + add) /
                        (static_cast<double>(stats.totals[n]) + add));
  }
  return BrevityPenalty(stats.candidate_length, stats.reference_length) * std::exp(log_sum / max_n);
}

// ---------------------------------------------------------------------------
// Embedding metrics
// ---------------------------------------------------------------------------

double CosineSimilarity(const Embedding &a, const Embedding &b) {
  if (a.size() != b.size() || a.empty()) {
    throw Error(ErrorKind::kDimensionMismatch,
                std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  na = std::sqrt(na);
  nb = std::sqrt(nb);
  if (na <= 1e-12 || nb <= 1e-12) throw Error(ErrorKind::kZeroVector, "cosine of a zero vector");
  return std::clamp(dot / (na * nb), -1.0, 1.0);
}

namespace {

struct FlowEdge {
  std::size_t to;
  std::uint64_t capacity;
  double cost;
  std::size_t reverse;
};

class MinCostFlow {
 public:
  explicit MinCostFlow(std::size_t nodes) : graph_(nodes) {}

  void AddEdge(std::size_t from, std::size_t to, std::uint64_t capacity, double cost) {
    graph_[from].push_back({to, capacity, cost, graph_[to].size()});
    graph_[to].push_back({from, 0, -cost, graph_[from].size() - 1});
  }

  // Successive shortest paths with Bellman-Ford (residual costs may be
  // negative). Returns total cost of the flow pushed.
  double Run(std::size_t source, std::size_t sink, std::uint64_t want) {
    const std::size_t n = graph_.size();
    double total_cost = 0.0;
    std::uint64_t flow = 0;
    while (flow < want) {
      std::vector<double> dist(n, std::numeric_limits<double>::infinity());
      std::vector<std::size_t> prev_node(n), prev_edge(n);
      dist[source] = 0.0;
      for (std::size_t round = 0; round + 1 < n; ++round) {
        bool relaxed = false;
        for (std::size_t u = 0; u < n; ++u) {
          if (dist[u] == std::numeric_limits<double>::infinity()) continue;
          for (std::size_t e = 0; e < graph_[u].size(); ++e) {
            const auto &edge = graph_[u][e];
            if (edge.capacity == 0) continue;
            if (dist[u] + edge.cost < dist[edge.to] - 1e-12) {
              dist[edge.to] = dist[u] + edge.cost;
              prev_node[edge.to] = u;
              prev_edge[edge.to] = e;
              relaxed = true;
            }
          }
        }
        if (!relaxed) break;
      }
      if (dist[sink] == std::numeric_limits<double>::infinity()) break;

      std::uint64_t push = want - flow;
      for (std::size_t v = sink; v != source; v = prev_node[v]) {
        push = std::min(push, graph_[prev_node[v]][prev_edge[v]].capacity);
      }
      for (std::size_t v = sink; v != source; v = prev_node[v]) {
        auto &edge = graph_[prev_node[v]][prev_edge[v]];
        edge.capacity -= push;
        graph_[v][edge.reverse].capacity += push;
        total_cost += static_cast<double>(push) * edge.cost;
      }
      flow += push;
    }
    return total_cost;
  }

 private:
  std::vector<std::vector<FlowEdge>> graph_;
};

}  // namespace

double TransportCost(const std::vector<std::uint64_t> &supply,
                     const std::vector<std::uint64_t> &demand,
                     const std::vector<std::vector<double>> &cost) {
  const std::uint64_t total = std::accumulate(supply.begin(), supply.end(), std::uint64_t{0});
  if (total != std::accumulate(demand.begin(), demand.end(), std::uint64_t{0})) {
    throw Error(ErrorKind::kLengthMismatch, "supply and demand totals differ");
  }
  const std::size_t m = supply.size(), n = demand.size();
  const std::size_t source = m + n, sink = m + n + 1;
  MinCostFlow flow(m + n + 2);
  for (std::size_t i = 0; i < m; ++i) flow.AddEdge(source, i, supply[i], 0.0);
  for (std::size_t j = 0; j < n; ++j) flow.AddEdge(m + j, sink, demand[j], 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) flow.AddEdge(i, m + j, total, cost[i][j]);
  }
  return flow.Run(source, sink, total);
}

namespace {

// Distinct tokens with counts, in first-occurrence order, dropping tokens
// that have no embedding.
std::vector<std::pair<std::string, std::uint64_t>> BagOfWords(const Tokens &tokens,
                                                              const EmbeddingTable &embeddings) {
  std::vector<std::pair<std::string, std::uint64_t>> bag;
  for (const auto &t : tokens) {
    if (!embeddings.count(t)) continue;
    auto it = std::find_if(bag.begin(), bag.end(), [&](const auto &kv) { return kv.first == t; });
    if (it == bag.end()) {
      bag.emplace_back(t, 1);
    } else {
      it->second += 1;
    }
  }
  return bag;
}

double Euclidean(const Embedding &a, const Embedding &b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::kDimensionMismatch,
                std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(sum);
}

}  // namespace

double Wmd(const Tokens &a, const Tokens &b, const EmbeddingTable &embeddings) {
  const auto bag_a = BagOfWords(a, embeddings);
  const auto bag_b = BagOfWords(b, embeddings);
  if (bag_a.empty() || bag_b.empty()) {
    throw Error(ErrorKind::kEmptyAfterFilter, "no embedded tokens on one side");
  }
  std::uint64_t len_a = 0, len_b = 0;
  for (const auto &kv : bag_a) len_a += kv.second;
  for (const auto &kv : bag_b) len_b += kv.second;

  // Scale both distributions to total mass len_a * len_b.
  std::vector<std::uint64_t> supply, demand;
  for (const auto &kv : bag_a) supply.push_back(kv.second * len_b);
  for (const auto &kv : bag_b) demand.push_back(kv.second * len_a);
  std::vector<std::vector<double>> cost(bag_a.size(), std::vector<double>(bag_b.size()));
  for (std::size_t i = 0; i < bag_a.size(); ++i) {
    for (std::size_t j = 0; j < bag_b.size(); ++j) {
      cost[i][j] = bag_a[i].first == bag_b[j].first
                       ? 0.0
                       : Euclidean(embeddings.at(bag_a[i].first), embeddings.at(bag_b[j].first));
    }
  }
  const double mass = static_cast<double>(len_a) * static_cast<double>(len_b);
  return std::max(0.0, TransportCost(supply, demand, cost) / mass);
}

EmbeddingTable ReadEmbeddings(const std::filesystem::path &path) {
  EmbeddingTable table;
  std::size_t dimension = 0;
  ForEachJsonLine(path, [&](std::size_t line, const Json &obj) {
    std::string key;
    for (const char *field : {"key", "id", "token"}) {
      if (obj.contains(field)) {
        key = RequireString(obj, field, line);
        break;
      }
    }
    if (key.empty()) {
      throw Error(ErrorKind::kMalformedLine, "line " + std::to_string(line) + ": missing key");
    }
    auto vec = obj.find("vector");
    if (vec == obj.end() || !vec->is_array() || vec->empty()) {
      throw Error(ErrorKind::kMalformedLine, "line " + std::to_string(line) + ": missing vector");
    }
    Embedding e;
    for (const auto &x : *vec) {
      if (!x.is_number()) {
        throw Error(ErrorKind::kMalformedLine, "line " + std::to_string(line) + ": non-numeric vector");
      }
      e.push_back(x.get<double>());
    }
    if (dimension == 0) dimension = e.size();
    if (e.size() != dimension) {
      throw Error(ErrorKind::kDimensionMismatch, "line " + std::to_string(line));
    }
    if (!table.emplace(key, std::move(e)).second) throw Error(ErrorKind::kDuplicateId, key);
  });
  return table;
}

// ---------------------------------------------------------------------------
// Transferred records and style success
// ---------------------------------------------------------------------------

std::vector<TransferredRecord> ReadTransferred(const std::filesystem::path &path,
                                               const StyleSpaceConfig &config) {
  std::vector<TransferredRecord> out;
  ForEachJsonLine(path, [&](std::size_t line, const Json &obj) {
    TransferredRecord rec;
    rec.id = RequireString(obj, "id", line);
    rec.source_id = RequireString(obj, "source_id", line);
    rec.text = RequireString(obj, "text", line);
    auto intended = obj.find("intended");
    if (intended == obj.end() || !intended->is_object()) {
      throw Error(ErrorKind::kMalformedLine,
                  "line " + std::to_string(line) + ": missing 'intended' object");
    }
    for (const auto &style : config.styles()) {
      auto it = intended->find(style.name);
      if (it == intended->end() || !it->is_string()) {
        throw Error(ErrorKind::kStyleMismatch, rec.id + ": no intended bucket for " + style.name);
      }
      rec.intended_buckets.entries.emplace_back(style.name,
                                                ParseBucketToken(it->get<std::string>()));
    }
    if (auto scores = obj.find("scores"); scores != obj.end()) {
      StyleScores measured;
      for (const auto &[style, v] : scores->items()) {
        if (!v.is_number() || !(v.get<double>() >= 0.0 && v.get<double>() <= 1.0)) {
          throw Error(ErrorKind::kScoreOutOfRange, rec.id + " " + style);
        }
        measured[style] = v.get<double>();
      }
      rec.measured_scores = std::move(measured);
    }
    if (obj.contains("reference")) rec.reference = RequireString(obj, "reference", line);
    out.push_back(std::move(rec));
  });
  return out;
}

namespace {

SentenceRecord MeasuredAsSentence(const TransferredRecord &rec) {
  if (!rec.measured_scores) throw Error(ErrorKind::kUnscoredRecord, rec.id);
  return SentenceRecord{rec.id, rec.text, *rec.measured_scores};
}

std::vector<std::pair<CombinationKey, double>> Percentages(const CombinationCounts &counts) {
  const double total = static_cast<double>(SumCounts(counts));
  std::vector<std::pair<CombinationKey, double>> out;
  for (const auto &[key, n] : counts) out.emplace_back(key, 100.0 * static_cast<double>(n) / total);
  return out;
}

}  // namespace

SuccessReport SuccessRatio(const std::vector<TransferredRecord> &records,
                           const StyleSpaceConfig &config) {
  if (records.empty()) throw Error(ErrorKind::kEmptyInput, "no transferred records");
  std::size_t full = 0;
  std::vector<std::size_t> per_style(config.size(), 0);
  for (const auto &rec : records) {
    const auto measured = MakeBucketVector(MeasuredAsSentence(rec), config);
    if (rec.intended_buckets.entries.size() != config.size()) {
      throw Error(ErrorKind::kStyleMismatch, rec.id + ": intended buckets do not cover the styles");
    }
    bool all = true;
    for (std::size_t i = 0; i < config.size(); ++i) {
      bool hit = measured.entries[i].second == rec.intended_buckets.entries[i].second;
      per_style[i] += hit ? 1 : 0;
      all = all && hit;
    }
    full += all ? 1 : 0;
  }
  const double n = static_cast<double>(records.size());
  SuccessReport report;
  report.s_c = static_cast<double>(full) / n;
  for (std::size_t i = 0; i < config.size(); ++i) {
    report.per_style_match.emplace_back(config.styles()[i].name,
                                        static_cast<double>(per_style[i]) / n);
  }
  return report;
}

std::optional<double> MetricByName(const MetricTuple &m, std::string_view name) {
  if (name == "perplexity") return m.perplexity;
  if (name == "adversarial") return m.adversarial;
  if (name == "bleu") return m.bleu;
  if (name == "cosine") return m.cosine;
  if (name == "wmd") return m.wmd;
  return std::nullopt;
}

namespace {

std::optional<double> *MetricSlot(MetricTuple &m, std::string_view name) {
  if (name == "perplexity") return &m.perplexity;
  if (name == "adversarial") return &m.adversarial;
  if (name == "bleu") return &m.bleu;
  if (name == "cosine") return &m.cosine;
  if (name == "wmd") return &m.wmd;
  return nullptr;
}

// Mean of each metric over the tuples that carry it.
MetricTuple MeanOf(const std::vector<const MetricTuple *> &tuples) {
  MetricTuple mean;
  for (auto name : kMetricNames) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto *t : tuples) {
      if (auto v = MetricByName(*t, name)) {
        sum += *v;
        ++count;
      }
    }
    if (count > 0) *MetricSlot(mean, name) = sum / static_cast<double>(count);
  }
  return mean;
}

}  // namespace

CombinationAggregate AggregateByCombination(const std::vector<TransferredRecord> &records,
                                            const std::map<std::string, MetricTuple> &metrics,
                                            const StyleSpaceConfig &config) {
  const auto keys = EnumerateCombinations(config);
  std::vector<std::vector<const MetricTuple *>> groups(keys.size());
  for (const auto &rec : records) {
    auto it = metrics.find(rec.id);
    if (it == metrics.end()) throw Error(ErrorKind::kMissingMetric, rec.id);
    groups[CombinationIndex(CombinationOfBuckets(rec.intended_buckets, config), config)]
        .push_back(&it->second);
  }
  CombinationAggregate out;
  for (std::size_t k = 0; k < keys.size(); ++k) {
    if (groups[k].empty()) {
      out.notices.push_back(keys[k] + ": no records, omitted");
      continue;
    }
    out.rows.push_back({keys[k], groups[k].size(), MeanOf(groups[k])});
  }
  return out;
}

std::vector<std::pair<CombinationKey, double>> RepresentationReport(
    const std::vector<TransferredRecord> &records, const StyleSpaceConfig &config) {
  if (records.empty()) throw Error(ErrorKind::kEmptyInput, "no transferred records");
  std::vector<SentenceRecord> measured;
  measured.reserve(records.size());
  for (const auto &rec : records) measured.push_back(MeasuredAsSentence(rec));
  return Percentages(Tally(measured, config));
}

std::vector<std::pair<CombinationKey, double>> RepresentationReport(
    const std::vector<SentenceRecord> &records, const StyleSpaceConfig &config) {
  if (records.empty()) throw Error(ErrorKind::kEmptyInput, "no records");
  return Percentages(Tally(records, config));
}

// ---------------------------------------------------------------------------
// Full evaluation
// ---------------------------------------------------------------------------

std::string_view ReferenceColumnName(ReferenceColumn column) {
  return column == ReferenceColumn::kSource ? "source" : "reference";
}

ReferenceColumn ParseReferenceColumn(std::string_view name) {
  if (name == "source") return ReferenceColumn::kSource;
  if (name == "reference") return ReferenceColumn::kReference;
  throw Error(ErrorKind::kInvalidConfig, "reference column must be 'source' or 'reference'");
}

namespace {

const Embedding &EmbeddingFor(const EmbeddingTable &table, const std::string &key) {
  auto it = table.find(key);
  if (it == table.end()) throw Error(ErrorKind::kMissingEmbedding, key);
  return it->second;
}

}  // namespace

EvalReport Evaluate(const EvalInputs &inputs, const StyleSpaceConfig &config) {
  const auto &records = inputs.records;
  EvalReport report;
  report.record_count = records.size();
  report.reference_column = std::string(ReferenceColumnName(inputs.reference_column));
  report.success = SuccessRatio(records, config);

  std::vector<Tokens> candidates, references;
  for (const auto &rec : records) {
    std::string reference_text;
    if (inputs.reference_column == ReferenceColumn::kReference) {
      if (!rec.reference) throw Error(ErrorKind::kMalformedLine, rec.id + ": no 'reference' field");
      reference_text = *rec.reference;
    } else {
      auto it = inputs.source_texts.find(rec.source_id);
      if (it == inputs.source_texts.end()) throw Error(ErrorKind::kUnknownId, rec.source_id);
      reference_text = it->second;
    }
    const Tokens cand = Tokenize(rec.text);
    const Tokens ref = Tokenize(reference_text);

    MetricTuple m;
    m.bleu = SentenceBleu(cand, ref);
    if (inputs.embeddings) {
      m.cosine = CosineSimilarity(EmbeddingFor(*inputs.embeddings, rec.id),
                                  EmbeddingFor(*inputs.embeddings, rec.source_id));
      m.wmd = Wmd(cand, ref, *inputs.embeddings);
    }
    if (inputs.fluency) {
      auto it = inputs.fluency->find(rec.id);
      if (it == inputs.fluency->end()) throw Error(ErrorKind::kMissingFluency, rec.id);
      m.perplexity = it->second.perplexity;
      m.adversarial = it->second.adversarial;
    }
    report.per_record.emplace(rec.id, m);
    candidates.push_back(cand);
    references.push_back(ref);
  }
  report.bleu = Bleu(candidates, references);

  std::vector<const MetricTuple *> all;
  for (const auto &kv : report.per_record) all.push_back(&kv.second);
  report.means = MeanOf(all);
  report.per_combination = AggregateByCombination(records, report.per_record, config);
  report.representation = RepresentationReport(records, config);
  return report;
}

namespace {

OrderedJson TupleToJson(const MetricTuple &m) {
  OrderedJson obj = OrderedJson::object();
  for (auto name : kMetricNames) {
    if (auto v = MetricByName(m, name)) obj[std::string(name)] = *v;
  }
  return obj;
}

}  // namespace

OrderedJson EvalReportToJson(const EvalReport &r) {
  OrderedJson doc;
  doc["record_count"] = r.record_count;
  doc["reference_column"] = r.reference_column;
  doc["s_c"] = r.success.s_c;
  OrderedJson per_style = OrderedJson::object();
  for (const auto &[style, rate] : r.success.per_style_match) per_style[style] = rate;
  doc["per_style_match"] = std::move(per_style);
  doc["bleu"] = r.bleu;
  doc["means"] = TupleToJson(r.means);
  OrderedJson combos = OrderedJson::array();
  for (const auto &row : r.per_combination.rows) {
    OrderedJson entry;
    entry["combination"] = row.key;
    entry["count"] = row.count;
    entry["metrics"] = TupleToJson(row.means);
    combos.push_back(std::move(entry));
  }
  doc["per_combination"] = std::move(combos);
  doc["notices"] = r.per_combination.notices;
  OrderedJson rep = OrderedJson::object();
  for (const auto &[key, pct] : r.representation) rep[key] = pct;
  doc["representation_percent"] = std::move(rep);
  return doc;
}

std::string EvalReportToCsv(const EvalReport &r) {
  std::ostringstream out;
  out.precision(17);
  out << "combination,metric,value,count\n";
  out << "all,s_c," << r.success.s_c << ',' << r.record_count << '\n';
  out << "all,bleu_corpus," << r.bleu << ',' << r.record_count << '\n';
  for (auto name : kMetricNames) {
    if (auto v = MetricByName(r.means, name)) {
      out << "all," << name << ',' << *v << ',' << r.record_count << '\n';
    }
  }
  for (const auto &row : r.per_combination.rows) {
    for (auto name : kMetricNames) {
      if (auto v = MetricByName(row.means, name)) {
        out << row.key << ',' << name << ',' << *v << ',' << row.count << '\n';
      }
    }
  }
  for (const auto &[key, pct] : r.representation) {
    out << key << ",representation_percent," << pct << ',' << r.record_count << '\n';
  }
  return out.str();
}

void WriteMetrics(const std::filesystem::path &path,
                  const std::map<std::string, MetricTuple> &metrics) {
  std::vector<OrderedJson> rows;
  for (const auto &[id, m] : metrics) {
    OrderedJson row;
    row["id"] = id;
    const auto tuple = TupleToJson(m);
    for (const auto &[k, v] : tuple.items()) row[k] = v;
    rows.push_back(std::move(row));
  }
  WriteJsonLines(path, rows);
}

std::map<std::string, MetricTuple> ReadMetrics(const std::filesystem::path &path) {
  std::map<std::string, MetricTuple> out;
  ForEachJsonLine(path, [&](std::size_t line, const Json &obj) {
    MetricTuple m;
    const auto id = RequireString(obj, "id", line);
    for (auto name : kMetricNames) {
      if (obj.contains(name)) *MetricSlot(m, name) = RequireNumber(obj, std::string(name).c_str(), line);
    }
    if (!out.emplace(id, m).second) throw Error(ErrorKind::kDuplicateId, id);
  });
  return out;
}

}  // namespace microstyle
