#pragma once

#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "test_util.h"

namespace microstyle::testing {

inline std::string ShellQuote(const std::string &s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

struct CliResult {
  int exit_code = -1;
  std::string err;
};

// Runs the CLI with `args`, capturing stderr. stdout is discarded.
inline CliResult RunCli(const std::vector<std::string> &args, const std::filesystem::path &scratch) {
  std::string cmd = ShellQuote(MICROSTYLE_CLI_PATH);
  for (const auto &a : args) cmd += " " + ShellQuote(a);
  const auto err_path = scratch / "stderr.txt";
  cmd += " >/dev/null 2>" + ShellQuote(err_path.string());
  const int status = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = ReadFile(err_path);
  return r;
}

// ingest -> score -> bucket -> pair -> filter -> plan -> sample -> emit over
// the 50-sentence fixture. Returns the first failing stage's result, or the
// emit result. Outputs land in `dir`.
inline CliResult RunFixturePipeline(const std::filesystem::path &dir, const std::string &seed) {
  const auto data = DataDir();
  const std::string config = (data / "fa_config.json").string();
  auto p = [&](const char *name) { return (dir / name).string(); };
  const std::vector<std::vector<std::string>> stages{
      {"ingest", "--in", (data / "corpus.jsonl").string(), "--out", p("corpus.jsonl")},
      {"score", "--config", config, "--in", p("corpus.jsonl"), "--lexicon",
       (data / "arousal_lexicon.txt").string(), "--out", p("scores.jsonl")},
      {"bucket", "--config", config, "--in", p("corpus.jsonl"), "--scores", p("scores.jsonl"), "--out",
       p("bucketed.jsonl"), "--corpus-name", "fixture"},
      {"pair", "--config", config, "--in", p("bucketed.jsonl"), "--pairs", (data / "pairs.jsonl").string(),
       "--out", p("selected.jsonl")},
      {"filter", "--config", config, "--in", p("bucketed.jsonl"), "--pairs", p("selected.jsonl"), "--fluency",
       (data / "fluency.jsonl").string(), "--out", p("filtered.jsonl")},
      {"plan", "--config", config, "--in", p("bucketed.jsonl"), "--pairs", p("filtered.jsonl"), "--seed", seed,
       "--out", p("plan.json")},
      {"sample", "--config", config, "--in", p("bucketed.jsonl"), "--pairs", p("filtered.jsonl"), "--plan",
       p("plan.json"), "--out", p("sampled.jsonl"), "--corpus-name", "fixture"},
      {"emit", "--config", config, "--in", p("bucketed.jsonl"), "--pairs", p("sampled.jsonl"), "--seed", seed,
       "--out", p("train.jsonl"), "--corpus-name", "fixture"},
  };
  CliResult last;
  for (const auto &args : stages) {
    last = RunCli(args, dir);
    if (last.exit_code != 0) return last;
  }
  return last;
}

}  // namespace microstyle::testing
