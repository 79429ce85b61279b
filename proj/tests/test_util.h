#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <unistd.h>

#include "microstyle/record.h"
#include "microstyle/style_space.h"

namespace microstyle::testing {

// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("microstyle_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;

  std::filesystem::path operator/(const std::string &name) const { return path_ / name; }
  const std::filesystem::path &path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::filesystem::path WriteFile(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return path;
}

inline std::string ReadFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline SentenceRecord Scored(std::string id, StyleScores scores, std::string text = "text") {
  return SentenceRecord{std::move(id), std::move(text), std::move(scores)};
}

// Score that lands a style in state `index` of its code list (codes run from
// the high end of [0, 1] down), at the centre of that state's bin.
inline double ScoreForState(std::size_t index, std::size_t states) {
  const double width = 1.0 / static_cast<double>(states);
  return 1.0 - (static_cast<double>(index) + 0.5) * width;
}

// Records whose combination is `key`, one per count, ids "<key>_<n>".
inline std::vector<SentenceRecord> RecordsForKey(const StyleSpaceConfig &config,
                                                 const std::string &key, std::uint64_t count) {
  StyleScores scores;
  for (std::size_t i = 0; i < config.size(); ++i) {
    const auto &style = config.styles()[i];
    std::size_t index = 0;
    while (style.codes[index] != key[i]) ++index;
    scores[style.name] = ScoreForState(index, style.codes.size());
  }
  std::vector<SentenceRecord> out;
  for (std::uint64_t n = 0; n < count; ++n) {
    out.push_back({key + "_" + std::to_string(n), "text " + key, scores});
  }
  return out;
}

template <typename Counts>
std::vector<SentenceRecord> RecordsForCounts(const StyleSpaceConfig &config, const Counts &counts) {
  std::vector<SentenceRecord> out;
  for (const auto &[key, n] : counts) {
    auto part = RecordsForKey(config, key, n);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

inline std::filesystem::path DataDir() { return MICROSTYLE_TEST_DATA_DIR; }

}  // namespace microstyle::testing
