#include "microstyle/jsonl.h"

#include <fstream>
#include <sstream>

#include "microstyle/error.h"

namespace microstyle {

namespace {

std::string LineRef(std::size_t line) { return "line " + std::to_string(line); }

}  // namespace

void ForEachJsonLine(const std::filesystem::path &path,
                     const std::function<void(std::size_t, const Json &)> &fn) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    Json obj = Json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (obj.is_discarded() || !obj.is_object()) {
      throw Error(ErrorKind::kMalformedLine,
                  LineRef(line_no) + " of " + path.string() + ": not a JSON object");
    }
    fn(line_no, obj);
  }
}

void WriteJsonLines(const std::filesystem::path &path,
                    const std::vector<OrderedJson> &rows) {
  std::ostringstream out;
  for (const auto &row : rows) out << row.dump() << '\n';
  WriteTextFile(path, out.str());
}

Json ReadJsonFile(const std::filesystem::path &path) {
  Json doc = Json::parse(ReadTextFile(path), nullptr, false);
  if (doc.is_discarded()) {
    throw Error(ErrorKind::kMalformedLine, path.string() + ": not valid JSON");
  }
  return doc;
}

void WriteJsonFile(const std::filesystem::path &path, const OrderedJson &doc) {
  WriteTextFile(path, doc.dump(2) + "\n");
}

std::string ReadTextFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteTextFile(const std::filesystem::path &path, const std::string &text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::kIo, "short write to " + path.string());
}

std::string RequireString(const Json &obj, const char *field, std::size_t line) {
  auto it = obj.find(field);
  if (it == obj.end() || !it->is_string()) {
    throw Error(ErrorKind::kMalformedLine,
                LineRef(line) + ": missing string field '" + field + "'");
  }
  return it->get<std::string>();
}

double RequireNumber(const Json &obj, const char *field, std::size_t line) {
  auto it = obj.find(field);
  if (it == obj.end() || !it->is_number()) {
    throw Error(ErrorKind::kMalformedLine,
                LineRef(line) + ": missing numeric field '" + field + "'");
  }
  return it->get<double>();
}

}  // namespace microstyle
