#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

namespace microstyle {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

// Calls `fn(line_number, object)` for every non-blank line of a JSON-lines
// file. Line numbers are 1-based. Lines that are not JSON objects raise
// MalformedLine; a missing file raises IoError.
void ForEachJsonLine(const std::filesystem::path &path,
                     const std::function<void(std::size_t, const Json &)> &fn);

void WriteJsonLines(const std::filesystem::path &path,
                    const std::vector<OrderedJson> &rows);

Json ReadJsonFile(const std::filesystem::path &path);
void WriteJsonFile(const std::filesystem::path &path, const OrderedJson &doc);

std::string ReadTextFile(const std::filesystem::path &path);
void WriteTextFile(const std::filesystem::path &path, const std::string &text);

// Field accessors that turn type mismatches into MalformedLine errors.
std::string RequireString(const Json &obj, const char *field, std::size_t line);
double RequireNumber(const Json &obj, const char *field, std::size_t line);

}  // namespace microstyle
