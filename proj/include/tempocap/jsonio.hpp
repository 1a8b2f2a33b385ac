#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace tempocap {

// Formats a finite double with 17 significant digits, the shortest width that
// round-trips every IEEE-754 double through decimal.
std::string format_double17(double value);

// JSON string literal (quoted, escaped) for embedding in hand-composed lines.
std::string json_quote(const std::string& text);

// Parses one JSONL file, invoking `on_record(line_number, parsed)` per
// non-empty line. Parse failures are rethrown as Error{parse} with the
// 1-based line number.
void for_each_jsonl_record(
    const std::string& path,
    const std::function<void(int, const nlohmann::json&)>& on_record);

// Same, but over an in-memory buffer (used by the C API string entry points).
void for_each_jsonl_record_in(
    const std::string& content,
    const std::function<void(int, const nlohmann::json&)>& on_record);

// Writes `lines` to `path` joined with '\n' and a trailing newline.
// Throws Error{io} on failure.
void write_lines(const std::string& path, const std::vector<std::string>& lines);

// Writes `content` to `path` byte-for-byte. Throws Error{io} on failure.
void write_file(const std::string& path, const std::string& content);

// Reads a whole file into memory. Throws Error{io} if unreadable.
std::string read_file(const std::string& path);

// Fetches json[key], throwing Error{parse} naming the key and line when the
// key is missing or the type does not match.
const nlohmann::json& require_key(const nlohmann::json& record,
                                  const std::string& key, int line);
double require_number(const nlohmann::json& record, const std::string& key,
                      int line);
std::string require_string(const nlohmann::json& record, const std::string& key,
                           int line);

}  // namespace tempocap
