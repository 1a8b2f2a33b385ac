#include "tempocap/jsonio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "tempocap/error.hpp"

namespace tempocap {

std::string format_double17(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string json_quote(const std::string& text) {
  return nlohmann::json(text).dump();
}

static void for_each_line(std::istream& in,
                          const std::function<void(int, const std::string&)>& fn) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    fn(line_no, line);
  }
}

static void dispatch_record(
    int line_no, const std::string& line,
    const std::function<void(int, const nlohmann::json&)>& on_record) {
  if (line.find_first_not_of(" \t") == std::string::npos) return;
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    // parse_error for broken syntax, out_of_range for number overflow —
    // either way the line is unusable and gets a positioned report.
    throw Error(ErrorKind::parse, std::string("malformed JSON: ") + e.what(),
                line_no);
  }
  if (!parsed.is_object())
    throw Error(ErrorKind::parse, "expected a JSON object", line_no);
  on_record(line_no, parsed);
}

void for_each_jsonl_record(
    const std::string& path,
    const std::function<void(int, const nlohmann::json&)>& on_record) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::io, "cannot open file: " + path);
  for_each_line(in, [&](int line_no, const std::string& line) {
    dispatch_record(line_no, line, on_record);
  });
}

void for_each_jsonl_record_in(
    const std::string& content,
    const std::function<void(int, const nlohmann::json&)>& on_record) {
  std::istringstream in(content);
  for_each_line(in, [&](int line_no, const std::string& line) {
    dispatch_record(line_no, line, on_record);
  });
}

void write_lines(const std::string& path,
                 const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw Error(ErrorKind::io, "cannot open file for writing: " + path);
  for (const auto& line : lines) {
    out << line << '\n';
  }
  out.flush();
  if (!out)
    throw Error(ErrorKind::io, "failed writing file: " + path);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw Error(ErrorKind::io, "cannot open file for writing: " + path);
  out.write(content.data(),
            static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out)
    throw Error(ErrorKind::io, "failed writing file: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorKind::io, "cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const nlohmann::json& require_key(const nlohmann::json& record,
                                  const std::string& key, int line) {
  auto it = record.find(key);
  if (it == record.end())
    throw Error(ErrorKind::parse, "missing key \"" + key + "\"", line);
  return *it;
}

double require_number(const nlohmann::json& record, const std::string& key,
                      int line) {
  const auto& value = require_key(record, key, line);
  if (!value.is_number())
    throw Error(ErrorKind::parse, "key \"" + key + "\" must be a number", line);
  return value.get<double>();
}

std::string require_string(const nlohmann::json& record, const std::string& key,
                           int line) {
  const auto& value = require_key(record, key, line);
  if (!value.is_string())
    throw Error(ErrorKind::parse, "key \"" + key + "\" must be a string", line);
  return value.get<std::string>();
}

}  // namespace tempocap
