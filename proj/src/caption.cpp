#include "tempocap/caption.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>

#include "tempocap/error.hpp"
#include "tempocap/jsonio.hpp"

namespace tempocap {

namespace {

bool is_tag_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }

bool is_tag_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

void check_text(const std::string& text, const char* what) {
  if (text.empty())
    throw Error(ErrorKind::domain, std::string("empty ") + what + " text");
  if (text.find('\n') != std::string::npos)
    throw Error(ErrorKind::domain,
                std::string(what) + " text must be a single line");
}

std::string format_percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", fraction * 100.0);
  return buf;
}

}  // namespace

double canonical_fraction_from_percent(double percent) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", percent);
  return std::strtod(buf, nullptr) / 100.0;
}

SegmentedCaption::SegmentedCaption(std::string global,
                                   std::vector<SegmentEntry> segments,
                                   std::vector<ChangeEntry> changes)
    : global_(std::move(global)),
      segments_(std::move(segments)),
      changes_(std::move(changes)) {
  if (segments_.empty())
    throw Error(ErrorKind::domain, "caption must have at least one segment");
  for (const auto& seg : segments_) check_text(seg.text, "segment");
  for (std::size_t i = 0; i + 1 < segments_.size(); ++i) {
    if (segments_[i].interval.start() > segments_[i + 1].interval.start())
      throw Error(ErrorKind::domain, "segments must be sorted by start");
    if (segments_[i + 1].interval.start() < segments_[i].interval.end())
      throw Error(ErrorKind::domain, "overlapping segments");
  }
  for (const auto& change : changes_) {
    check_text(change.text, "change");
    if (change.after_segment + 1 >= segments_.size())
      throw Error(ErrorKind::domain,
                  "change index " + std::to_string(change.after_segment) +
                      " out of range (caption has " +
                      std::to_string(segments_.size()) + " segments)");
  }
}

namespace {

// One segment or change line pending validation, with its source position.
struct PendingSegment {
  int line = 0;
  double start = 0.0;
  double end = 0.0;
  std::optional<std::string> tag;
  std::string text;
};

struct PendingChange {
  int line = 0;
  std::size_t marker = 0;  // 1-based on-disk ordinal
  std::string text;
};

class LineParser {
 public:
  LineParser(const std::string& line, int line_no)
      : line_(line), line_no_(line_no) {}

  // "[S%-E%] [tag: ]text"
  PendingSegment parse_segment() {
    PendingSegment seg;
    seg.line = line_no_;
    expect('[');
    const double raw_start = parse_percent();
    expect('%');
    expect('-');
    const double raw_end = parse_percent();
    expect('%');
    expect(']');
    skip_spaces(true);

    if (raw_end <= raw_start)
      throw Error(ErrorKind::parse, "segment end must be greater than start",
                  line_no_, 2);
    seg.start = canonical_fraction_from_percent(raw_start);
    seg.end = canonical_fraction_from_percent(raw_end);
    if (seg.end <= seg.start)
      throw Error(ErrorKind::parse,
                  "segment degenerates after canonical rounding to one "
                  "fractional digit",
                  line_no_, 2);

    auto [tag, text] = split_tag(rest());
    seg.tag = std::move(tag);
    seg.text = std::move(text);
    if (seg.text.empty())
      throw Error(ErrorKind::parse, "empty segment text", line_no_,
                  static_cast<int>(pos_) + 1);
    return seg;
  }

  // "-> k: text"
  PendingChange parse_change() {
    PendingChange change;
    change.line = line_no_;
    expect('-');
    expect('>');
    skip_spaces(false);
    const std::size_t digits_at = pos_;
    std::size_t marker = 0;
    while (pos_ < line_.size() &&
           std::isdigit(static_cast<unsigned char>(line_[pos_]))) {
      marker = marker * 10 + static_cast<std::size_t>(line_[pos_] - '0');
      ++pos_;
    }
    if (pos_ == digits_at)
      throw Error(ErrorKind::parse, "expected a segment number after \"->\"",
                  line_no_, static_cast<int>(pos_) + 1);
    if (marker == 0)
      throw Error(ErrorKind::parse, "change index must be at least 1", line_no_,
                  static_cast<int>(digits_at) + 1);
    expect(':');
    skip_spaces(false);
    change.marker = marker;
    change.text = rest();
    if (change.text.empty())
      throw Error(ErrorKind::parse, "empty change text", line_no_,
                  static_cast<int>(pos_) + 1);
    return change;
  }

 private:
  void expect(char c) {
    if (pos_ >= line_.size() || line_[pos_] != c)
      throw Error(ErrorKind::parse,
                  std::string("expected '") + c + "' in boundary marker",
                  line_no_, static_cast<int>(pos_) + 1);
    ++pos_;
  }

  void skip_spaces(bool required) {
    const std::size_t before = pos_;
    while (pos_ < line_.size() && line_[pos_] == ' ') ++pos_;
    if (required && pos_ == before)
      throw Error(ErrorKind::parse, "expected a space", line_no_,
                  static_cast<int>(pos_) + 1);
  }

  // Integer part plus at most 4 fractional digits.
  double parse_percent() {
    const std::size_t start = pos_;
    while (pos_ < line_.size() &&
           std::isdigit(static_cast<unsigned char>(line_[pos_])))
      ++pos_;
    if (pos_ == start)
      throw Error(ErrorKind::parse, "malformed boundary marker: expected digits",
                  line_no_, static_cast<int>(pos_) + 1);
    if (pos_ < line_.size() && line_[pos_] == '.') {
      ++pos_;
      const std::size_t frac_start = pos_;
      while (pos_ < line_.size() &&
             std::isdigit(static_cast<unsigned char>(line_[pos_])))
        ++pos_;
      const std::size_t frac_digits = pos_ - frac_start;
      if (frac_digits == 0)
        throw Error(ErrorKind::parse,
                    "malformed boundary marker: expected fractional digits",
                    line_no_, static_cast<int>(pos_) + 1);
      if (frac_digits > 4)
        throw Error(ErrorKind::parse,
                    "boundary percentages allow at most 4 fractional digits",
                    line_no_, static_cast<int>(frac_start) + 1);
    }
    const double value =
        std::strtod(line_.substr(start, pos_ - start).c_str(), nullptr);
    if (value > 100.0)
      throw Error(ErrorKind::parse, "boundary percentage exceeds 100",
                  line_no_, static_cast<int>(start) + 1);
    return value;
  }

  // "tag: text" -> (tag, text); anything else -> (nullopt, whole).
  std::pair<std::optional<std::string>, std::string> split_tag(
      std::string body) const {
    if (!body.empty() && is_tag_start(body[0])) {
      std::size_t i = 1;
      while (i < body.size() && is_tag_char(body[i])) ++i;
      if (i + 1 < body.size() && body[i] == ':' && body[i + 1] == ' ') {
        std::string tag = body.substr(0, i);
        std::string text = body.substr(i + 2);
        while (!text.empty() && text.front() == ' ') text.erase(text.begin());
        return {std::move(tag), std::move(text)};
      }
    }
    return {std::nullopt, std::move(body)};
  }

  std::string rest() const { return line_.substr(pos_); }

  const std::string& line_;
  int line_no_;
  std::size_t pos_ = 0;
};

}  // namespace

SegmentedCaption parse_caption(const std::string& input) {
  if (input.empty()) throw Error(ErrorKind::parse, "empty input");

  std::vector<std::string> lines;
  std::size_t begin = 0;
  while (begin <= input.size()) {
    std::size_t nl = input.find('\n', begin);
    if (nl == std::string::npos) {
      lines.push_back(input.substr(begin));
      break;
    }
    lines.push_back(input.substr(begin, nl - begin));
    begin = nl + 1;
  }
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  for (auto& line : lines)
    if (!line.empty() && line.back() == '\r') line.pop_back();

  std::vector<std::string> global_lines;
  std::vector<PendingSegment> segments;
  std::vector<PendingChange> changes;
  bool in_body = false;

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    const int line_no = static_cast<int>(i) + 1;
    const bool is_segment = !line.empty() && line[0] == '[';
    const bool is_change = line.rfind("->", 0) == 0;

    if (!in_body && !is_segment) {
      if (is_change)
        throw Error(ErrorKind::parse, "musical change before any segment",
                    line_no, 1);
      global_lines.push_back(line);
      continue;
    }
    in_body = true;
    LineParser parser(line, line_no);
    if (is_segment) {
      segments.push_back(parser.parse_segment());
    } else if (is_change) {
      changes.push_back(parser.parse_change());
    } else {
      throw Error(ErrorKind::parse, "expected a segment or change line",
                  line_no, 1);
    }
  }

  if (segments.empty())
    throw Error(ErrorKind::parse, "caption has no segment lines");

  std::stable_sort(segments.begin(), segments.end(),
                   [](const PendingSegment& a, const PendingSegment& b) {
                     return a.start < b.start;
                   });
  for (std::size_t i = 0; i + 1 < segments.size(); ++i) {
    if (segments[i + 1].start < segments[i].end)
      throw Error(ErrorKind::parse, "overlapping segments",
                  std::max(segments[i].line, segments[i + 1].line), 1);
  }
  for (const auto& change : changes) {
    if (change.marker >= segments.size())
      throw Error(ErrorKind::parse,
                  "change index " + std::to_string(change.marker) +
                      " out of range (caption has " +
                      std::to_string(segments.size()) + " segments)",
                  change.line, 1);
  }

  std::string global;
  for (std::size_t i = 0; i < global_lines.size(); ++i) {
    if (i) global += '\n';
    global += global_lines[i];
  }

  std::vector<SegmentEntry> out_segments;
  out_segments.reserve(segments.size());
  for (auto& seg : segments)
    out_segments.push_back(
        {TimeInterval(seg.start, seg.end), std::move(seg.tag),
         std::move(seg.text)});
  std::vector<ChangeEntry> out_changes;
  out_changes.reserve(changes.size());
  for (auto& change : changes)
    out_changes.push_back({change.marker - 1, std::move(change.text)});

  return SegmentedCaption(std::move(global), std::move(out_segments),
                          std::move(out_changes));
}

std::string serialize_caption(const SegmentedCaption& caption) {
  std::string out;
  auto next_line = [&out] {
    if (!out.empty()) out += '\n';
  };
  if (!caption.global().empty()) out += caption.global();
  for (const auto& seg : caption.segments()) {
    next_line();
    out += '[';
    out += format_percent(seg.interval.start());
    out += "%-";
    out += format_percent(seg.interval.end());
    out += "%] ";
    if (seg.function_tag) {
      out += *seg.function_tag;
      out += ": ";
    }
    out += seg.text;
  }
  for (const auto& change : caption.changes()) {
    next_line();
    out += "-> ";
    out += std::to_string(change.after_segment + 1);
    out += ": ";
    out += change.text;
  }
  return out;
}

SegmentedCaption templated_to_caption(const TemplatedCaption& templated) {
  std::vector<SegmentEntry> segments;
  segments.reserve(templated.size());
  for (const auto& entry : templated.entries())
    segments.push_back(
        {TimeInterval(entry.start, entry.end), std::nullopt, entry.text});
  return SegmentedCaption("", std::move(segments), {});
}

TemplatedCaption templated_from_caption(const SegmentedCaption& caption) {
  std::vector<TemplatedCaption::Entry> entries;
  entries.reserve(caption.segments().size());
  for (const auto& seg : caption.segments())
    entries.push_back(
        {seg.interval.start(), seg.interval.end(), seg.text});
  return TemplatedCaption(std::move(entries));
}

std::string caption_to_jsonl(const SegmentedCaption& caption,
                             const std::string* extra_id) {
  std::string line = "{";
  if (extra_id) line += "\"id\":" + json_quote(*extra_id) + ",";
  line += "\"global\":" + json_quote(caption.global()) + ",\"segments\":[";
  for (std::size_t i = 0; i < caption.segments().size(); ++i) {
    const auto& seg = caption.segments()[i];
    if (i) line += ',';
    line += "{\"start\":" + format_double17(seg.interval.start()) +
            ",\"end\":" + format_double17(seg.interval.end());
    if (seg.function_tag) line += ",\"tag\":" + json_quote(*seg.function_tag);
    line += ",\"text\":" + json_quote(seg.text) + "}";
  }
  line += "],\"changes\":[";
  for (std::size_t i = 0; i < caption.changes().size(); ++i) {
    const auto& change = caption.changes()[i];
    if (i) line += ',';
    line += "{\"after\":" + std::to_string(change.after_segment) +
            ",\"text\":" + json_quote(change.text) + "}";
  }
  line += "]}";
  return line;
}

SegmentedCaption caption_from_json(const nlohmann::json& record, int line,
                                   std::string* id_out) {
  if (id_out) {
    *id_out = record.contains("id") && record["id"].is_string()
                  ? record["id"].get<std::string>()
                  : "";
  }
  std::string global;
  if (record.contains("global")) global = require_string(record, "global", line);

  const auto& segments_json = require_key(record, "segments", line);
  if (!segments_json.is_array())
    throw Error(ErrorKind::parse, "key \"segments\" must be an array", line);
  std::vector<SegmentEntry> segments;
  for (const auto& seg : segments_json) {
    std::optional<std::string> tag;
    if (seg.contains("tag") && !seg["tag"].is_null())
      tag = require_string(seg, "tag", line);
    double start = require_number(seg, "start", line);
    double end = require_number(seg, "end", line);
    try {
      segments.push_back({TimeInterval(start, end), std::move(tag),
                          require_string(seg, "text", line)});
    } catch (const Error& e) {
      throw Error(ErrorKind::parse, e.what(), line);
    }
  }

  std::vector<ChangeEntry> changes;
  if (record.contains("changes")) {
    const auto& changes_json = record["changes"];
    if (!changes_json.is_array())
      throw Error(ErrorKind::parse, "key \"changes\" must be an array", line);
    for (const auto& change : changes_json) {
      const double after = require_number(change, "after", line);
      if (after < 0)
        throw Error(ErrorKind::parse, "change \"after\" must be >= 0", line);
      changes.push_back({static_cast<std::size_t>(after),
                         require_string(change, "text", line)});
    }
  }

  try {
    return SegmentedCaption(std::move(global), std::move(segments),
                            std::move(changes));
  } catch (const Error& e) {
    throw Error(ErrorKind::parse, e.what(), line);
  }
}

std::vector<std::pair<std::string, SegmentedCaption>> load_caption_corpus(
    const std::string& path) {
  std::vector<std::pair<std::string, SegmentedCaption>> captions;
  for_each_jsonl_record(path, [&](int line, const nlohmann::json& record) {
    std::string id;
    SegmentedCaption caption = caption_from_json(record, line, &id);
    if (id.empty()) id = "item-" + std::to_string(line);
    captions.emplace_back(std::move(id), std::move(caption));
  });
  return captions;
}

}  // namespace tempocap
