#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tempocap/interval.hpp"
#include "tempocap/sampler.hpp"

namespace tempocap {

// Time-segmented caption text format
// ----------------------------------
// UTF-8, LF line endings in canonical form:
//
//   <global caption: zero or more lines not starting with '[' or '->'>
//   [<start>%-<end>%] [<tag>: ]<segment text>
//   ...
//   -> <k>: <transition text>
//
// Percentages accept up to 4 fractional digits on input and are
// canonicalized to exactly one fractional digit at parse time. A leading
// word matching [A-Za-z][A-Za-z0-9_-]* followed by ": " is always read as a
// function tag. Change markers use the 1-based ordinal of the preceding
// segment on disk ("-> 1:" is the transition after the first segment);
// in-memory `after_segment` is 0-based.

/// One time-bounded segment description.
struct SegmentEntry {
  TimeInterval interval;
  std::optional<std::string> function_tag;
  std::string text;

  bool operator==(const SegmentEntry& other) const = default;
};

/// A described transition: the musical change after segment `after_segment`
/// (0-based; must precede the final segment).
struct ChangeEntry {
  std::size_t after_segment = 0;
  std::string text;

  bool operator==(const ChangeEntry& other) const = default;
};

/// Global caption plus time-bounded segments plus musical-change annotations.
class SegmentedCaption {
 public:
  /// Enforces: segments non-empty, sorted by start and non-overlapping;
  /// segment and change texts non-empty and single-line; change indices
  /// within range. The global caption may be empty.
  SegmentedCaption(std::string global, std::vector<SegmentEntry> segments,
                   std::vector<ChangeEntry> changes);

  const std::string& global() const { return global_; }
  const std::vector<SegmentEntry>& segments() const { return segments_; }
  const std::vector<ChangeEntry>& changes() const { return changes_; }

  bool operator==(const SegmentedCaption& other) const = default;

 private:
  std::string global_;
  std::vector<SegmentEntry> segments_;
  std::vector<ChangeEntry> changes_;
};

/// Parses caption text. Segments may appear out of order and are sorted;
/// overlapping segments, malformed markers, degenerate intervals, empty
/// texts and out-of-range change indices fail with 1-based line (and column)
/// positions. Empty input is an error.
SegmentedCaption parse_caption(const std::string& input);

/// Canonical text form: global lines (when non-empty), then one line per
/// segment with one-fractional-digit percentages, then one line per change,
/// LF-joined with no trailing newline. parse(serialize(c)) == c for captions
/// whose boundaries lie on the canonical 0.1% grid.
std::string serialize_caption(const SegmentedCaption& caption);

/// Projects a composition template onto a caption: one untagged segment per
/// entry, empty global, no changes. Entry boundaries keep full precision.
SegmentedCaption templated_to_caption(const TemplatedCaption& templated);

/// Inverse projection, used by prompt rendering: requires the segments to
/// tile [0, 1] contiguously. Function tags are dropped.
TemplatedCaption templated_from_caption(const SegmentedCaption& caption);

/// JSONL record form: {"global", "segments": [{start, end, tag?, text}],
/// "changes": [{after, text}]} with 17-significant-digit boundaries (the
/// lossless carrier, unlike the canonical text form). `extra_id`, when
/// given, is emitted first as an `id` key.
std::string caption_to_jsonl(const SegmentedCaption& caption,
                             const std::string* extra_id = nullptr);

/// Parses one JSONL record (as produced by caption_to_jsonl). `line` is used
/// for error positions; an `id` key, when present, is returned through
/// `id_out`.
SegmentedCaption caption_from_json(const nlohmann::json& record, int line,
                                   std::string* id_out = nullptr);

/// Loads a caption corpus from JSONL; ids default to the 1-based line index
/// rendered as "item-N" when records carry no `id`.
std::vector<std::pair<std::string, SegmentedCaption>> load_caption_corpus(
    const std::string& path);

/// Maps a raw percentage to the canonical 0.1%-grid fraction the parser
/// produces: format with one fractional digit, reparse, divide by 100.
double canonical_fraction_from_percent(double percent);

}  // namespace tempocap
