#include "tempocap/prompts.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "tempocap/caption.hpp"
#include "tempocap/error.hpp"

namespace tempocap {

namespace {

constexpr const char* kContextNote =
    "This is a music analysis of a song. Note that the numbers indicate the "
    "time-boundaries of functional segments in this song.";
constexpr const char* kParaphrase =
    "Paraphrase the music analysis to make it sound like a coherent song, "
    "instead of a remix. Additionally, remove any mention of sound quality.";
constexpr const char* kGlobalCaption =
    "Start with a general description of the song focusing on subjectivity.";
constexpr const char* kMusicalChange =
    "Describe the song in detail and explain transitions between parts of "
    "the song.";
constexpr const char* kMusicStructure =
    "Remember to indicate the temporal annotations and music structures when "
    "talking about a specific part of the song.";

std::string format_percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", fraction * 100.0);
  return buf;
}

std::string format_bpm(double bpm) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", bpm);
  return buf;
}

}  // namespace

PromptText render_paraphrase_prompt(const TemplatedCaption& templated) {
  std::string analysis = serialize_caption(templated_to_caption(templated));

  std::string text;
  text += "Context: Music Analysis\n";
  text += analysis;
  text += '\n';
  text += kContextNote;
  text += "\n\n";
  text += "Paraphrase: ";
  text += kParaphrase;
  text += "\n\n";
  text += "Global Caption: ";
  text += kGlobalCaption;
  text += "\n\n";
  text += "Musical Change: ";
  text += kMusicalChange;
  text += "\n\n";
  text += "Music Structure: ";
  text += kMusicStructure;
  text += '\n';
  return {std::move(text)};
}

PromptText render_pseudolabel_prompt(
    const std::string& genre, double bpm,
    const std::vector<std::pair<TimeInterval, std::string>>& segments) {
  if (genre.empty())
    throw Error(ErrorKind::invalid_argument, "genre must be non-empty");
  if (!(bpm > 0.0) || !std::isfinite(bpm))
    throw Error(ErrorKind::invalid_argument, "bpm must be positive");

  std::vector<std::pair<TimeInterval, std::string>> sorted = segments;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) {
                     return a.first.start() < b.first.start();
                   });
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    if (sorted[i + 1].first.start() < sorted[i].first.end())
      throw Error(ErrorKind::invalid_argument, "overlapping segments");
  }

  std::string boundaries;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i) boundaries += ", ";
    boundaries += '[';
    boundaries += format_percent(sorted[i].first.start());
    boundaries += "%-";
    boundaries += format_percent(sorted[i].first.end());
    boundaries += "%]";
    if (!sorted[i].second.empty()) {
      boundaries += ' ';
      boundaries += sorted[i].second;
    }
  }

  std::string text;
  text += "This is a ";
  text += genre;
  text += " music of ";
  text += format_bpm(bpm);
  text += " beat-per-minute (BPM). Describe the music in general, in terms "
          "of mood, theme, tempo, melody, instruments, and chord "
          "progression. Then provide a detailed music analysis by "
          "describing each functional segment and its time boundary. Please "
          "note that the music boundaries are ";
  text += boundaries;
  text += ".\n";
  return {std::move(text)};
}

}  // namespace tempocap
