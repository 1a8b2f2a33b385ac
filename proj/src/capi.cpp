#include "tempocap/tempocap.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include <json.hpp>

#include "tempocap/caption.hpp"
#include "tempocap/corpus.hpp"
#include "tempocap/error.hpp"
#include "tempocap/pipeline.hpp"
#include "tempocap/prompts.hpp"

namespace {

thread_local std::string g_last_error = "no error";

tc_status status_of(tempocap::ErrorKind kind) {
  switch (kind) {
    case tempocap::ErrorKind::invalid_argument:
      return TC_ERR_INVALID_ARGUMENT;
    case tempocap::ErrorKind::parse:
      return TC_ERR_PARSE;
    case tempocap::ErrorKind::io:
      return TC_ERR_IO;
    case tempocap::ErrorKind::domain:
      return TC_ERR_DOMAIN;
  }
  return TC_ERR_DOMAIN;
}

template <typename Fn>
tc_status guarded(Fn&& fn) {
  try {
    fn();
    return TC_OK;
  } catch (const tempocap::Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return TC_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return TC_ERR_DOMAIN;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TC_ERR_DOMAIN;
  }
}

tc_status fail_null(const char* what) {
  g_last_error = std::string("null ") + what;
  return TC_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

std::vector<std::size_t> parse_k_csv(const char* k_csv) {
  if (!k_csv) return {1, 5, 10};
  std::vector<std::size_t> values;
  std::string text(k_csv);
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string piece = text.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t used = 0;
    unsigned long long value = 0;
    try {
      value = std::stoull(piece, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != piece.size() || piece.empty() || value < 1)
      throw tempocap::Error(tempocap::ErrorKind::invalid_argument,
                            "bad recall cutoff '" + piece + "'");
    values.push_back(static_cast<std::size_t>(value));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return values;
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> pieces;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    pieces.push_back(text.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return pieces;
}

tempocap::CaptionFieldMode mode_from(const char* mode) {
  std::string m = mode ? mode : "complete";
  if (m == "global") return tempocap::CaptionFieldMode::global_only;
  if (m == "complete") return tempocap::CaptionFieldMode::complete;
  throw tempocap::Error(tempocap::ErrorKind::invalid_argument,
                        "unknown mode '" + m + "' (use global or complete)");
}

tempocap::ComposeOptions compose_options_from(const tc_compose_opts* opts) {
  tempocap::ComposeOptions options;
  if (opts) {
    options.seed = opts->seed;
    options.count = opts->count;
    options.temperature = opts->temperature;
    options.force_include_seed = opts->force_include_seed != 0;
  }
  return options;
}

}  // namespace

struct tc_corpus {
  tempocap::ClipCorpus value;
};

struct tc_caption {
  tempocap::SegmentedCaption value;
};

extern "C" {

const char* tc_last_error(void) { return g_last_error.c_str(); }

const char* tc_version(void) { return TEMPOCAP_VERSION; }

void tc_string_free(char* text) { std::free(text); }

tc_status tc_corpus_load(const char* path, tc_corpus** out) {
  if (!path) return fail_null("path");
  if (!out) return fail_null("output handle");
  return guarded([&] {
    *out = new tc_corpus{tempocap::load_clip_corpus(path)};
  });
}

void tc_corpus_free(tc_corpus* corpus) { delete corpus; }

size_t tc_corpus_size(const tc_corpus* corpus) {
  return corpus ? corpus->value.size() : 0;
}

size_t tc_corpus_dim(const tc_corpus* corpus) {
  return corpus ? corpus->value.dim() : 0;
}

tc_status tc_corpus_validate(const tc_corpus* corpus, char** report_json,
                             size_t* issue_count) {
  if (!corpus) return fail_null("corpus");
  if (!report_json) return fail_null("report output");
  return guarded([&] {
    tempocap::CorpusValidation validation;
    validation.clip_count = corpus->value.size();
    validation.dim = corpus->value.dim();
    validation.report = tempocap::validate_corpus(corpus->value);
    if (issue_count) *issue_count = validation.report.issues.size();
    *report_json = dup_string(tempocap::validation_report_to_json(validation));
  });
}

tc_status tc_validate_file(const char* clips_path, char** report_json,
                           size_t* issue_count) {
  if (!clips_path) return fail_null("path");
  if (!report_json) return fail_null("report output");
  return guarded([&] {
    tempocap::CorpusValidation validation =
        tempocap::validate_corpus_file(clips_path);
    if (issue_count) *issue_count = validation.report.issues.size();
    *report_json = dup_string(tempocap::validation_report_to_json(validation));
  });
}

void tc_compose_opts_init(tc_compose_opts* opts) {
  if (!opts) return;
  opts->seed = 0;
  opts->count = 5000;
  opts->temperature = 1.0;
  opts->force_include_seed = 0;
}

tc_status tc_compose(const tc_corpus* corpus, const tc_compose_opts* opts,
                     const char* out_path) {
  if (!corpus) return fail_null("corpus");
  if (!out_path) return fail_null("output path");
  return guarded([&] {
    tempocap::compose_to_file(corpus->value, compose_options_from(opts),
                              out_path);
  });
}

tc_status tc_compose_file(const char* clips_path, const tc_compose_opts* opts,
                          const char* out_path) {
  if (!clips_path) return fail_null("path");
  if (!out_path) return fail_null("output path");
  return guarded([&] {
    tempocap::compose_to_file(tempocap::load_clip_corpus(clips_path),
                              compose_options_from(opts), out_path);
  });
}

tc_status tc_caption_parse(const char* text, tc_caption** out) {
  if (!text) return fail_null("text");
  if (!out) return fail_null("output handle");
  return guarded([&] {
    *out = new tc_caption{tempocap::parse_caption(text)};
  });
}

void tc_caption_free(tc_caption* caption) { delete caption; }

size_t tc_caption_segment_count(const tc_caption* caption) {
  return caption ? caption->value.segments().size() : 0;
}

size_t tc_caption_change_count(const tc_caption* caption) {
  return caption ? caption->value.changes().size() : 0;
}

tc_status tc_caption_serialize(const tc_caption* caption, char** out_text) {
  if (!caption) return fail_null("caption");
  if (!out_text) return fail_null("output text");
  return guarded([&] {
    *out_text = dup_string(tempocap::serialize_caption(caption->value));
  });
}

tc_status tc_caption_to_json(const tc_caption* caption, const char* id,
                             char** out_json) {
  if (!caption) return fail_null("caption");
  if (!out_json) return fail_null("output text");
  return guarded([&] {
    std::string id_text;
    const std::string* extra = nullptr;
    if (id) {
      id_text = id;
      extra = &id_text;
    }
    *out_json = dup_string(tempocap::caption_to_jsonl(caption->value, extra));
  });
}

tc_status tc_caption_from_json(const char* json_record, tc_caption** out) {
  if (!json_record) return fail_null("record");
  if (!out) return fail_null("output handle");
  return guarded([&] {
    nlohmann::json record = nlohmann::json::parse(json_record);
    *out = new tc_caption{tempocap::caption_from_json(record, 1)};
  });
}

tc_status tc_canonicalize_file(const char* in_path, const char* out_path) {
  if (!in_path) return fail_null("input path");
  if (!out_path) return fail_null("output path");
  return guarded([&] {
    tempocap::canonicalize_caption_file(in_path, out_path);
  });
}

tc_status tc_paraphrase_prompt(const tc_caption* caption, char** out_text) {
  if (!caption) return fail_null("caption");
  if (!out_text) return fail_null("output text");
  return guarded([&] {
    *out_text = dup_string(
        tempocap::render_paraphrase_prompt(
            tempocap::templated_from_caption(caption->value))
            .text);
  });
}

tc_status tc_pseudolabel_prompt(const char* genre, double bpm,
                                const char* segments_json, char** out_text) {
  if (!genre) return fail_null("genre");
  if (!segments_json) return fail_null("segments");
  if (!out_text) return fail_null("output text");
  return guarded([&] {
    nlohmann::json arr = nlohmann::json::parse(segments_json);
    if (!arr.is_array() || arr.empty())
      throw tempocap::Error(tempocap::ErrorKind::invalid_argument,
                            "segments must be a non-empty JSON array");
    std::vector<std::pair<tempocap::TimeInterval, std::string>> segments;
    for (const auto& seg : arr) {
      if (!seg.is_object() || !seg.contains("start") || !seg.contains("end") ||
          !seg.contains("label") || !seg["start"].is_number() ||
          !seg["end"].is_number() || !seg["label"].is_string())
        throw tempocap::Error(
            tempocap::ErrorKind::invalid_argument,
            "each segment needs numeric start/end and a string label");
      segments.emplace_back(
          tempocap::TimeInterval(seg["start"].get<double>(),
                                 seg["end"].get<double>()),
          seg["label"].get<std::string>());
    }
    *out_text = dup_string(
        tempocap::render_pseudolabel_prompt(genre, bpm, segments).text);
  });
}

tc_status tc_render_prompts_file(const char* input_path, const char* mode,
                                 const char* out_path) {
  if (!input_path) return fail_null("input path");
  if (!mode) return fail_null("mode");
  if (!out_path) return fail_null("output path");
  return guarded([&] {
    std::string m(mode);
    tempocap::PromptMode prompt_mode;
    if (m == "paraphrase")
      prompt_mode = tempocap::PromptMode::paraphrase;
    else if (m == "pseudolabel")
      prompt_mode = tempocap::PromptMode::pseudolabel;
    else
      throw tempocap::Error(
          tempocap::ErrorKind::invalid_argument,
          "unknown mode '" + m + "' (use paraphrase or pseudolabel)");
    tempocap::render_prompts_to_file(input_path, prompt_mode, out_path);
  });
}

tc_status tc_retrieve_file(const char* text_docs_path,
                           const char* audio_docs_path,
                           const char* truth_path, const char* k_csv,
                           double window_s, const char* ranked_out_path,
                           const char* report_out_path) {
  if (!text_docs_path) return fail_null("text docs path");
  if (!audio_docs_path) return fail_null("audio docs path");
  if (!ranked_out_path) return fail_null("ranked output path");
  return guarded([&] {
    tempocap::RetrieveOptions options;
    if (window_s > 0.0) options.window_s = window_s;
    options.k_values = parse_k_csv(k_csv);
    tempocap::retrieve_to_files(text_docs_path, audio_docs_path,
                                truth_path ? truth_path : "", options,
                                ranked_out_path,
                                report_out_path ? report_out_path : "");
  });
}

tc_status tc_eval_captions_file(const char* hyp_path, const char* ref_path,
                                const char* metrics_csv, const char* mode,
                                const char* out_path) {
  if (!hyp_path) return fail_null("hypothesis path");
  if (!ref_path) return fail_null("reference path");
  if (!out_path) return fail_null("output path");
  return guarded([&] {
    std::vector<std::string> metrics =
        split_csv(metrics_csv ? metrics_csv : "bleu,rouge,meteor");
    tempocap::eval_captions_to_file(hyp_path, ref_path, metrics,
                                    mode_from(mode), out_path);
  });
}

tc_status tc_eval_ranked_file(const char* ranked_path, const char* truth_path,
                              const char* k_csv, const char* out_path) {
  if (!ranked_path) return fail_null("ranked path");
  if (!truth_path) return fail_null("truth path");
  if (!out_path) return fail_null("output path");
  return guarded([&] {
    tempocap::eval_ranked_to_file(ranked_path, truth_path, parse_k_csv(k_csv),
                                  out_path);
  });
}

tc_status tc_stats_file(const char* captions_path, const char* out_path) {
  if (!captions_path) return fail_null("captions path");
  if (!out_path) return fail_null("output path");
  return guarded([&] {
    tempocap::stats_to_file(captions_path, out_path);
  });
}

}  // extern "C"
