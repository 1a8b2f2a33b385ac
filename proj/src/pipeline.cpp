#include "tempocap/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "tempocap/caption.hpp"
#include "tempocap/error.hpp"
#include "tempocap/jsonio.hpp"
#include "tempocap/prompts.hpp"
#include "tempocap/retrieval.hpp"
#include "tempocap/rng.hpp"

namespace tempocap {

std::vector<std::string> compose_lines(const ClipCorpus& corpus,
                                       const ComposeOptions& options) {
  if (options.count < 1)
    throw Error(ErrorKind::invalid_argument, "count must be at least 1");
  DeterministicRng rng(options.seed);
  SamplerOptions sampler_options;
  sampler_options.temperature = options.temperature;
  sampler_options.force_include_seed = options.force_include_seed;
  std::vector<std::string> lines;
  lines.reserve(options.count);
  for (std::size_t i = 0; i < options.count; ++i) {
    CompositionPlan plan = sample_composition(corpus, i % corpus.size(), rng,
                                              sampler_options);
    std::string caption_text =
        serialize_caption(templated_to_caption(render_template(plan, corpus)));
    lines.push_back(plan_to_jsonl(plan, &caption_text));
  }
  return lines;
}

void compose_to_file(const ClipCorpus& corpus, const ComposeOptions& options,
                     const std::string& out_path) {
  write_lines(out_path, compose_lines(corpus, options));
}

namespace {

std::string record_id(const nlohmann::json& record, int line) {
  if (record.contains("id")) return require_string(record, "id", line);
  return "item-" + std::to_string(line);
}

std::string paraphrase_prompt_for(const nlohmann::json& record, int line) {
  try {
    SegmentedCaption caption =
        record.contains("caption")
            ? parse_caption(require_string(record, "caption", line))
            : caption_from_json(record, line);
    return render_paraphrase_prompt(templated_from_caption(caption)).text;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::parse) throw;
    throw Error(ErrorKind::parse, e.what(), line);
  }
}

std::string pseudolabel_prompt_for(const nlohmann::json& record, int line) {
  std::string genre = require_string(record, "genre", line);
  double bpm = require_number(record, "bpm", line);
  const auto& arr = require_key(record, "segments", line);
  if (!arr.is_array() || arr.empty())
    throw Error(ErrorKind::parse, "\"segments\" must be a non-empty array",
                line);
  std::vector<std::pair<TimeInterval, std::string>> segments;
  for (const auto& seg : arr) {
    if (!seg.is_object())
      throw Error(ErrorKind::parse, "segment is not an object", line);
    double start = require_number(seg, "start", line);
    double end = require_number(seg, "end", line);
    std::string label = require_string(seg, "label", line);
    try {
      segments.emplace_back(TimeInterval(start, end), std::move(label));
    } catch (const Error& e) {
      throw Error(ErrorKind::parse, e.what(), line);
    }
  }
  try {
    return render_pseudolabel_prompt(genre, bpm, segments).text;
  } catch (const Error& e) {
    throw Error(ErrorKind::parse, e.what(), line);
  }
}

}  // namespace

std::vector<std::string> render_prompt_lines(const std::string& input_path,
                                             PromptMode mode) {
  std::vector<std::string> lines;
  for_each_jsonl_record(input_path, [&](int line, const nlohmann::json& rec) {
    std::string id = record_id(rec, line);
    std::string prompt = mode == PromptMode::paraphrase
                             ? paraphrase_prompt_for(rec, line)
                             : pseudolabel_prompt_for(rec, line);
    lines.push_back("{\"id\":" + json_quote(id) +
                    ",\"prompt\":" + json_quote(prompt) + "}");
  });
  if (lines.empty())
    throw Error(ErrorKind::domain, "empty prompt input: " + input_path);
  return lines;
}

void render_prompts_to_file(const std::string& input_path, PromptMode mode,
                            const std::string& out_path) {
  write_lines(out_path, render_prompt_lines(input_path, mode));
}

std::string canonicalize_caption_text(const std::string& text) {
  return serialize_caption(parse_caption(text));
}

void canonicalize_caption_file(const std::string& in_path,
                               const std::string& out_path) {
  write_file(out_path, canonicalize_caption_text(read_file(in_path)) + "\n");
}

void retrieve_to_files(const std::string& text_path,
                       const std::string& audio_path,
                       const std::string& truth_path,
                       const RetrieveOptions& options,
                       const std::string& ranked_out_path,
                       const std::string& report_out_path) {
  std::vector<SegmentDoc> text_docs =
      load_segment_docs(text_path, options.window_s);
  std::vector<SegmentDoc> audio_docs =
      load_segment_docs(audio_path, options.window_s);
  if (text_docs.front().dim() != audio_docs.front().dim())
    throw Error(ErrorKind::invalid_argument,
                "text dimension " + std::to_string(text_docs.front().dim()) +
                    " != audio dimension " +
                    std::to_string(audio_docs.front().dim()));
  std::vector<RankedList> ranked = rank_all(score_matrix(text_docs, audio_docs));
  std::vector<std::string> lines;
  lines.reserve(ranked.size());
  for (const RankedList& list : ranked)
    lines.push_back(ranked_list_to_jsonl(list));
  write_lines(ranked_out_path, lines);
  if (truth_path.empty()) return;
  if (report_out_path.empty())
    throw Error(ErrorKind::invalid_argument,
                "a truth mapping needs a report path");
  std::vector<MetricReport> reports =
      eval_ranked(ranked, load_truth(truth_path), options.k_values);
  std::vector<std::string> report_lines;
  report_lines.reserve(reports.size());
  for (const MetricReport& report : reports)
    report_lines.push_back(metric_report_to_json(report));
  write_lines(report_out_path, report_lines);
}

void eval_captions_to_file(const std::string& hyp_path,
                           const std::string& ref_path,
                           const std::vector<std::string>& metrics,
                           CaptionFieldMode mode,
                           const std::string& out_path) {
  if (metrics.empty())
    throw Error(ErrorKind::invalid_argument, "no metrics requested");
  for (const std::string& metric : metrics) {
    if (metric != "bleu" && metric != "rouge" && metric != "meteor" &&
        metric != "bert" && metric != "clap")
      throw Error(ErrorKind::invalid_argument,
                  "unknown metric '" + metric + "'");
    if ((metric == "bert" || metric == "clap") && metrics.size() > 1)
      throw Error(ErrorKind::invalid_argument,
                  "metric '" + metric +
                      "' reads its own input schema and must be requested "
                      "alone");
  }
  std::vector<std::string> lines;
  if (metrics.front() == "bert") {
    lines.push_back(metric_report_to_json(eval_bert_metric(
        load_token_embedding_docs(hyp_path),
        load_token_embedding_docs(ref_path))));
  } else if (metrics.front() == "clap") {
    lines.push_back(metric_report_to_json(eval_clap_metric(
        load_embedding_docs(hyp_path), load_embedding_docs(ref_path))));
  } else {
    auto hyp = load_caption_corpus(hyp_path);
    auto ref = load_caption_corpus(ref_path);
    for (const std::string& metric : metrics)
      lines.push_back(
          metric_report_to_json(eval_caption_metric(metric, hyp, ref, mode)));
  }
  write_lines(out_path, lines);
}

void eval_ranked_to_file(const std::string& ranked_path,
                         const std::string& truth_path,
                         const std::vector<std::size_t>& k_values,
                         const std::string& out_path) {
  std::vector<MetricReport> reports = eval_ranked(
      load_ranked_lists(ranked_path), load_truth(truth_path), k_values);
  std::vector<std::string> lines;
  lines.reserve(reports.size());
  for (const MetricReport& report : reports)
    lines.push_back(metric_report_to_json(report));
  write_lines(out_path, lines);
}

StatsReport stats_from_file(const std::string& captions_path) {
  auto corpus = load_caption_corpus(captions_path);
  std::vector<SegmentedCaption> captions;
  captions.reserve(corpus.size());
  for (auto& [id, caption] : corpus) captions.push_back(std::move(caption));
  return corpus_stats(captions);
}

void stats_to_file(const std::string& captions_path,
                   const std::string& out_path) {
  write_lines(out_path, {stats_report_to_json(stats_from_file(captions_path))});
}

CorpusValidation validate_corpus_file(const std::string& clips_path) {
  ClipCorpus corpus = load_clip_corpus(clips_path);
  CorpusValidation validation;
  validation.clip_count = corpus.size();
  validation.dim = corpus.dim();
  validation.report = validate_corpus(corpus);
  return validation;
}

std::string validation_report_to_json(const CorpusValidation& validation) {
  std::string out = "{\"clips\":" + std::to_string(validation.clip_count) +
                    ",\"dim\":" + std::to_string(validation.dim) +
                    ",\"ok\":" + (validation.report.ok ? "true" : "false") +
                    ",\"issues\":[";
  for (std::size_t i = 0; i < validation.report.issues.size(); ++i) {
    if (i) out += ',';
    out += "{\"id\":" + json_quote(validation.report.issues[i].record_id) +
           ",\"message\":" + json_quote(validation.report.issues[i].message) +
           '}';
  }
  out += "]}";
  return out;
}

}  // namespace tempocap
