#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tempocap/corpus.hpp"
#include "tempocap/metrics.hpp"
#include "tempocap/sampler.hpp"

namespace tempocap {

/// Batch-run drivers: every function here is a pure mapping from input files
/// and options to output files, so repeated runs are byte-identical.

struct ComposeOptions {
  std::uint64_t seed = 0;
  std::size_t count = 5000;
  double temperature = 1.0;
  bool force_include_seed = false;
};

/// Samples `count` composition plans from one seeded generator, seed clips
/// assigned round-robin over the corpus, and renders each plan's caption.
/// Line i is the plan JSONL with a `caption` field holding the serialized
/// caption text.
std::vector<std::string> compose_lines(const ClipCorpus& corpus,
                                       const ComposeOptions& options);

void compose_to_file(const ClipCorpus& corpus, const ComposeOptions& options,
                     const std::string& out_path);

enum class PromptMode { paraphrase, pseudolabel };

/// Renders one prompt per input record as {"id", "prompt"} JSONL.
/// paraphrase mode reads caption records (as written by caption_to_jsonl or
/// compose; a `caption` field holding caption text is also accepted) whose
/// segments must tile [0, 1]. pseudolabel mode reads
/// {"id"?, "genre", "bpm", "segments": [{"start", "end", "label"}]}.
/// Records without an id are named "item-<line>".
std::vector<std::string> render_prompt_lines(const std::string& input_path,
                                             PromptMode mode);

void render_prompts_to_file(const std::string& input_path, PromptMode mode,
                            const std::string& out_path);

/// Parses caption text and re-serializes it in canonical form (quantized
/// boundaries, normalized spacing). Fixed point: canonical text maps to
/// itself.
std::string canonicalize_caption_text(const std::string& text);

void canonicalize_caption_file(const std::string& in_path,
                               const std::string& out_path);

struct RetrieveOptions {
  double window_s = 10.0;
  std::vector<std::size_t> k_values = {1, 5, 10};
};

/// Scores and ranks every text doc against every audio doc, writing one
/// ranked list per query. With a non-empty truth path, also evaluates
/// recall@K for each requested K plus median rank, written as metric-report
/// JSONL to `report_out_path`.
void retrieve_to_files(const std::string& text_path,
                       const std::string& audio_path,
                       const std::string& truth_path,
                       const RetrieveOptions& options,
                       const std::string& ranked_out_path,
                       const std::string& report_out_path);

/// Caption metrics over id-matched hyp/ref files. `metrics` may list any of
/// bleu, rouge, meteor together; bert and clap each require their own input
/// schema and must be requested alone. One metric-report line per metric, in
/// request order.
void eval_captions_to_file(const std::string& hyp_path,
                           const std::string& ref_path,
                           const std::vector<std::string>& metrics,
                           CaptionFieldMode mode, const std::string& out_path);

/// Ranking metrics for an existing ranked-list file against a truth mapping.
void eval_ranked_to_file(const std::string& ranked_path,
                         const std::string& truth_path,
                         const std::vector<std::size_t>& k_values,
                         const std::string& out_path);

StatsReport stats_from_file(const std::string& captions_path);

void stats_to_file(const std::string& captions_path,
                   const std::string& out_path);

struct CorpusValidation {
  std::size_t clip_count = 0;
  std::size_t dim = 0;
  ValidationReport report;
};

/// Loads and validates a clip corpus; structural errors (malformed JSONL,
/// duplicate ids, mixed dimensions) throw, value-level findings land in the
/// report.
CorpusValidation validate_corpus_file(const std::string& clips_path);

std::string validation_report_to_json(const CorpusValidation& validation);

}  // namespace tempocap
