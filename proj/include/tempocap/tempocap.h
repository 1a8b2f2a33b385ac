#ifndef TEMPOCAP_H
#define TEMPOCAP_H

/* C interface of the tempocap shared library.
 *
 * Conventions: every fallible call returns a tc_status; non-TC_OK results
 * leave a human-readable message in tc_last_error() (thread-local). Output
 * strings are heap-allocated and must be released with tc_string_free();
 * opaque handles with their matching *_free(). NULL handle/required-pointer
 * arguments are reported as TC_ERR_INVALID_ARGUMENT. Path-taking calls do
 * all file I/O inside the library so diagnostics carry file line numbers.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define TEMPOCAP_VERSION "0.1.0"

typedef enum tc_status {
  TC_OK = 0,
  TC_ERR_INVALID_ARGUMENT = 1,
  TC_ERR_PARSE = 2,
  TC_ERR_IO = 3,
  TC_ERR_DOMAIN = 4
} tc_status;

/* Message of the most recent failure on this thread; never NULL. */
const char* tc_last_error(void);

/* The TEMPOCAP_VERSION string the library was built from. */
const char* tc_version(void);

/* Releases a string returned through a char** out-parameter. NULL is a
 * no-op. */
void tc_string_free(char* text);

/* ---- clip corpora -------------------------------------------------- */

typedef struct tc_corpus tc_corpus;

/* Loads clip JSONL: one {"id", "caption", "duration_s", "embedding"} object
 * per line, optionally preceded by a {"metadata": {...}} header line. */
tc_status tc_corpus_load(const char* path, tc_corpus** out);
void tc_corpus_free(tc_corpus* corpus);
size_t tc_corpus_size(const tc_corpus* corpus);
size_t tc_corpus_dim(const tc_corpus* corpus);

/* Value-level validation findings as a JSON object
 * {"clips", "dim", "ok", "issues": [{"id", "message"}]}. issue_count may be
 * NULL. */
tc_status tc_corpus_validate(const tc_corpus* corpus, char** report_json,
                             size_t* issue_count);

/* One-call form: load + validate a clip file. */
tc_status tc_validate_file(const char* clips_path, char** report_json,
                           size_t* issue_count);

/* ---- composition --------------------------------------------------- */

typedef struct tc_compose_opts {
  uint64_t seed;           /* generator seed; default 0 */
  size_t count;            /* plans to emit; default 5000 */
  double temperature;      /* softmax temperature; default 1.0 */
  int force_include_seed;  /* nonzero: seed clip always drawn first */
} tc_compose_opts;

/* Fills in the defaults above. */
void tc_compose_opts_init(tc_compose_opts* opts);

/* Writes `count` plan records (with rendered captions) as JSONL. Identical
 * corpus + options give byte-identical files. opts NULL means defaults. */
tc_status tc_compose(const tc_corpus* corpus, const tc_compose_opts* opts,
                     const char* out_path);

/* One-call form over a clip file. */
tc_status tc_compose_file(const char* clips_path, const tc_compose_opts* opts,
                          const char* out_path);

/* ---- segmented captions -------------------------------------------- */

typedef struct tc_caption tc_caption;

/* Parses segmented-caption text (global lines, "[S%-E%] text" segment
 * lines, "-> k: text" change lines). */
tc_status tc_caption_parse(const char* text, tc_caption** out);
void tc_caption_free(tc_caption* caption);
size_t tc_caption_segment_count(const tc_caption* caption);
size_t tc_caption_change_count(const tc_caption* caption);

/* Canonical text form (quantized boundaries, normalized spacing). */
tc_status tc_caption_serialize(const tc_caption* caption, char** out_text);

/* Lossless JSONL record; id may be NULL to omit the "id" key. */
tc_status tc_caption_to_json(const tc_caption* caption, const char* id,
                             char** out_json);
tc_status tc_caption_from_json(const char* json_record, tc_caption** out);

/* Rewrites a caption text file in canonical form. */
tc_status tc_canonicalize_file(const char* in_path, const char* out_path);

/* ---- prompt rendering ---------------------------------------------- */

/* Paraphrase instruction for a caption whose segments tile [0, 1]. */
tc_status tc_paraphrase_prompt(const tc_caption* caption, char** out_text);

/* Pseudo-label instruction; segments_json is a JSON array of
 * {"start", "end", "label"} objects with fractional boundaries. */
tc_status tc_pseudolabel_prompt(const char* genre, double bpm,
                                const char* segments_json, char** out_text);

/* File driver: one {"id", "prompt"} line per input record. mode is
 * "paraphrase" (caption records) or "pseudolabel" ({"genre", "bpm",
 * "segments"} records). */
tc_status tc_render_prompts_file(const char* input_path, const char* mode,
                                 const char* out_path);

/* ---- retrieval ----------------------------------------------------- */

/* Ranks every text doc against every audio doc (IoU-weighted cosine) and
 * writes one ranked list per query. Doc files hold either explicit
 * {"id", "parts": [{"start", "end", "embedding"}]} records or windowed
 * {"id", "duration_s", "embeddings": [[...]]} records; window_s sets the
 * window length (seconds) for the latter, <= 0 meaning the 10 s default.
 * With a non-NULL truth_path ({"query_id", "item_id"} JSONL), also writes
 * recall@K for each K in k_csv (e.g. "1,5,10"; NULL for the default) plus
 * median rank to report_out_path. */
tc_status tc_retrieve_file(const char* text_docs_path,
                           const char* audio_docs_path,
                           const char* truth_path, const char* k_csv,
                           double window_s, const char* ranked_out_path,
                           const char* report_out_path);

/* ---- evaluation ---------------------------------------------------- */

/* Caption metrics over id-matched hyp/ref files. metrics_csv lists any of
 * bleu, rouge, meteor together; "bert" (token-embedding records) and "clap"
 * ({"id", "embedding"} records) must be requested alone. mode is "global"
 * or "complete". Writes one metric-report line per metric. */
tc_status tc_eval_captions_file(const char* hyp_path, const char* ref_path,
                                const char* metrics_csv, const char* mode,
                                const char* out_path);

/* Ranking metrics for an existing ranked-list file. */
tc_status tc_eval_ranked_file(const char* ranked_path, const char* truth_path,
                              const char* k_csv, const char* out_path);

/* Dataset statistics over a caption JSONL file, written as one JSON line. */
tc_status tc_stats_file(const char* captions_path, const char* out_path);

#ifdef __cplusplus
}
#endif

#endif /* TEMPOCAP_H */
