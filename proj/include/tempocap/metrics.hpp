#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tempocap/caption.hpp"
#include "tempocap/embedding.hpp"
#include "tempocap/retrieval.hpp"

namespace tempocap {

/// Lowercased word list; never contains empty tokens.
struct TokenSequence {
  std::vector<std::string> tokens;

  bool operator==(const TokenSequence&) const = default;
};

/// Lowercases, splits on whitespace, strips leading/trailing punctuation per
/// token, and drops tokens that end up empty.
TokenSequence tokenize(const std::string& text);

/// Maps a token to its stem by stripping at most one suffix from
///   tion, ment, ness, ing, est, ed, es, er, ly, s, e
/// (longest first, listed order on equal length), provided at least three
/// characters remain and — for the bare "s" rule — the token does not end in
/// "ss". Deliberately tiny; documented so matches are reproducible.
std::string stem(const std::string& token);

/// Pooled n-gram counts for BLEU. matched[n-1] holds the reference-clipped
/// n-gram matches, total[n-1] the candidate n-gram count; hyp_len sums
/// hypothesis lengths, ref_len the closest reference length per hypothesis
/// (ties go to the shorter reference).
struct BleuStats {
  std::vector<std::int64_t> matched;
  std::vector<std::int64_t> total;
  std::int64_t hyp_len = 0;
  std::int64_t ref_len = 0;

  void accumulate(const BleuStats& other);
};

BleuStats bleu_stats(const TokenSequence& hyp,
                     const std::vector<TokenSequence>& refs, int max_n = 4);

/// BLEU from pooled counts: geometric mean over orders that have at least
/// one candidate n-gram, a 1e-9 numerator floor on matches, and brevity
/// penalty exp(min(0, 1 - ref_len/hyp_len)). Empty hypothesis scores 0.
double bleu_from_stats(const BleuStats& stats);

/// Sentence BLEU; corpus BLEU pools BleuStats across items instead of
/// averaging these values.
double bleu(const TokenSequence& hyp, const std::vector<TokenSequence>& refs,
            int max_n = 4);

std::size_t lcs_length(const TokenSequence& a, const TokenSequence& b);

/// LCS F1: P = LCS/|hyp|, R = LCS/|ref|, F = 2PR/(P+R); 0 when the LCS is
/// empty.
double rouge_l(const TokenSequence& hyp, const TokenSequence& ref);

/// METEOR without the synonym stage. Alignment is greedy left-to-right:
/// every hypothesis token takes the earliest unmatched reference position
/// with an exact match, then a second pass aligns leftover tokens by stem().
/// With m matches, P = m/|hyp|, R = m/|ref|,
///   F_mean = PR / (0.9 P + 0.1 R),
/// and score = F_mean * (1 - 0.5 (chunks/m)^3), where chunks counts maximal
/// runs of adjacent matches on both sides. 0 when m = 0.
double meteor_lite(const TokenSequence& hyp, const TokenSequence& ref);

struct BertScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Greedy embedding matching: precision = mean over hypothesis tokens of the
/// max cosine to any reference token, recall symmetric, F = 2PR/(P+R) with
/// F = 0 when P + R = 0. No IDF weighting. Throws on an empty side or a
/// dimension mismatch.
BertScore bert_score(const std::vector<EmbeddingVector>& hyp_tokens,
                     const std::vector<EmbeddingVector>& ref_tokens);

/// 1-based rank of each query's true item, in the order of `ranked`.
/// Throws when a query is missing from `truth` or its true item is absent
/// from the ranked entries.
std::vector<std::size_t> truth_ranks(
    const std::vector<RankedList>& ranked,
    const std::map<std::string, std::string>& truth);

/// Fraction of queries whose true item ranks within the top k.
double recall_at_k(const std::vector<RankedList>& ranked,
                   const std::map<std::string, std::string>& truth,
                   std::size_t k);

/// Median of the 1-based truth ranks; an even count averages the middle two.
double median_rank(const std::vector<RankedList>& ranked,
                   const std::map<std::string, std::string>& truth);

/// Plain cosine similarity between one audio and one text embedding; corpus
/// aggregation is the arithmetic mean over pairs.
double clap_score(const EmbeddingVector& audio, const EmbeddingVector& text);

/// One evaluated metric over a corpus. per_item is sorted by item id;
/// corpus_score follows the aggregation named in `variant` (pooled counts
/// for BLEU, arithmetic mean for everything else).
struct MetricReport {
  std::string name;
  std::string variant;
  double corpus_score = 0.0;
  std::vector<std::pair<std::string, double>> per_item;
};

struct StatsReport {
  std::size_t caption_count = 0;
  double mean_tokens_global = 0.0;
  double mean_tokens_total = 0.0;
  std::size_t vocabulary_size = 0;
  double mean_segments = 0.0;
  double mean_changes = 0.0;
};

/// Dataset statistics: token means over the global field and over all text
/// fields, corpus-wide distinct-token count, and mean segment/change counts.
StatsReport corpus_stats(const std::vector<SegmentedCaption>& captions);

/// Which caption fields feed text metrics: the global description alone, or
/// every prose field (global, segment texts, change texts) joined by
/// newlines. Markup — boundaries, tags, arrows — never reaches the metrics.
enum class CaptionFieldMode { global_only, complete };

std::string caption_metric_text(const SegmentedCaption& caption,
                                CaptionFieldMode mode);

/// Text metrics over id-matched caption corpora. `metric` is one of
/// "bleu", "rouge", "meteor". Every hypothesis id must appear among the
/// references; items are evaluated and aggregated in ascending id order.
MetricReport eval_caption_metric(
    const std::string& metric,
    const std::vector<std::pair<std::string, SegmentedCaption>>& hyp,
    const std::vector<std::pair<std::string, SegmentedCaption>>& ref,
    CaptionFieldMode mode);

/// Token-embedding document for bert: per-token vectors in token order.
struct TokenEmbeddingDoc {
  std::string id;
  std::vector<std::string> tokens;
  std::vector<EmbeddingVector> embeddings;
};

/// JSONL of {"id", "tokens": [string], "embeddings": [[number]]}; tokens and
/// embeddings must be equal-length and non-empty, dimensions uniform.
std::vector<TokenEmbeddingDoc> load_token_embedding_docs(
    const std::string& path);

/// BERT-score F1 over id-matched token-embedding files.
MetricReport eval_bert_metric(const std::vector<TokenEmbeddingDoc>& hyp,
                              const std::vector<TokenEmbeddingDoc>& ref);

/// Mean-cosine report over id-matched {"id", "embedding"} JSONL files.
MetricReport eval_clap_metric(
    const std::vector<std::pair<std::string, EmbeddingVector>>& audio,
    const std::vector<std::pair<std::string, EmbeddingVector>>& text);

/// JSONL of {"id", "embedding": [number]}; unique ids, uniform dimension.
std::vector<std::pair<std::string, EmbeddingVector>> load_embedding_docs(
    const std::string& path);

/// Retrieval metrics (R@K per requested K, then MedR) as MetricReports with
/// one per-item entry per query holding the truth rank-derived value.
std::vector<MetricReport> eval_ranked(
    const std::vector<RankedList>& ranked,
    const std::map<std::string, std::string>& truth,
    const std::vector<std::size_t>& k_values);

/// One-line JSON renderings; doubles carry 17 significant digits.
std::string metric_report_to_json(const MetricReport& report);
std::string stats_report_to_json(const StatsReport& report);

}  // namespace tempocap
