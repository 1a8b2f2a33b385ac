#include "tempocap/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <sstream>
#include <unordered_map>

#include "tempocap/error.hpp"
#include "tempocap/jsonio.hpp"

namespace tempocap {

TokenSequence tokenize(const std::string& text) {
  TokenSequence out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() &&
           std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
    std::size_t start = i;
    while (i < text.size() &&
           !std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
    if (i == start) continue;
    std::size_t lo = start, hi = i;
    while (lo < hi && std::ispunct(static_cast<unsigned char>(text[lo]))) ++lo;
    while (hi > lo && std::ispunct(static_cast<unsigned char>(text[hi - 1])))
      --hi;
    if (lo == hi) continue;
    std::string token;
    token.reserve(hi - lo);
    for (std::size_t k = lo; k < hi; ++k)
      token.push_back(static_cast<char>(
          std::tolower(static_cast<unsigned char>(text[k]))));
    out.tokens.push_back(std::move(token));
  }
  return out;
}

std::string stem(const std::string& token) {
  static const char* kSuffixes[] = {"tion", "ment", "ness", "ing", "est",
                                    "ed",   "es",   "er",   "ly",  "s",
                                    "e"};
  for (const char* suffix : kSuffixes) {
    std::size_t len = std::char_traits<char>::length(suffix);
    if (token.size() < len + 3) continue;
    if (token.compare(token.size() - len, len, suffix) != 0) continue;
    if (std::string_view(suffix) == "s" &&
        token.size() >= 2 && token[token.size() - 2] == 's')
      continue;
    return token.substr(0, token.size() - len);
  }
  return token;
}

void BleuStats::accumulate(const BleuStats& other) {
  if (matched.empty()) {
    *this = other;
    return;
  }
  if (other.matched.size() != matched.size())
    throw Error(ErrorKind::invalid_argument,
                "cannot pool BLEU counts of different orders");
  for (std::size_t n = 0; n < matched.size(); ++n) {
    matched[n] += other.matched[n];
    total[n] += other.total[n];
  }
  hyp_len += other.hyp_len;
  ref_len += other.ref_len;
}

namespace {

// n-gram histogram keyed by tokens joined with an unprintable separator.
std::unordered_map<std::string, std::int64_t> ngram_counts(
    const TokenSequence& seq, std::size_t n) {
  std::unordered_map<std::string, std::int64_t> counts;
  if (seq.tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= seq.tokens.size(); ++i) {
    std::string key;
    for (std::size_t k = 0; k < n; ++k) {
      if (k) key.push_back('\x1f');
      key += seq.tokens[i + k];
    }
    ++counts[key];
  }
  return counts;
}

}  // namespace

BleuStats bleu_stats(const TokenSequence& hyp,
                     const std::vector<TokenSequence>& refs, int max_n) {
  if (max_n < 1)
    throw Error(ErrorKind::invalid_argument, "BLEU order must be at least 1");
  if (refs.empty())
    throw Error(ErrorKind::invalid_argument, "BLEU needs a reference");
  BleuStats stats;
  stats.matched.assign(static_cast<std::size_t>(max_n), 0);
  stats.total.assign(static_cast<std::size_t>(max_n), 0);
  stats.hyp_len = static_cast<std::int64_t>(hyp.tokens.size());
  const TokenSequence* closest = &refs.front();
  std::int64_t best_gap =
      std::llabs(static_cast<std::int64_t>(refs.front().tokens.size()) -
                 stats.hyp_len);
  for (const TokenSequence& ref : refs) {
    std::int64_t gap =
        std::llabs(static_cast<std::int64_t>(ref.tokens.size()) -
                   stats.hyp_len);
    if (gap < best_gap ||
        (gap == best_gap && ref.tokens.size() < closest->tokens.size())) {
      best_gap = gap;
      closest = &ref;
    }
  }
  stats.ref_len = static_cast<std::int64_t>(closest->tokens.size());
  for (int n = 1; n <= max_n; ++n) {
    auto hyp_counts = ngram_counts(hyp, static_cast<std::size_t>(n));
    std::unordered_map<std::string, std::int64_t> clip;
    for (const TokenSequence& ref : refs)
      for (const auto& [key, count] :
           ngram_counts(ref, static_cast<std::size_t>(n))) {
        auto [it, inserted] = clip.emplace(key, count);
        if (!inserted) it->second = std::max(it->second, count);
      }
    for (const auto& [key, count] : hyp_counts) {
      stats.total[static_cast<std::size_t>(n - 1)] += count;
      auto it = clip.find(key);
      if (it != clip.end())
        stats.matched[static_cast<std::size_t>(n - 1)] +=
            std::min(count, it->second);
    }
  }
  return stats;
}

double bleu_from_stats(const BleuStats& stats) {
  if (stats.matched.empty())
    throw Error(ErrorKind::invalid_argument, "empty BLEU counts");
  if (stats.hyp_len == 0) return 0.0;
  double log_sum = 0.0;
  int orders = 0;
  for (std::size_t n = 0; n < stats.matched.size(); ++n) {
    if (stats.total[n] == 0) continue;  // hypothesis shorter than the order
    double numerator = std::max(static_cast<double>(stats.matched[n]), 1e-9);
    log_sum += std::log(numerator / static_cast<double>(stats.total[n]));
    ++orders;
  }
  if (orders == 0) return 0.0;
  double geo = std::exp(log_sum / orders);
  double bp = std::exp(std::min(
      0.0, 1.0 - static_cast<double>(stats.ref_len) /
                     static_cast<double>(stats.hyp_len)));
  return bp * geo;
}

double bleu(const TokenSequence& hyp, const std::vector<TokenSequence>& refs,
            int max_n) {
  return bleu_from_stats(bleu_stats(hyp, refs, max_n));
}

std::size_t lcs_length(const TokenSequence& a, const TokenSequence& b) {
  const auto& x = a.tokens;
  const auto& y = b.tokens;
  if (x.empty() || y.empty()) return 0;
  std::vector<std::size_t> prev(y.size() + 1, 0), cur(y.size() + 1, 0);
  for (std::size_t i = 1; i <= x.size(); ++i) {
    for (std::size_t j = 1; j <= y.size(); ++j) {
      if (x[i - 1] == y[j - 1])
        cur[j] = prev[j - 1] + 1;
      else
        cur[j] = std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[y.size()];
}

double rouge_l(const TokenSequence& hyp, const TokenSequence& ref) {
  std::size_t lcs = lcs_length(hyp, ref);
  if (lcs == 0) return 0.0;
  double p = static_cast<double>(lcs) / static_cast<double>(hyp.tokens.size());
  double r = static_cast<double>(lcs) / static_cast<double>(ref.tokens.size());
  return 2.0 * p * r / (p + r);
}

double meteor_lite(const TokenSequence& hyp, const TokenSequence& ref) {
  const auto& h = hyp.tokens;
  const auto& r = ref.tokens;
  if (h.empty() || r.empty()) return 0.0;
  std::vector<std::ptrdiff_t> match_of(h.size(), -1);
  std::vector<bool> ref_used(r.size(), false);
  for (std::size_t i = 0; i < h.size(); ++i)
    for (std::size_t j = 0; j < r.size(); ++j)
      if (!ref_used[j] && r[j] == h[i]) {
        match_of[i] = static_cast<std::ptrdiff_t>(j);
        ref_used[j] = true;
        break;
      }
  std::vector<std::string> h_stem(h.size()), r_stem(r.size());
  for (std::size_t i = 0; i < h.size(); ++i) h_stem[i] = stem(h[i]);
  for (std::size_t j = 0; j < r.size(); ++j) r_stem[j] = stem(r[j]);
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (match_of[i] >= 0) continue;
    for (std::size_t j = 0; j < r.size(); ++j)
      if (!ref_used[j] && r_stem[j] == h_stem[i]) {
        match_of[i] = static_cast<std::ptrdiff_t>(j);
        ref_used[j] = true;
        break;
      }
  }
  std::size_t m = 0;
  std::size_t chunks = 0;
  std::ptrdiff_t prev_i = -2, prev_j = -2;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (match_of[i] < 0) continue;
    ++m;
    if (static_cast<std::ptrdiff_t>(i) != prev_i + 1 ||
        match_of[i] != prev_j + 1)
      ++chunks;
    prev_i = static_cast<std::ptrdiff_t>(i);
    prev_j = match_of[i];
  }
  if (m == 0) return 0.0;
  double p = static_cast<double>(m) / static_cast<double>(h.size());
  double rr = static_cast<double>(m) / static_cast<double>(r.size());
  double f_mean = p * rr / (0.9 * p + 0.1 * rr);
  double frag = static_cast<double>(chunks) / static_cast<double>(m);
  double penalty = 0.5 * frag * frag * frag;
  return f_mean * (1.0 - penalty);
}

BertScore bert_score(const std::vector<EmbeddingVector>& hyp_tokens,
                     const std::vector<EmbeddingVector>& ref_tokens) {
  if (hyp_tokens.empty() || ref_tokens.empty())
    throw Error(ErrorKind::invalid_argument,
                "bert_score needs tokens on both sides");
  std::size_t dim = hyp_tokens.front().dim();
  for (const EmbeddingVector& v : hyp_tokens)
    if (v.dim() != dim)
      throw Error(ErrorKind::invalid_argument,
                  "bert_score token dimensions differ");
  for (const EmbeddingVector& v : ref_tokens)
    if (v.dim() != dim)
      throw Error(ErrorKind::invalid_argument,
                  "bert_score token dimensions differ");
  auto side = [](const std::vector<EmbeddingVector>& from,
                 const std::vector<EmbeddingVector>& to) {
    double sum = 0.0;
    for (const EmbeddingVector& f : from) {
      double best = -1.0;
      for (const EmbeddingVector& t : to) best = std::max(best, cosine(f, t));
      sum += best;
    }
    return sum / static_cast<double>(from.size());
  };
  BertScore score;
  score.precision = side(hyp_tokens, ref_tokens);
  score.recall = side(ref_tokens, hyp_tokens);
  double denom = score.precision + score.recall;
  score.f1 = denom == 0.0 ? 0.0 : 2.0 * score.precision * score.recall / denom;
  return score;
}

std::vector<std::size_t> truth_ranks(
    const std::vector<RankedList>& ranked,
    const std::map<std::string, std::string>& truth) {
  if (ranked.empty())
    throw Error(ErrorKind::invalid_argument, "no ranked lists");
  std::vector<std::size_t> ranks;
  ranks.reserve(ranked.size());
  for (const RankedList& list : ranked) {
    auto it = truth.find(list.query_id);
    if (it == truth.end())
      throw Error(ErrorKind::invalid_argument,
                  "no truth mapping for query '" + list.query_id + "'");
    const std::string& item = it->second;
    std::size_t rank = 0;
    for (std::size_t i = 0; i < list.entries.size(); ++i)
      if (list.entries[i].first == item) {
        rank = i + 1;
        break;
      }
    if (rank == 0)
      throw Error(ErrorKind::invalid_argument,
                  "truth item '" + item + "' is not ranked for query '" +
                      list.query_id + "'");
    ranks.push_back(rank);
  }
  return ranks;
}

double recall_at_k(const std::vector<RankedList>& ranked,
                   const std::map<std::string, std::string>& truth,
                   std::size_t k) {
  if (k < 1)
    throw Error(ErrorKind::invalid_argument, "recall cutoff must be >= 1");
  std::vector<std::size_t> ranks = truth_ranks(ranked, truth);
  std::size_t hits = 0;
  for (std::size_t rank : ranks)
    if (rank <= k) ++hits;
  return static_cast<double>(hits) / static_cast<double>(ranks.size());
}

double median_rank(const std::vector<RankedList>& ranked,
                   const std::map<std::string, std::string>& truth) {
  std::vector<std::size_t> ranks = truth_ranks(ranked, truth);
  std::sort(ranks.begin(), ranks.end());
  std::size_t n = ranks.size();
  if (n % 2 == 1) return static_cast<double>(ranks[n / 2]);
  return (static_cast<double>(ranks[n / 2 - 1]) +
          static_cast<double>(ranks[n / 2])) /
         2.0;
}

double clap_score(const EmbeddingVector& audio, const EmbeddingVector& text) {
  return cosine(audio, text);
}

StatsReport corpus_stats(const std::vector<SegmentedCaption>& captions) {
  if (captions.empty())
    throw Error(ErrorKind::domain, "empty caption corpus");
  StatsReport report;
  report.caption_count = captions.size();
  std::set<std::string> vocabulary;
  std::size_t global_tokens = 0, total_tokens = 0, segments = 0, changes = 0;
  for (const SegmentedCaption& caption : captions) {
    TokenSequence g = tokenize(caption.global());
    global_tokens += g.tokens.size();
    total_tokens += g.tokens.size();
    for (std::string& t : g.tokens) vocabulary.insert(std::move(t));
    for (const SegmentEntry& seg : caption.segments()) {
      TokenSequence s = tokenize(seg.text);
      total_tokens += s.tokens.size();
      for (std::string& t : s.tokens) vocabulary.insert(std::move(t));
    }
    for (const ChangeEntry& change : caption.changes()) {
      TokenSequence c = tokenize(change.text);
      total_tokens += c.tokens.size();
      for (std::string& t : c.tokens) vocabulary.insert(std::move(t));
    }
    segments += caption.segments().size();
    changes += caption.changes().size();
  }
  double n = static_cast<double>(captions.size());
  report.mean_tokens_global = static_cast<double>(global_tokens) / n;
  report.mean_tokens_total = static_cast<double>(total_tokens) / n;
  report.vocabulary_size = vocabulary.size();
  report.mean_segments = static_cast<double>(segments) / n;
  report.mean_changes = static_cast<double>(changes) / n;
  return report;
}

std::string caption_metric_text(const SegmentedCaption& caption,
                                CaptionFieldMode mode) {
  if (mode == CaptionFieldMode::global_only) return caption.global();
  std::string out;
  auto append = [&out](const std::string& piece) {
    if (piece.empty()) return;
    if (!out.empty()) out.push_back('\n');
    out += piece;
  };
  append(caption.global());
  for (const SegmentEntry& seg : caption.segments()) append(seg.text);
  for (const ChangeEntry& change : caption.changes()) append(change.text);
  return out;
}

namespace {

template <typename T>
std::map<std::string, T> indexed_by_id(
    const std::vector<std::pair<std::string, T>>& items, const char* side) {
  std::map<std::string, T> by_id;
  for (const auto& [id, value] : items)
    if (!by_id.emplace(id, value).second)
      throw Error(ErrorKind::invalid_argument,
                  std::string("duplicate ") + side + " id '" + id + "'");
  return by_id;
}

double mean_of(const std::vector<std::pair<std::string, double>>& per_item) {
  double sum = 0.0;
  for (const auto& [id, score] : per_item) sum += score;
  return sum / static_cast<double>(per_item.size());
}

}  // namespace

MetricReport eval_caption_metric(
    const std::string& metric,
    const std::vector<std::pair<std::string, SegmentedCaption>>& hyp,
    const std::vector<std::pair<std::string, SegmentedCaption>>& ref,
    CaptionFieldMode mode) {
  if (hyp.empty())
    throw Error(ErrorKind::invalid_argument, "no hypothesis captions");
  auto hyp_by_id = indexed_by_id(hyp, "hypothesis");
  auto ref_by_id = indexed_by_id(ref, "reference");
  MetricReport report;
  BleuStats pooled;
  for (const auto& [id, hyp_caption] : hyp_by_id) {
    auto it = ref_by_id.find(id);
    if (it == ref_by_id.end())
      throw Error(ErrorKind::invalid_argument,
                  "no reference caption for id '" + id + "'");
    TokenSequence h = tokenize(caption_metric_text(hyp_caption, mode));
    TokenSequence r = tokenize(caption_metric_text(it->second, mode));
    double score;
    if (metric == "bleu") {
      BleuStats stats = bleu_stats(h, {r});
      score = bleu_from_stats(stats);
      pooled.accumulate(stats);
    } else if (metric == "rouge") {
      score = rouge_l(h, r);
    } else if (metric == "meteor") {
      score = meteor_lite(h, r);
    } else {
      throw Error(ErrorKind::invalid_argument,
                  "unknown metric '" + metric + "'");
    }
    report.per_item.emplace_back(id, score);
  }
  if (metric == "bleu") {
    report.name = "bleu";
    report.variant =
        "bleu-4: clipped n-gram precision, closest-ref brevity penalty, "
        "1e-9 match floor; corpus by pooled counts";
    report.corpus_score = bleu_from_stats(pooled);
  } else if (metric == "rouge") {
    report.name = "rouge_l";
    report.variant = "rouge-l f1 (beta=1); corpus by arithmetic mean";
    report.corpus_score = mean_of(report.per_item);
  } else {
    report.name = "meteor_lite";
    report.variant =
        "meteor without synonyms: exact then stemmed alignment, alpha=0.9 "
        "beta=3 gamma=0.5; corpus by arithmetic mean";
    report.corpus_score = mean_of(report.per_item);
  }
  return report;
}

std::vector<TokenEmbeddingDoc> load_token_embedding_docs(
    const std::string& path) {
  std::vector<TokenEmbeddingDoc> docs;
  std::set<std::string> seen;
  std::size_t dim = 0;
  for_each_jsonl_record(path, [&](int line, const nlohmann::json& rec) {
    TokenEmbeddingDoc doc;
    doc.id = require_string(rec, "id", line);
    if (!seen.insert(doc.id).second)
      throw Error(ErrorKind::parse, "duplicate doc id '" + doc.id + "'", line);
    const auto& tokens = require_key(rec, "tokens", line);
    if (!tokens.is_array() || tokens.empty())
      throw Error(ErrorKind::parse, "\"tokens\" must be a non-empty array",
                  line);
    for (const auto& t : tokens) {
      if (!t.is_string() || t.get<std::string>().empty())
        throw Error(ErrorKind::parse, "tokens must be non-empty strings",
                    line);
      doc.tokens.push_back(t.get<std::string>());
    }
    const auto& embeddings = require_key(rec, "embeddings", line);
    if (!embeddings.is_array() || embeddings.size() != doc.tokens.size())
      throw Error(ErrorKind::parse,
                  "\"embeddings\" must have one row per token", line);
    for (const auto& row : embeddings) {
      if (!row.is_array() || row.empty())
        throw Error(ErrorKind::parse,
                    "embedding rows must be non-empty arrays", line);
      std::vector<double> values;
      values.reserve(row.size());
      for (const auto& v : row) {
        if (!v.is_number())
          throw Error(ErrorKind::parse, "non-numeric embedding value", line);
        double d = v.get<double>();
        if (!std::isfinite(d))
          throw Error(ErrorKind::parse, "non-finite embedding value", line);
        values.push_back(d);
      }
      if (dim == 0)
        dim = values.size();
      else if (values.size() != dim)
        throw Error(ErrorKind::parse,
                    "embedding dimension " + std::to_string(values.size()) +
                        " != " + std::to_string(dim),
                    line);
      doc.embeddings.emplace_back(std::move(values));
    }
    docs.push_back(std::move(doc));
  });
  if (docs.empty())
    throw Error(ErrorKind::domain, "empty token-embedding file: " + path);
  return docs;
}

MetricReport eval_bert_metric(const std::vector<TokenEmbeddingDoc>& hyp,
                              const std::vector<TokenEmbeddingDoc>& ref) {
  if (hyp.empty())
    throw Error(ErrorKind::invalid_argument, "no hypothesis docs");
  std::map<std::string, const TokenEmbeddingDoc*> ref_by_id;
  for (const TokenEmbeddingDoc& doc : ref) ref_by_id[doc.id] = &doc;
  std::map<std::string, const TokenEmbeddingDoc*> hyp_by_id;
  for (const TokenEmbeddingDoc& doc : hyp)
    if (!hyp_by_id.emplace(doc.id, &doc).second)
      throw Error(ErrorKind::invalid_argument,
                  "duplicate hypothesis id '" + doc.id + "'");
  MetricReport report;
  report.name = "bert";
  report.variant =
      "bert-score: greedy max-cosine token matching, no idf; per-item f1; "
      "corpus by arithmetic mean";
  for (const auto& [id, doc] : hyp_by_id) {
    auto it = ref_by_id.find(id);
    if (it == ref_by_id.end())
      throw Error(ErrorKind::invalid_argument,
                  "no reference doc for id '" + id + "'");
    report.per_item.emplace_back(
        id, bert_score(doc->embeddings, it->second->embeddings).f1);
  }
  report.corpus_score = mean_of(report.per_item);
  return report;
}

std::vector<std::pair<std::string, EmbeddingVector>> load_embedding_docs(
    const std::string& path) {
  std::vector<std::pair<std::string, EmbeddingVector>> docs;
  std::set<std::string> seen;
  std::size_t dim = 0;
  for_each_jsonl_record(path, [&](int line, const nlohmann::json& rec) {
    std::string id = require_string(rec, "id", line);
    if (!seen.insert(id).second)
      throw Error(ErrorKind::parse, "duplicate doc id '" + id + "'", line);
    const auto& arr = require_key(rec, "embedding", line);
    if (!arr.is_array() || arr.empty())
      throw Error(ErrorKind::parse, "\"embedding\" must be a non-empty array",
                  line);
    std::vector<double> values;
    values.reserve(arr.size());
    for (const auto& v : arr) {
      if (!v.is_number())
        throw Error(ErrorKind::parse, "non-numeric embedding value", line);
      double d = v.get<double>();
      if (!std::isfinite(d))
        throw Error(ErrorKind::parse, "non-finite embedding value", line);
      values.push_back(d);
    }
    if (dim == 0)
      dim = values.size();
    else if (values.size() != dim)
      throw Error(ErrorKind::parse,
                  "embedding dimension " + std::to_string(values.size()) +
                      " != " + std::to_string(dim),
                  line);
    docs.emplace_back(std::move(id), EmbeddingVector(std::move(values)));
  });
  if (docs.empty())
    throw Error(ErrorKind::domain, "empty embedding file: " + path);
  return docs;
}

MetricReport eval_clap_metric(
    const std::vector<std::pair<std::string, EmbeddingVector>>& audio,
    const std::vector<std::pair<std::string, EmbeddingVector>>& text) {
  if (audio.empty())
    throw Error(ErrorKind::invalid_argument, "no audio embeddings");
  auto audio_by_id = indexed_by_id(audio, "audio");
  auto text_by_id = indexed_by_id(text, "text");
  MetricReport report;
  report.name = "clap";
  report.variant = "audio-text cosine; corpus by arithmetic mean";
  for (const auto& [id, audio_vec] : audio_by_id) {
    auto it = text_by_id.find(id);
    if (it == text_by_id.end())
      throw Error(ErrorKind::invalid_argument,
                  "no text embedding for id '" + id + "'");
    report.per_item.emplace_back(id, clap_score(audio_vec, it->second));
  }
  report.corpus_score = mean_of(report.per_item);
  return report;
}

std::vector<MetricReport> eval_ranked(
    const std::vector<RankedList>& ranked,
    const std::map<std::string, std::string>& truth,
    const std::vector<std::size_t>& k_values) {
  std::vector<std::size_t> ranks = truth_ranks(ranked, truth);
  std::vector<std::pair<std::string, std::size_t>> by_query;
  by_query.reserve(ranked.size());
  for (std::size_t i = 0; i < ranked.size(); ++i)
    by_query.emplace_back(ranked[i].query_id, ranks[i]);
  std::sort(by_query.begin(), by_query.end());
  std::vector<MetricReport> reports;
  for (std::size_t k : k_values) {
    if (k < 1)
      throw Error(ErrorKind::invalid_argument, "recall cutoff must be >= 1");
    MetricReport report;
    report.name = "recall@" + std::to_string(k);
    report.variant =
        "fraction of queries whose true item ranks in the top " +
        std::to_string(k) + "; corpus by arithmetic mean";
    for (const auto& [query, rank] : by_query)
      report.per_item.emplace_back(query, rank <= k ? 1.0 : 0.0);
    report.corpus_score = mean_of(report.per_item);
    reports.push_back(std::move(report));
  }
  MetricReport medr;
  medr.name = "medr";
  medr.variant =
      "median 1-based rank of the true item; even counts average the middle "
      "two";
  for (const auto& [query, rank] : by_query)
    medr.per_item.emplace_back(query, static_cast<double>(rank));
  medr.corpus_score = median_rank(ranked, truth);
  reports.push_back(std::move(medr));
  return reports;
}

std::string metric_report_to_json(const MetricReport& report) {
  std::ostringstream out;
  out << "{\"metric\":" << json_quote(report.name)
      << ",\"variant\":" << json_quote(report.variant)
      << ",\"corpus_score\":" << format_double17(report.corpus_score)
      << ",\"per_item\":[";
  for (std::size_t i = 0; i < report.per_item.size(); ++i) {
    if (i) out << ',';
    out << "{\"id\":" << json_quote(report.per_item[i].first)
        << ",\"score\":" << format_double17(report.per_item[i].second) << '}';
  }
  out << "]}";
  return out.str();
}

std::string stats_report_to_json(const StatsReport& report) {
  std::ostringstream out;
  out << "{\"caption_count\":" << report.caption_count
      << ",\"mean_tokens_global\":" << format_double17(report.mean_tokens_global)
      << ",\"mean_tokens_total\":" << format_double17(report.mean_tokens_total)
      << ",\"vocabulary_size\":" << report.vocabulary_size
      << ",\"mean_segments\":" << format_double17(report.mean_segments)
      << ",\"mean_changes\":" << format_double17(report.mean_changes) << '}';
  return out.str();
}

}  // namespace tempocap
