#pragma once

#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tempocap/embedding.hpp"
#include "tempocap/interval.hpp"

namespace tempocap {

/// Score of a caption/audio pair with no temporal overlap at all. Ranks
/// strictly below every finite score and serializes as the literal string
/// "irrelevant".
inline constexpr double kIrrelevantScore =
    -std::numeric_limits<double>::infinity();

/// One retrieval-side document: a set of (interval, embedding) parts for
/// either the text side or the audio side. Parts are stored sorted by
/// (start, end) — input order on ties — which fixes the summation order of
/// pair_score. Vectors are unit-normalized at construction; zero-norm
/// vectors are rejected.
class SegmentDoc {
 public:
  struct Part {
    TimeInterval interval;
    EmbeddingVector vector;
  };

  SegmentDoc(std::string id, std::vector<Part> parts);

  const std::string& id() const { return id_; }
  std::size_t dim() const { return dim_; }
  const std::vector<Part>& parts() const { return parts_; }
  const double* unit_vector(std::size_t part_index) const {
    return units_.data() + part_index * dim_;
  }

 private:
  std::string id_;
  std::vector<Part> parts_;
  std::size_t dim_;
  std::vector<double> units_;
};

/// Ranking of all items for one query: scores non-increasing, ties broken
/// by ascending item id, irrelevant sentinels last.
struct RankedList {
  std::string query_id;
  std::vector<std::pair<std::string, double>> entries;
};

/// Dense query-by-item score matrix.
class ScoreMatrix {
 public:
  ScoreMatrix(std::vector<std::string> query_ids,
              std::vector<std::string> item_ids, std::vector<double> scores);

  const std::vector<std::string>& query_ids() const { return query_ids_; }
  const std::vector<std::string>& item_ids() const { return item_ids_; }
  double at(std::size_t query, std::size_t item) const {
    return scores_[query * item_ids_.size() + item];
  }

 private:
  std::vector<std::string> query_ids_;
  std::vector<std::string> item_ids_;
  std::vector<double> scores_;
};

/// IoU-weighted average cosine similarity over all part pairs:
///   sum_ij w_ij cos(t_i, a_j) / sum_ij w_ij,  w_ij = interval IoU.
/// Returns kIrrelevantScore when the total weight is zero. The double sum
/// runs row-major over the docs' sorted parts, so the result is bit-stable
/// under permutations of either part list. Throws on dimension mismatch.
double pair_score(const SegmentDoc& text_doc, const SegmentDoc& audio_doc);

/// All-pairs pair_score. Throws on empty inputs or dimension mismatch.
ScoreMatrix score_matrix(const std::vector<SegmentDoc>& text_docs,
                         const std::vector<SegmentDoc>& audio_docs);

/// Ranking for one query: descending score, sentinel scores last, ties by
/// ascending item id. Throws when the query id is unknown.
RankedList rank_items(const ScoreMatrix& matrix, const std::string& query_id);

/// Rankings for every query in matrix order.
std::vector<RankedList> rank_all(const ScoreMatrix& matrix);

/// Loads SegmentDoc JSONL. Two record forms are accepted:
///   {"id", "parts": [{"start", "end", "embedding"}]}          — explicit
///   {"id", "duration_s", "embeddings": [[...], ...]}          — windowed
/// The windowed form derives intervals from uniform_windows(duration_s,
/// window_s) and requires exactly one embedding per window. Ids must be
/// unique; the embedding dimension must be uniform across the file.
std::vector<SegmentDoc> load_segment_docs(const std::string& path,
                                          double window_s = 10.0);

/// One ranked list as a JSONL object; finite scores carry 17 significant
/// digits, sentinels the string "irrelevant".
std::string ranked_list_to_jsonl(const RankedList& ranked);

/// Reads ranked lists back ("irrelevant" maps to the sentinel).
std::vector<RankedList> load_ranked_lists(const std::string& path);

/// Ground-truth mapping JSONL: {"query_id", "item_id"} per line. Duplicate
/// query ids are an error.
std::map<std::string, std::string> load_truth(const std::string& path);

}  // namespace tempocap
