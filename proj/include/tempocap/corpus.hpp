#pragma once

#include <map>
#include <string>
#include <vector>

#include "tempocap/embedding.hpp"

namespace tempocap {

/// One source music clip: caption text, duration in seconds, and the
/// sentence-embedding vector of the caption.
struct ClipRecord {
  std::string id;
  std::string caption;
  double duration_s = 0.0;
  EmbeddingVector embedding;

  bool operator==(const ClipRecord& other) const = default;
};

struct ValidationIssue {
  std::string record_id;
  std::string message;
};

/// Result of validate_corpus: ok holds exactly when issues is empty.
struct ValidationReport {
  bool ok = true;
  std::vector<ValidationIssue> issues;
};

/// Immutable clip collection with uniform embedding dimension and unique ids.
/// Unit-normalized embeddings are cached at construction for the sampler and
/// retrieval paths; all readers are safe concurrently.
class ClipCorpus {
 public:
  /// Enforces the structural invariants: non-empty, uniform embedding
  /// dimension, unique ids. Value-level checks (finite values, positive
  /// duration, non-empty caption, nonzero norm) live in validate_corpus so
  /// that violating corpora can still be constructed and reported on.
  explicit ClipCorpus(std::vector<ClipRecord> clips,
                      std::map<std::string, std::string> metadata = {});

  std::size_t size() const { return clips_.size(); }
  std::size_t dim() const { return dim_; }
  const std::vector<ClipRecord>& clips() const { return clips_; }
  const ClipRecord& clip(std::size_t index) const { return clips_[index]; }
  const std::map<std::string, std::string>& metadata() const {
    return metadata_;
  }

  /// Index of the clip with `id`, or -1 when absent.
  long index_of(const std::string& id) const;

  /// Unit-normalized embedding of clip `index`, contiguous `dim()` doubles.
  /// Throws Error{invalid_argument} if that clip has a zero-norm embedding.
  const double* unit_embedding(std::size_t index) const;

 private:
  std::vector<ClipRecord> clips_;
  std::size_t dim_;
  std::map<std::string, std::string> metadata_;
  std::vector<double> unit_matrix_;
  std::vector<bool> zero_norm_;
  std::map<std::string, std::size_t> index_;
};

/// Loads a clip corpus from JSONL: one object per line with keys `id`,
/// `caption`, `duration_s`, `embedding`. An optional first line of the form
/// {"metadata": {...}} carries corpus metadata. Rejects malformed lines,
/// duplicate ids, dimension mismatches, non-finite values, non-positive
/// durations, empty captions, zero-norm embeddings, and empty corpora, all
/// with 1-based line numbers where applicable.
ClipCorpus load_clip_corpus(const std::string& path);

/// Same contract over an in-memory JSONL buffer.
ClipCorpus load_clip_corpus_from_string(const std::string& content);

/// Serializes the corpus back to JSONL. Embedding values and durations are
/// written with 17 significant digits, so reload is bit-exact.
void save_clip_corpus(const ClipCorpus& corpus, const std::string& path);

/// Re-checks every invariant; violations become report entries rather than
/// exceptions. Idempotent.
ValidationReport validate_corpus(const ClipCorpus& corpus);

}  // namespace tempocap
