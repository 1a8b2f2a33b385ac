#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tempocap/corpus.hpp"
#include "tempocap/rng.hpp"

namespace tempocap {

/// Discrete distribution aligned with corpus clip order.
/// Invariant: non-negative weights summing to 1 within 1e-9.
class ProbabilityVector {
 public:
  explicit ProbabilityVector(std::vector<double> weights);

  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }

 private:
  std::vector<double> weights_;
};

struct PlanMember {
  std::string clip_id;
  double length_s = 0.0;

  bool operator==(const PlanMember& other) const = default;
};

/// One synthetic full song: the seed clip it was grown from, the ordered
/// member clips with their sampled lengths, and the derived relative
/// boundaries (member count + 1 fractions, strictly increasing from 0 to 1).
struct CompositionPlan {
  std::string seed_id;
  std::vector<PlanMember> members;
  std::vector<double> boundaries;

  bool operator==(const CompositionPlan& other) const = default;
};

/// Time-segmented caption template: ordered (start, end, caption) entries.
/// Invariants: contiguous (entry[i].end == entry[i+1].start), first start 0,
/// last end 1. Enforced at construction.
class TemplatedCaption {
 public:
  struct Entry {
    double start = 0.0;
    double end = 0.0;
    std::string text;

    bool operator==(const Entry& other) const = default;
  };

  explicit TemplatedCaption(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  bool operator==(const TemplatedCaption& other) const = default;

 private:
  std::vector<Entry> entries_;
};

struct SamplerOptions {
  double temperature = 1.0;
  // When set, the seed clip is always the first member and the remaining
  // members are drawn without replacement from the rest.
  bool force_include_seed = false;
};

/// Softmax over cosine similarities to the seed clip:
///   weights[j] = exp(cos(z_seed, z_j) / temperature) / sum_i exp(...).
/// The seed's own weight is always a maximum entry. Throws on an
/// out-of-range seed index or non-positive temperature.
ProbabilityVector similarity_weights(const ClipCorpus& corpus,
                                     std::size_t seed_index,
                                     double temperature = 1.0);

/// One draw from a ProbabilityVector, by inverse-CDF walk over ascending
/// indices: u = uniform01() * total, pick the first index whose cumulative
/// weight exceeds u.
std::size_t pick_weighted(const ProbabilityVector& weights,
                          DeterministicRng& rng);

/// Converts segment lengths to cumulative relative boundaries
/// [0, l1/L, (l1+l2)/L, ..., 1] with L = sum of lengths and the final
/// value pinned to exactly 1. Throws on an empty list or a non-positive
/// length.
std::vector<double> relative_boundaries(const std::vector<double>& lengths);

/// Samples one synthetic song around the given seed clip. The draw protocol,
/// in order, is: member count n (uniform_int on {3,4,5}, clamped to corpus
/// size), then n members without replacement from similarity_weights
/// (sequentially renormalized; seed first instead when force_include_seed),
/// then n lengths (uniform_real on [6,10) seconds). Deterministic given the
/// rng state. Throws when the corpus has fewer than 3 clips.
CompositionPlan sample_composition(const ClipCorpus& corpus,
                                   std::size_t seed_index,
                                   DeterministicRng& rng,
                                   const SamplerOptions& options = {});

/// Interleaves a plan's boundaries with its member captions: entry j is
/// (boundaries[j], boundaries[j+1], caption of member j). Throws when a
/// member id is not in the corpus.
TemplatedCaption render_template(const CompositionPlan& plan,
                                 const ClipCorpus& corpus);

/// Serializes one plan as a JSONL object with keys `seed_id`, `members`
/// (array of {id, length_s}) and `boundaries`; numbers carry 17 significant
/// digits. When `caption_text` is non-null, it is appended under `caption`.
std::string plan_to_jsonl(const CompositionPlan& plan,
                          const std::string* caption_text = nullptr);

/// Reads plans back from a JSONL file; the optional `caption` field, when
/// present, is returned alongside each plan.
std::vector<std::pair<CompositionPlan, std::string>> load_plans(
    const std::string& path);

}  // namespace tempocap
