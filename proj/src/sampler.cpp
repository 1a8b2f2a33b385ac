#include "tempocap/sampler.hpp"

#include <algorithm>
#include <cmath>

#include "tempocap/error.hpp"
#include "tempocap/jsonio.hpp"

namespace tempocap {

ProbabilityVector::ProbabilityVector(std::vector<double> weights)
    : weights_(std::move(weights)) {
  if (weights_.empty())
    throw Error(ErrorKind::invalid_argument, "empty probability vector");
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0))
      throw Error(ErrorKind::invalid_argument,
                  "probability weights must be non-negative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw Error(ErrorKind::invalid_argument,
                "probability weights must sum to 1");
}

TemplatedCaption::TemplatedCaption(std::vector<Entry> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty())
    throw Error(ErrorKind::invalid_argument, "templated caption has no entries");
  if (entries_.front().start != 0.0)
    throw Error(ErrorKind::invalid_argument,
                "templated caption must start at 0");
  if (entries_.back().end != 1.0)
    throw Error(ErrorKind::invalid_argument, "templated caption must end at 1");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!(entries_[i].start < entries_[i].end))
      throw Error(ErrorKind::invalid_argument,
                  "templated caption entries must have start < end");
    if (i + 1 < entries_.size() && entries_[i].end != entries_[i + 1].start)
      throw Error(ErrorKind::invalid_argument,
                  "templated caption entries must be contiguous");
  }
}

ProbabilityVector similarity_weights(const ClipCorpus& corpus,
                                     std::size_t seed_index,
                                     double temperature) {
  if (seed_index >= corpus.size())
    throw Error(ErrorKind::invalid_argument,
                "seed index " + std::to_string(seed_index) +
                    " out of range for corpus of size " +
                    std::to_string(corpus.size()));
  if (!(temperature > 0.0) || !std::isfinite(temperature))
    throw Error(ErrorKind::invalid_argument, "temperature must be positive");

  const std::size_t n = corpus.size();
  const std::size_t dim = corpus.dim();
  const double* seed = corpus.unit_embedding(seed_index);

  std::vector<double> scores(n);
  for (std::size_t j = 0; j < n; ++j) {
    double c = fixed_order_dot(seed, corpus.unit_embedding(j), dim);
    if (c > 1.0) c = 1.0;
    if (c < -1.0) c = -1.0;
    scores[j] = c / temperature;
  }

  // Softmax with max subtraction; the shift cancels in the normalization.
  const double max_score = *std::max_element(scores.begin(), scores.end());
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    scores[j] = std::exp(scores[j] - max_score);
    sum += scores[j];
  }
  for (double& w : scores) w /= sum;
  return ProbabilityVector(std::move(scores));
}

std::size_t pick_weighted(const ProbabilityVector& weights,
                          DeterministicRng& rng) {
  const auto& w = weights.weights();
  const double u = rng.uniform01();
  double cum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    cum += w[i];
    if (u < cum) return i;
  }
  return w.size() - 1;  // guard against cumulative rounding shortfall
}

std::vector<double> relative_boundaries(const std::vector<double>& lengths) {
  if (lengths.empty())
    throw Error(ErrorKind::invalid_argument, "empty length list");
  double total = 0.0;
  for (double l : lengths) {
    if (!(l > 0.0) || !std::isfinite(l))
      throw Error(ErrorKind::invalid_argument,
                  "segment lengths must be positive");
    total += l;
  }
  std::vector<double> boundaries;
  boundaries.reserve(lengths.size() + 1);
  boundaries.push_back(0.0);
  double cum = 0.0;
  for (std::size_t i = 0; i + 1 < lengths.size(); ++i) {
    cum += lengths[i];
    boundaries.push_back(cum / total);
  }
  boundaries.push_back(1.0);
  return boundaries;
}

namespace {

// Without-replacement draw: inverse-CDF walk over the still-available
// indices in ascending order, against their renormalized total.
std::size_t pick_remaining(const std::vector<double>& weights,
                           const std::vector<bool>& used,
                           DeterministicRng& rng) {
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i)
    if (!used[i]) total += weights[i];

  const double u = rng.uniform01() * total;
  double cum = 0.0;
  std::size_t last_available = 0;
  bool any = false;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (used[i]) continue;
    last_available = i;
    any = true;
    cum += weights[i];
    if (u < cum) return i;
  }
  if (!any)
    throw Error(ErrorKind::invalid_argument, "no remaining clips to draw");
  return last_available;
}

}  // namespace

CompositionPlan sample_composition(const ClipCorpus& corpus,
                                   std::size_t seed_index,
                                   DeterministicRng& rng,
                                   const SamplerOptions& options) {
  if (corpus.size() < 3)
    throw Error(ErrorKind::domain,
                "corpus must contain at least 3 clips, got " +
                    std::to_string(corpus.size()));
  if (seed_index >= corpus.size())
    throw Error(ErrorKind::invalid_argument,
                "seed index " + std::to_string(seed_index) +
                    " out of range for corpus of size " +
                    std::to_string(corpus.size()));

  const std::size_t n = std::min<std::size_t>(
      rng.uniform_int(3, 5), corpus.size());
  const ProbabilityVector weights =
      similarity_weights(corpus, seed_index, options.temperature);

  std::vector<bool> used(corpus.size(), false);
  std::vector<std::size_t> member_indices;
  member_indices.reserve(n);
  if (options.force_include_seed) {
    member_indices.push_back(seed_index);
    used[seed_index] = true;
  }
  while (member_indices.size() < n) {
    const std::size_t picked = pick_remaining(weights.weights(), used, rng);
    member_indices.push_back(picked);
    used[picked] = true;
  }

  std::vector<double> lengths;
  lengths.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    lengths.push_back(rng.uniform_real(6.0, 10.0));

  CompositionPlan plan;
  plan.seed_id = corpus.clip(seed_index).id;
  for (std::size_t i = 0; i < n; ++i)
    plan.members.push_back({corpus.clip(member_indices[i]).id, lengths[i]});
  plan.boundaries = relative_boundaries(lengths);
  return plan;
}

TemplatedCaption render_template(const CompositionPlan& plan,
                                 const ClipCorpus& corpus) {
  std::vector<TemplatedCaption::Entry> entries;
  entries.reserve(plan.members.size());
  for (std::size_t j = 0; j < plan.members.size(); ++j) {
    const long idx = corpus.index_of(plan.members[j].clip_id);
    if (idx < 0)
      throw Error(ErrorKind::invalid_argument,
                  "unknown clip id \"" + plan.members[j].clip_id + "\"");
    entries.push_back({plan.boundaries[j], plan.boundaries[j + 1],
                       corpus.clip(static_cast<std::size_t>(idx)).caption});
  }
  return TemplatedCaption(std::move(entries));
}

std::string plan_to_jsonl(const CompositionPlan& plan,
                          const std::string* caption_text) {
  std::string line = "{\"seed_id\":" + json_quote(plan.seed_id) + ",\"members\":[";
  for (std::size_t i = 0; i < plan.members.size(); ++i) {
    if (i) line += ',';
    line += "{\"id\":" + json_quote(plan.members[i].clip_id) +
            ",\"length_s\":" + format_double17(plan.members[i].length_s) + "}";
  }
  line += "],\"boundaries\":[";
  for (std::size_t i = 0; i < plan.boundaries.size(); ++i) {
    if (i) line += ',';
    line += format_double17(plan.boundaries[i]);
  }
  line += "]";
  if (caption_text) line += ",\"caption\":" + json_quote(*caption_text);
  line += "}";
  return line;
}

std::vector<std::pair<CompositionPlan, std::string>> load_plans(
    const std::string& path) {
  std::vector<std::pair<CompositionPlan, std::string>> plans;
  for_each_jsonl_record(path, [&](int line, const nlohmann::json& record) {
    CompositionPlan plan;
    plan.seed_id = require_string(record, "seed_id", line);
    const auto& members = require_key(record, "members", line);
    if (!members.is_array())
      throw Error(ErrorKind::parse, "key \"members\" must be an array", line);
    for (const auto& m : members) {
      plan.members.push_back(
          {require_string(m, "id", line), require_number(m, "length_s", line)});
    }
    const auto& boundaries = require_key(record, "boundaries", line);
    if (!boundaries.is_array())
      throw Error(ErrorKind::parse, "key \"boundaries\" must be an array", line);
    for (const auto& b : boundaries) {
      if (!b.is_number())
        throw Error(ErrorKind::parse, "boundaries must be numbers", line);
      plan.boundaries.push_back(b.get<double>());
    }
    std::string caption;
    if (record.contains("caption"))
      caption = require_string(record, "caption", line);
    plans.emplace_back(std::move(plan), std::move(caption));
  });
  return plans;
}

}  // namespace tempocap
