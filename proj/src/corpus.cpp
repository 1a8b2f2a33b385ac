#include "tempocap/corpus.hpp"

#include <cmath>
#include <set>

#include "tempocap/error.hpp"
#include "tempocap/jsonio.hpp"

namespace tempocap {

ClipCorpus::ClipCorpus(std::vector<ClipRecord> clips,
                       std::map<std::string, std::string> metadata)
    : clips_(std::move(clips)), metadata_(std::move(metadata)) {
  if (clips_.empty())
    throw Error(ErrorKind::domain, "empty corpus");
  dim_ = clips_.front().embedding.dim();
  for (const auto& clip : clips_) {
    if (clip.embedding.dim() != dim_)
      throw Error(ErrorKind::domain,
                  "embedding dimension mismatch for clip \"" + clip.id +
                      "\": " + std::to_string(clip.embedding.dim()) + " vs " +
                      std::to_string(dim_));
  }
  for (std::size_t i = 0; i < clips_.size(); ++i) {
    auto [it, inserted] = index_.emplace(clips_[i].id, i);
    if (!inserted)
      throw Error(ErrorKind::domain, "duplicate clip id \"" + clips_[i].id + "\"");
  }

  unit_matrix_.resize(clips_.size() * dim_);
  zero_norm_.resize(clips_.size(), false);
  for (std::size_t i = 0; i < clips_.size(); ++i) {
    const auto& v = clips_[i].embedding.values();
    const double n = std::sqrt(fixed_order_dot(v.data(), v.data(), dim_));
    double* row = unit_matrix_.data() + i * dim_;
    if (n == 0.0 || !std::isfinite(n)) {
      zero_norm_[i] = true;
      for (std::size_t d = 0; d < dim_; ++d) row[d] = 0.0;
    } else {
      for (std::size_t d = 0; d < dim_; ++d) row[d] = v[d] / n;
    }
  }
}

long ClipCorpus::index_of(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? -1 : static_cast<long>(it->second);
}

const double* ClipCorpus::unit_embedding(std::size_t index) const {
  if (zero_norm_[index])
    throw Error(ErrorKind::invalid_argument,
                "zero-norm embedding for clip \"" + clips_[index].id + "\"");
  return unit_matrix_.data() + index * dim_;
}

namespace {

EmbeddingVector parse_embedding(const nlohmann::json& value, int line) {
  if (!value.is_array() || value.empty())
    throw Error(ErrorKind::parse, "key \"embedding\" must be a non-empty array",
                line);
  std::vector<double> values;
  values.reserve(value.size());
  for (const auto& x : value) {
    if (!x.is_number())
      throw Error(ErrorKind::parse, "embedding entries must be numbers", line);
    values.push_back(x.get<double>());
  }
  return EmbeddingVector(std::move(values));
}

ClipCorpus load_impl(
    const std::function<void(
        const std::function<void(int, const nlohmann::json&)>&)>& iterate) {
  std::vector<ClipRecord> clips;
  std::map<std::string, std::string> metadata;
  std::set<std::string> seen_ids;
  std::size_t dim = 0;
  bool first_record = true;

  iterate([&](int line, const nlohmann::json& record) {
    if (first_record && record.contains("metadata") && !record.contains("id")) {
      for (const auto& [key, value] : record["metadata"].items()) {
        metadata[key] = value.is_string() ? value.get<std::string>()
                                          : value.dump();
      }
      first_record = false;
      return;
    }
    first_record = false;

    ClipRecord clip{require_string(record, "id", line),
                    require_string(record, "caption", line),
                    require_number(record, "duration_s", line),
                    parse_embedding(require_key(record, "embedding", line), line)};

    if (!seen_ids.insert(clip.id).second)
      throw Error(ErrorKind::parse, "duplicate clip id \"" + clip.id + "\"",
                  line);
    if (dim == 0) {
      dim = clip.embedding.dim();
    } else if (clip.embedding.dim() != dim) {
      throw Error(ErrorKind::parse,
                  "embedding dimension mismatch: " +
                      std::to_string(clip.embedding.dim()) + " vs " +
                      std::to_string(dim),
                  line);
    }
    if (clip.caption.empty())
      throw Error(ErrorKind::parse, "empty caption", line);
    if (!std::isfinite(clip.duration_s) || clip.duration_s <= 0.0)
      throw Error(ErrorKind::parse, "duration_s must be finite and positive",
                  line);
    double sq = 0.0;
    for (double x : clip.embedding.values()) {
      if (!std::isfinite(x))
        throw Error(ErrorKind::parse, "non-finite embedding value", line);
      sq += x * x;
    }
    if (sq == 0.0)
      throw Error(ErrorKind::parse, "zero-norm embedding", line);

    clips.push_back(std::move(clip));
  });

  if (clips.empty())
    throw Error(ErrorKind::domain, "empty corpus");
  return ClipCorpus(std::move(clips), std::move(metadata));
}

}  // namespace

ClipCorpus load_clip_corpus(const std::string& path) {
  return load_impl([&](const auto& on_record) {
    for_each_jsonl_record(path, on_record);
  });
}

ClipCorpus load_clip_corpus_from_string(const std::string& content) {
  return load_impl([&](const auto& on_record) {
    for_each_jsonl_record_in(content, on_record);
  });
}

void save_clip_corpus(const ClipCorpus& corpus, const std::string& path) {
  std::vector<std::string> lines;
  lines.reserve(corpus.size() + 1);
  if (!corpus.metadata().empty()) {
    std::string header = "{\"metadata\":{";
    bool first = true;
    for (const auto& [key, value] : corpus.metadata()) {
      if (!first) header += ',';
      header += json_quote(key) + ':' + json_quote(value);
      first = false;
    }
    header += "}}";
    lines.push_back(std::move(header));
  }
  for (const auto& clip : corpus.clips()) {
    std::string line = "{\"id\":" + json_quote(clip.id) +
                       ",\"caption\":" + json_quote(clip.caption) +
                       ",\"duration_s\":" + format_double17(clip.duration_s) +
                       ",\"embedding\":[";
    for (std::size_t d = 0; d < clip.embedding.dim(); ++d) {
      if (d) line += ',';
      line += format_double17(clip.embedding[d]);
    }
    line += "]}";
    lines.push_back(std::move(line));
  }
  write_lines(path, lines);
}

ValidationReport validate_corpus(const ClipCorpus& corpus) {
  ValidationReport report;
  auto add = [&](const std::string& id, const std::string& message) {
    report.issues.push_back({id, message});
  };

  // Uniqueness and uniform dimension are enforced by the ClipCorpus
  // constructor, so only value-level invariants can be violated here.
  for (const auto& clip : corpus.clips()) {
    if (clip.caption.empty()) add(clip.id, "empty caption");
    if (!std::isfinite(clip.duration_s) || clip.duration_s <= 0.0)
      add(clip.id, "duration_s must be finite and positive");
    bool finite = true;
    double sq = 0.0;
    for (double x : clip.embedding.values()) {
      if (!std::isfinite(x)) finite = false;
      sq += x * x;
    }
    if (!finite)
      add(clip.id, "non-finite embedding value");
    else if (sq == 0.0)
      add(clip.id, "zero-norm embedding");
  }

  report.ok = report.issues.empty();
  return report;
}

}  // namespace tempocap
