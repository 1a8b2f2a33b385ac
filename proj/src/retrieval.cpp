#include "tempocap/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <utility>

#include "tempocap/error.hpp"
#include "tempocap/jsonio.hpp"

namespace tempocap {

SegmentDoc::SegmentDoc(std::string id, std::vector<Part> parts)
    : id_(std::move(id)), parts_(std::move(parts)) {
  if (id_.empty()) throw Error(ErrorKind::invalid_argument, "empty doc id");
  if (parts_.empty())
    throw Error(ErrorKind::invalid_argument, "doc '" + id_ + "' has no parts");
  dim_ = parts_.front().vector.dim();
  for (const Part& p : parts_) {
    if (p.vector.dim() != dim_)
      throw Error(ErrorKind::invalid_argument,
                  "doc '" + id_ + "' mixes embedding dimensions");
  }
  std::stable_sort(parts_.begin(), parts_.end(),
                   [](const Part& a, const Part& b) {
                     if (a.interval.start() != b.interval.start())
                       return a.interval.start() < b.interval.start();
                     return a.interval.end() < b.interval.end();
                   });
  units_.resize(parts_.size() * dim_);
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    const std::vector<double>& v = parts_[i].vector.values();
    double n = norm(parts_[i].vector);
    if (n == 0.0)
      throw Error(ErrorKind::domain,
                  "doc '" + id_ + "' has a zero-norm part vector");
    double* out = units_.data() + i * dim_;
    for (std::size_t k = 0; k < dim_; ++k) out[k] = v[k] / n;
  }
}

ScoreMatrix::ScoreMatrix(std::vector<std::string> query_ids,
                         std::vector<std::string> item_ids,
                         std::vector<double> scores)
    : query_ids_(std::move(query_ids)),
      item_ids_(std::move(item_ids)),
      scores_(std::move(scores)) {
  if (query_ids_.empty() || item_ids_.empty())
    throw Error(ErrorKind::invalid_argument, "empty score matrix");
  if (scores_.size() != query_ids_.size() * item_ids_.size())
    throw Error(ErrorKind::invalid_argument, "score matrix shape mismatch");
}

double pair_score(const SegmentDoc& text_doc, const SegmentDoc& audio_doc) {
  if (text_doc.dim() != audio_doc.dim())
    throw Error(ErrorKind::invalid_argument,
                "docs '" + text_doc.id() + "' and '" + audio_doc.id() +
                    "' have different embedding dimensions");
  const std::size_t dim = text_doc.dim();
  const auto& tp = text_doc.parts();
  const auto& ap = audio_doc.parts();
  double weight_total = 0.0;
  double weighted_sum = 0.0;
  for (std::size_t i = 0; i < tp.size(); ++i) {
    const double* tu = text_doc.unit_vector(i);
    for (std::size_t j = 0; j < ap.size(); ++j) {
      double w = interval_iou(tp[i].interval, ap[j].interval);
      if (w <= 0.0) continue;
      double c = fixed_order_dot(tu, audio_doc.unit_vector(j), dim);
      c = std::clamp(c, -1.0, 1.0);
      weight_total += w;
      weighted_sum += w * c;
    }
  }
  if (weight_total == 0.0) return kIrrelevantScore;
  return weighted_sum / weight_total;
}

ScoreMatrix score_matrix(const std::vector<SegmentDoc>& text_docs,
                         const std::vector<SegmentDoc>& audio_docs) {
  if (text_docs.empty())
    throw Error(ErrorKind::invalid_argument, "no text docs");
  if (audio_docs.empty())
    throw Error(ErrorKind::invalid_argument, "no audio docs");
  std::vector<std::string> qids, iids;
  qids.reserve(text_docs.size());
  iids.reserve(audio_docs.size());
  std::set<std::string> seen;
  for (const SegmentDoc& d : text_docs) {
    if (!seen.insert(d.id()).second)
      throw Error(ErrorKind::invalid_argument,
                  "duplicate text doc id '" + d.id() + "'");
    qids.push_back(d.id());
  }
  seen.clear();
  for (const SegmentDoc& d : audio_docs) {
    if (!seen.insert(d.id()).second)
      throw Error(ErrorKind::invalid_argument,
                  "duplicate audio doc id '" + d.id() + "'");
    iids.push_back(d.id());
  }
  std::vector<double> scores(text_docs.size() * audio_docs.size());
  for (std::size_t q = 0; q < text_docs.size(); ++q)
    for (std::size_t i = 0; i < audio_docs.size(); ++i)
      scores[q * audio_docs.size() + i] =
          pair_score(text_docs[q], audio_docs[i]);
  return ScoreMatrix(std::move(qids), std::move(iids), std::move(scores));
}

RankedList rank_items(const ScoreMatrix& matrix, const std::string& query_id) {
  const auto& qids = matrix.query_ids();
  auto it = std::find(qids.begin(), qids.end(), query_id);
  if (it == qids.end())
    throw Error(ErrorKind::invalid_argument,
                "unknown query id '" + query_id + "'");
  std::size_t q = static_cast<std::size_t>(it - qids.begin());
  RankedList out;
  out.query_id = query_id;
  out.entries.reserve(matrix.item_ids().size());
  for (std::size_t i = 0; i < matrix.item_ids().size(); ++i)
    out.entries.emplace_back(matrix.item_ids()[i], matrix.at(q, i));
  std::sort(out.entries.begin(), out.entries.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second > b.second;
              return a.first < b.first;
            });
  return out;
}

std::vector<RankedList> rank_all(const ScoreMatrix& matrix) {
  std::vector<RankedList> out;
  out.reserve(matrix.query_ids().size());
  for (const std::string& q : matrix.query_ids())
    out.push_back(rank_items(matrix, q));
  return out;
}

namespace {

EmbeddingVector embedding_from_json(const nlohmann::json& arr, int line,
                                    const char* what) {
  if (!arr.is_array() || arr.empty())
    throw Error(ErrorKind::parse,
                std::string(what) + " must be a non-empty array", line);
  std::vector<double> values;
  values.reserve(arr.size());
  for (const auto& v : arr) {
    if (!v.is_number())
      throw Error(ErrorKind::parse,
                  std::string(what) + " has a non-numeric value", line);
    double d = v.get<double>();
    if (!std::isfinite(d))
      throw Error(ErrorKind::parse,
                  std::string(what) + " has a non-finite value", line);
    values.push_back(d);
  }
  return EmbeddingVector(std::move(values));
}

}  // namespace

std::vector<SegmentDoc> load_segment_docs(const std::string& path,
                                          double window_s) {
  std::vector<SegmentDoc> docs;
  std::set<std::string> seen;
  std::size_t dim = 0;
  for_each_jsonl_record(path, [&](int line, const nlohmann::json& rec) {
    std::string id = require_string(rec, "id", line);
    if (!seen.insert(id).second)
      throw Error(ErrorKind::parse, "duplicate doc id '" + id + "'", line);
    std::vector<SegmentDoc::Part> parts;
    if (rec.contains("parts")) {
      const auto& arr = require_key(rec, "parts", line);
      if (!arr.is_array() || arr.empty())
        throw Error(ErrorKind::parse, "\"parts\" must be a non-empty array",
                    line);
      for (const auto& p : arr) {
        if (!p.is_object())
          throw Error(ErrorKind::parse, "part is not an object", line);
        double start = require_number(p, "start", line);
        double end = require_number(p, "end", line);
        TimeInterval iv(0.0, 1.0);
        try {
          iv = TimeInterval(start, end);
        } catch (const Error& e) {
          throw Error(ErrorKind::parse, e.what(), line);
        }
        parts.push_back(
            {iv, embedding_from_json(require_key(p, "embedding", line), line,
                                     "\"embedding\"")});
      }
    } else if (rec.contains("embeddings")) {
      double duration = require_number(rec, "duration_s", line);
      if (!(duration > 0.0) || !std::isfinite(duration))
        throw Error(ErrorKind::parse, "\"duration_s\" must be positive", line);
      std::vector<TimeInterval> windows;
      try {
        windows = uniform_windows(duration, window_s);
      } catch (const Error& e) {
        throw Error(ErrorKind::parse, e.what(), line);
      }
      const auto& arr = require_key(rec, "embeddings", line);
      if (!arr.is_array())
        throw Error(ErrorKind::parse, "\"embeddings\" must be an array", line);
      if (arr.size() != windows.size())
        throw Error(ErrorKind::parse,
                    "doc '" + id + "' has " + std::to_string(arr.size()) +
                        " embeddings but " + std::to_string(windows.size()) +
                        " windows",
                    line);
      for (std::size_t w = 0; w < windows.size(); ++w)
        parts.push_back({windows[w],
                         embedding_from_json(arr[w], line, "\"embeddings\"")});
    } else {
      throw Error(ErrorKind::parse,
                  "record needs either \"parts\" or \"embeddings\"", line);
    }
    SegmentDoc doc(id, std::move(parts));
    if (dim == 0)
      dim = doc.dim();
    else if (doc.dim() != dim)
      throw Error(ErrorKind::parse,
                  "doc '" + id + "' dimension " + std::to_string(doc.dim()) +
                      " != " + std::to_string(dim),
                  line);
    docs.push_back(std::move(doc));
  });
  if (docs.empty()) throw Error(ErrorKind::domain, "empty doc file: " + path);
  return docs;
}

std::string ranked_list_to_jsonl(const RankedList& ranked) {
  std::ostringstream out;
  out << "{\"query_id\":" << json_quote(ranked.query_id) << ",\"entries\":[";
  for (std::size_t i = 0; i < ranked.entries.size(); ++i) {
    if (i) out << ',';
    out << "{\"id\":" << json_quote(ranked.entries[i].first) << ",\"score\":";
    double s = ranked.entries[i].second;
    if (s == kIrrelevantScore)
      out << "\"irrelevant\"";
    else
      out << format_double17(s);
    out << '}';
  }
  out << "]}";
  return out.str();
}

std::vector<RankedList> load_ranked_lists(const std::string& path) {
  std::vector<RankedList> lists;
  std::set<std::string> seen;
  for_each_jsonl_record(path, [&](int line, const nlohmann::json& rec) {
    RankedList r;
    r.query_id = require_string(rec, "query_id", line);
    if (!seen.insert(r.query_id).second)
      throw Error(ErrorKind::parse,
                  "duplicate query id '" + r.query_id + "'", line);
    const auto& arr = require_key(rec, "entries", line);
    if (!arr.is_array() || arr.empty())
      throw Error(ErrorKind::parse, "\"entries\" must be a non-empty array",
                  line);
    std::set<std::string> items;
    for (const auto& e : arr) {
      if (!e.is_object())
        throw Error(ErrorKind::parse, "entry is not an object", line);
      std::string id = require_string(e, "id", line);
      if (!items.insert(id).second)
        throw Error(ErrorKind::parse, "duplicate item id '" + id + "'", line);
      const auto& sv = require_key(e, "score", line);
      double score;
      if (sv.is_string() && sv.get<std::string>() == "irrelevant") {
        score = kIrrelevantScore;
      } else if (sv.is_number()) {
        score = sv.get<double>();
        if (!std::isfinite(score))
          throw Error(ErrorKind::parse, "non-finite score", line);
      } else {
        throw Error(ErrorKind::parse,
                    "\"score\" must be a number or \"irrelevant\"", line);
      }
      r.entries.emplace_back(std::move(id), score);
    }
    for (std::size_t i = 1; i < r.entries.size(); ++i) {
      double prev = r.entries[i - 1].second;
      double cur = r.entries[i].second;
      if (cur > prev ||
          (cur == prev && r.entries[i].first < r.entries[i - 1].first))
        throw Error(ErrorKind::parse,
                    "entries out of order at item '" + r.entries[i].first +
                        "'",
                    line);
    }
    lists.push_back(std::move(r));
  });
  if (lists.empty())
    throw Error(ErrorKind::domain, "empty ranked-list file: " + path);
  return lists;
}

std::map<std::string, std::string> load_truth(const std::string& path) {
  std::map<std::string, std::string> truth;
  for_each_jsonl_record(path, [&](int line, const nlohmann::json& rec) {
    std::string q = require_string(rec, "query_id", line);
    std::string item = require_string(rec, "item_id", line);
    if (!truth.emplace(std::move(q), std::move(item)).second)
      throw Error(ErrorKind::parse, "duplicate query id in truth file", line);
  });
  if (truth.empty()) throw Error(ErrorKind::domain, "empty truth file: " + path);
  return truth;
}

}  // namespace tempocap
