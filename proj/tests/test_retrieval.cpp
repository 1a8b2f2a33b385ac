#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "support/checks.hpp"
#include "support/oracles.hpp"
#include "support/tmpdir.hpp"
#include "tempocap/embedding.hpp"
#include "tempocap/error.hpp"
#include "tempocap/jsonio.hpp"
#include "tempocap/retrieval.hpp"

using namespace tempocap;
using testutil::ev;

namespace {

SegmentDoc::Part part(double start, double end, std::vector<double> v) {
  return {TimeInterval(start, end), ev(std::move(v))};
}

SegmentDoc doc(std::string id, std::vector<SegmentDoc::Part> parts) {
  return SegmentDoc(std::move(id), std::move(parts));
}

// Random doc whose part intervals tile a random prefix structure of [0, 1].
SegmentDoc random_doc(const std::string& id, std::size_t max_parts,
                      std::size_t dim, std::mt19937_64& gen) {
  std::uniform_int_distribution<std::size_t> count(1, max_parts);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  const std::size_t n = count(gen);

  // n disjoint intervals from 2n sorted cut points.
  std::vector<double> cuts(2 * n);
  for (double& c : cuts) c = unit(gen);
  std::sort(cuts.begin(), cuts.end());
  std::vector<SegmentDoc::Part> parts;
  for (std::size_t i = 0; i < n; ++i) {
    double lo = cuts[2 * i], hi = cuts[2 * i + 1];
    if (hi - lo < 1e-6) hi = std::min(1.0, lo + 1e-3);
    if (hi <= lo) {
      lo = 0.0;
      hi = 0.5;
    }
    std::vector<double> v(dim);
    for (double& x : v) x = coord(gen);
    v[0] += (v[0] >= 0.0 ? 0.5 : -0.5);
    parts.push_back(part(lo, hi, std::move(v)));
  }
  return SegmentDoc(id, std::move(parts));
}

std::vector<testutil::OraclePart> to_oracle(const SegmentDoc& d) {
  std::vector<testutil::OraclePart> out;
  for (const auto& p : d.parts())
    out.push_back({p.interval.start(), p.interval.end(), p.vector.values()});
  return out;
}

}  // namespace

TEST_CASE("segment doc construction") {
  const SegmentDoc d =
      doc("d1", {part(0.5, 1.0, {0.0, 2.0}), part(0.0, 0.5, {3.0, 0.0})});
  CHECK(d.id() == "d1");
  CHECK(d.dim() == 2);
  REQUIRE(d.parts().size() == 2);
  // Parts are re-sorted by (start, end).
  CHECK(d.parts()[0].interval.start() == 0.0);
  CHECK(d.parts()[1].interval.start() == 0.5);
  // Unit vectors are normalized copies in sorted order.
  CHECK(d.unit_vector(0)[0] == 1.0);
  CHECK(d.unit_vector(0)[1] == 0.0);
  CHECK(d.unit_vector(1)[0] == 0.0);
  CHECK(d.unit_vector(1)[1] == 1.0);

  CHECK_ERROR(doc("", {part(0.0, 1.0, {1.0})}), invalid_argument, "empty doc");
  CHECK_ERROR(doc("x", {}), invalid_argument, "no parts");
  CHECK_ERROR(doc("x", {part(0.0, 0.5, {1.0}), part(0.5, 1.0, {1.0, 2.0})}),
              invalid_argument, "mixes embedding dimensions");
  CHECK_ERROR(doc("x", {part(0.0, 1.0, {0.0, 0.0})}), domain, "zero-norm");
}

TEST_CASE("pair_score hand examples") {
  SUBCASE("identical single full-span parts score 1") {
    CHECK(pair_score(doc("t", {part(0.0, 1.0, {2.0, 0.0})}),
                     doc("a", {part(0.0, 1.0, {5.0, 0.0})})) == 1.0);
  }
  SUBCASE("orthogonal vectors score 0") {
    CHECK(pair_score(doc("t", {part(0.0, 1.0, {1.0, 0.0})}),
                     doc("a", {part(0.0, 1.0, {0.0, 1.0})})) == 0.0);
  }
  SUBCASE("no temporal overlap yields the sentinel") {
    const double s = pair_score(doc("t", {part(0.0, 0.4, {1.0, 0.0})}),
                                doc("a", {part(0.6, 1.0, {1.0, 0.0})}));
    CHECK(s == kIrrelevantScore);
    CHECK(std::isinf(s));
    CHECK(s < -1.0);  // ranks below every real score
  }
  SUBCASE("IoU-weighted mixture") {
    // Aligned halves: IoU 1 on each diagonal pair, 0 across. Cosines are
    // 1 (first halves) and 0 (second halves) so the score is 1/2.
    const SegmentDoc text =
        doc("t", {part(0.0, 0.5, {1.0, 0.0}), part(0.5, 1.0, {0.0, 1.0})});
    const SegmentDoc audio =
        doc("a", {part(0.0, 0.5, {1.0, 0.0}), part(0.5, 1.0, {1.0, 0.0})});
    CHECK(pair_score(text, audio) == doctest::Approx(0.5).epsilon(1e-15));
  }
  SUBCASE("dimension mismatch is rejected") {
    CHECK_ERROR(pair_score(doc("t", {part(0.0, 1.0, {1.0})}),
                           doc("a", {part(0.0, 1.0, {1.0, 0.0})})),
                invalid_argument, "different embedding dimensions");
  }
}

TEST_CASE("pair_score matches the brute-force oracle") {
  std::mt19937_64 gen(404);
  for (int trial = 0; trial < 100; ++trial) {
    const SegmentDoc text = random_doc("t", 5, 8, gen);
    const SegmentDoc audio = random_doc("a", 5, 8, gen);
    const double fast = pair_score(text, audio);
    const double slow =
        testutil::oracle_pair_score(to_oracle(text), to_oracle(audio));
    if (std::isinf(slow)) {
      CHECK(fast == kIrrelevantScore);
    } else {
      CHECK(fast == doctest::Approx(slow).epsilon(1e-12));
    }
  }
}

TEST_CASE("pair_score is bit-stable under part permutations") {
  std::mt19937_64 gen(777);
  for (int trial = 0; trial < 50; ++trial) {
    SegmentDoc text = random_doc("t", 5, 6, gen);
    SegmentDoc audio = random_doc("a", 5, 6, gen);
    const double base = pair_score(text, audio);

    std::vector<SegmentDoc::Part> tp = text.parts();
    std::vector<SegmentDoc::Part> ap = audio.parts();
    std::shuffle(tp.begin(), tp.end(), gen);
    std::shuffle(ap.begin(), ap.end(), gen);
    const double shuffled =
        pair_score(SegmentDoc("t", tp), SegmentDoc("a", ap));
    CHECK(shuffled == base);  // identical bits, not merely close
  }
}

TEST_CASE("score matrix and ranking") {
  const SegmentDoc q1 = doc("q1", {part(0.0, 1.0, {1.0, 0.0})});
  const SegmentDoc q2 = doc("q2", {part(0.0, 1.0, {0.0, 1.0})});
  // i1 aligns with q1, i2 with q2, i3 is temporally disjoint from both.
  const SegmentDoc i1 = doc("i1", {part(0.0, 1.0, {2.0, 0.0})});
  const SegmentDoc i2 = doc("i2", {part(0.0, 1.0, {0.0, 3.0})});
  const SegmentDoc i3 = doc("i3", {part(0.0, 1.0, {1.0, 1.0})});

  const ScoreMatrix m = score_matrix({q1, q2}, {i1, i2, i3});
  CHECK(m.query_ids() == std::vector<std::string>{"q1", "q2"});
  CHECK(m.item_ids() == std::vector<std::string>{"i1", "i2", "i3"});
  CHECK(m.at(0, 0) == 1.0);
  CHECK(m.at(0, 1) == 0.0);
  CHECK(m.at(1, 1) == 1.0);

  SUBCASE("rank_items orders by score descending") {
    const RankedList r = rank_items(m, "q1");
    REQUIRE(r.entries.size() == 3);
    CHECK(r.query_id == "q1");
    CHECK(r.entries[0].first == "i1");
    CHECK(r.entries[1].first == "i3");  // cos = 1/sqrt(2)
    CHECK(r.entries[2].first == "i2");
    for (std::size_t i = 0; i + 1 < r.entries.size(); ++i)
      CHECK(r.entries[i].second >= r.entries[i + 1].second);
  }
  SUBCASE("rank_all covers every query in order") {
    const auto all = rank_all(m);
    REQUIRE(all.size() == 2);
    CHECK(all[0].query_id == "q1");
    CHECK(all[1].query_id == "q2");
    CHECK(all[1].entries[0].first == "i2");
  }
  SUBCASE("unknown query is rejected") {
    CHECK_ERROR(rank_items(m, "zz"), invalid_argument, "unknown query");
  }
  SUBCASE("ties break by ascending item id") {
    // Two identical items must order by id.
    const ScoreMatrix tie({"q"}, {"b-item", "a-item"}, {0.5, 0.5});
    const RankedList r = rank_items(tie, "q");
    CHECK(r.entries[0].first == "a-item");
    CHECK(r.entries[1].first == "b-item");
  }
  SUBCASE("sentinel scores sink to the bottom") {
    const ScoreMatrix s({"q"}, {"a", "b", "c"},
                        {kIrrelevantScore, -0.9, 0.2});
    const RankedList r = rank_items(s, "q");
    CHECK(r.entries[0].first == "c");
    CHECK(r.entries[1].first == "b");
    CHECK(r.entries[2].first == "a");
    CHECK(r.entries[2].second == kIrrelevantScore);
  }
  SUBCASE("duplicate ids are rejected") {
    CHECK_ERROR(score_matrix({q1, q1}, {i1}), invalid_argument,
                "duplicate text doc id");
    CHECK_ERROR(score_matrix({q1}, {i1, i1}), invalid_argument,
                "duplicate audio doc id");
  }
  SUBCASE("empty sides are rejected") {
    CHECK_ERROR(score_matrix({}, {i1}), invalid_argument, "no text docs");
    CHECK_ERROR(score_matrix({q1}, {}), invalid_argument, "no audio docs");
  }
}

TEST_CASE("single full-span parts reduce to plain cosine ranking") {
  std::mt19937_64 gen(2121);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<SegmentDoc> queries, items;
    std::vector<EmbeddingVector> qv, iv;
    for (int i = 0; i < 6; ++i) {
      std::vector<double> v(5);
      for (double& x : v) x = coord(gen);
      v[0] += (v[0] >= 0.0 ? 0.5 : -0.5);
      qv.push_back(ev(v));
      queries.push_back(doc("q" + std::to_string(i), {part(0.0, 1.0, v)}));
      std::vector<double> w(5);
      for (double& x : w) x = coord(gen);
      w[0] += (w[0] >= 0.0 ? 0.5 : -0.5);
      iv.push_back(ev(w));
      items.push_back(doc("i" + std::to_string(i), {part(0.0, 1.0, w)}));
    }
    const ScoreMatrix m = score_matrix(queries, items);
    for (std::size_t q = 0; q < queries.size(); ++q) {
      // The IoU weight is uniformly 1, so scores equal plain cosines.
      for (std::size_t i = 0; i < items.size(); ++i)
        CHECK(m.at(q, i) == doctest::Approx(cosine(qv[q], iv[i]))
                                .epsilon(1e-12));
      // And the induced ranking equals the cosine ranking.
      const RankedList r = rank_items(m, "q" + std::to_string(q));
      std::vector<std::pair<double, std::string>> expected;
      for (std::size_t i = 0; i < items.size(); ++i)
        expected.push_back({-cosine(qv[q], iv[i]), "i" + std::to_string(i)});
      std::sort(expected.begin(), expected.end());
      for (std::size_t i = 0; i < expected.size(); ++i)
        CHECK(r.entries[i].first == expected[i].second);
    }
  }
}

TEST_CASE("segment doc JSONL loading") {
  testutil::TempDir tmp;

  SUBCASE("explicit parts form") {
    tmp.write("docs.jsonl",
              "{\"id\":\"d1\",\"parts\":[{\"start\":0.0,\"end\":0.5,"
              "\"embedding\":[1,0]},{\"start\":0.5,\"end\":1.0,"
              "\"embedding\":[0,1]}]}\n"
              "{\"id\":\"d2\",\"parts\":[{\"start\":0.0,\"end\":1.0,"
              "\"embedding\":[1,1]}]}\n");
    const auto docs = load_segment_docs(tmp.path("docs.jsonl"));
    REQUIRE(docs.size() == 2);
    CHECK(docs[0].id() == "d1");
    CHECK(docs[0].parts().size() == 2);
    CHECK(docs[1].dim() == 2);
  }

  SUBCASE("windowed form derives intervals from the duration") {
    tmp.write("w.jsonl",
              "{\"id\":\"w1\",\"duration_s\":25,\"embeddings\":"
              "[[1,0],[0,1],[1,1]]}\n");
    const auto docs = load_segment_docs(tmp.path("w.jsonl"), 10.0);
    REQUIRE(docs.size() == 1);
    REQUIRE(docs[0].parts().size() == 3);
    CHECK(docs[0].parts()[0].interval == TimeInterval(0.0, 0.4));
    CHECK(docs[0].parts()[1].interval == TimeInterval(0.4, 0.8));
    CHECK(docs[0].parts()[2].interval.end() == 1.0);
  }

  SUBCASE("windowed form requires one embedding per window") {
    tmp.write("w2.jsonl",
              "{\"id\":\"w1\",\"duration_s\":25,\"embeddings\":[[1,0]]}\n");
    const tempocap::Error e = testutil::expect_error(
        [&] { load_segment_docs(tmp.path("w2.jsonl"), 10.0); });
    CHECK(e.kind() == ErrorKind::parse);
    CHECK(e.line() == 1);
  }

  SUBCASE("mixed forms in one file share a dimension") {
    tmp.write("mix.jsonl",
              "{\"id\":\"a\",\"parts\":[{\"start\":0,\"end\":1,"
              "\"embedding\":[1,0]}]}\n"
              "{\"id\":\"b\",\"duration_s\":5,\"embeddings\":[[0,1]]}\n");
    CHECK(load_segment_docs(tmp.path("mix.jsonl")).size() == 2);
    tmp.write("bad.jsonl",
              "{\"id\":\"a\",\"parts\":[{\"start\":0,\"end\":1,"
              "\"embedding\":[1,0]}]}\n"
              "{\"id\":\"b\",\"duration_s\":5,\"embeddings\":[[0,1,2]]}\n");
    const tempocap::Error e = testutil::expect_error(
        [&] { load_segment_docs(tmp.path("bad.jsonl")); });
    CHECK(e.kind() == ErrorKind::parse);
    CHECK(e.line() == 2);
  }

  SUBCASE("loader error cases") {
    tmp.write("dup.jsonl",
              "{\"id\":\"a\",\"parts\":[{\"start\":0,\"end\":1,"
              "\"embedding\":[1]}]}\n"
              "{\"id\":\"a\",\"parts\":[{\"start\":0,\"end\":1,"
              "\"embedding\":[1]}]}\n");
    CHECK_ERROR(load_segment_docs(tmp.path("dup.jsonl")), parse,
                "duplicate doc id");

    tmp.write("interval.jsonl",
              "{\"id\":\"a\",\"parts\":[{\"start\":0.5,\"end\":0.4,"
              "\"embedding\":[1]}]}\n");
    CHECK_ERROR(load_segment_docs(tmp.path("interval.jsonl")), parse, "");

    tmp.write("formless.jsonl", "{\"id\":\"a\"}\n");
    CHECK_ERROR(load_segment_docs(tmp.path("formless.jsonl")), parse, "");

    tmp.write("empty.jsonl", "\n");
    CHECK_ERROR(load_segment_docs(tmp.path("empty.jsonl")), domain,
                "empty doc file");
  }
}

TEST_CASE("ranked list serialization round-trip") {
  testutil::TempDir tmp;
  RankedList a;
  a.query_id = "q1";
  a.entries = {{"i2", 0.75}, {"i1", 1.0 / 3.0}, {"i3", kIrrelevantScore}};
  RankedList b;
  b.query_id = "q2";
  b.entries = {{"i1", -0.25}, {"i2", kIrrelevantScore},
               {"i3", kIrrelevantScore}};

  const std::string line_a = ranked_list_to_jsonl(a);
  CHECK(line_a.find("\"irrelevant\"") != std::string::npos);
  CHECK(line_a.find("inf") == std::string::npos);

  write_lines(tmp.path("ranked.jsonl"), {line_a, ranked_list_to_jsonl(b)});
  const auto loaded = load_ranked_lists(tmp.path("ranked.jsonl"));
  REQUIRE(loaded.size() == 2);
  CHECK(loaded[0].query_id == "q1");
  CHECK(loaded[0].entries.size() == 3);
  CHECK(loaded[0].entries[1].second == 1.0 / 3.0);  // bitwise via 17 digits
  CHECK(loaded[0].entries[2].second == kIrrelevantScore);
  CHECK(loaded[1].entries[1].second == kIrrelevantScore);

  SUBCASE("out-of-order entries are rejected") {
    tmp.write("bad.jsonl",
              "{\"query_id\":\"q\",\"entries\":[{\"id\":\"a\",\"score\":0.1},"
              "{\"id\":\"b\",\"score\":0.9}]}\n");
    CHECK_ERROR(load_ranked_lists(tmp.path("bad.jsonl")), parse,
                "out of order");
  }
  SUBCASE("finite after irrelevant is rejected") {
    tmp.write("bad2.jsonl",
              "{\"query_id\":\"q\",\"entries\":[{\"id\":\"a\","
              "\"score\":\"irrelevant\"},{\"id\":\"b\",\"score\":0.5}]}\n");
    CHECK_ERROR(load_ranked_lists(tmp.path("bad2.jsonl")), parse,
                "out of order");
  }
  SUBCASE("duplicate item ids are rejected") {
    tmp.write("bad3.jsonl",
              "{\"query_id\":\"q\",\"entries\":[{\"id\":\"a\",\"score\":0.9},"
              "{\"id\":\"a\",\"score\":0.1}]}\n");
    CHECK_ERROR(load_ranked_lists(tmp.path("bad3.jsonl")), parse,
                "duplicate item id");
  }
  SUBCASE("unknown score strings are rejected") {
    tmp.write("bad4.jsonl",
              "{\"query_id\":\"q\",\"entries\":[{\"id\":\"a\","
              "\"score\":\"high\"}]}\n");
    CHECK_ERROR(load_ranked_lists(tmp.path("bad4.jsonl")), parse, "");
  }
}

TEST_CASE("truth file loading") {
  testutil::TempDir tmp;
  tmp.write("truth.jsonl",
            "{\"query_id\":\"q1\",\"item_id\":\"i1\"}\n"
            "{\"query_id\":\"q2\",\"item_id\":\"i9\"}\n");
  const auto truth = load_truth(tmp.path("truth.jsonl"));
  REQUIRE(truth.size() == 2);
  CHECK(truth.at("q1") == "i1");
  CHECK(truth.at("q2") == "i9");

  tmp.write("dup.jsonl",
            "{\"query_id\":\"q1\",\"item_id\":\"i1\"}\n"
            "{\"query_id\":\"q1\",\"item_id\":\"i2\"}\n");
  CHECK_ERROR(load_truth(tmp.path("dup.jsonl")), parse, "duplicate query id");
  tmp.write("none.jsonl", "\n");
  CHECK_ERROR(load_truth(tmp.path("none.jsonl")), domain, "empty truth file");
}
