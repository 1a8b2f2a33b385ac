#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "support/checks.hpp"
#include "support/tmpdir.hpp"
#include "tempocap/corpus.hpp"
#include "tempocap/error.hpp"
#include "tempocap/jsonio.hpp"
#include "tempocap/sampler.hpp"

using namespace tempocap;
using testutil::clip;

namespace {

ClipCorpus identical_corpus(std::size_t n) {
  std::vector<ClipRecord> clips;
  for (std::size_t i = 0; i < n; ++i)
    clips.push_back(clip("c" + std::to_string(i), "same", 10.0, {1.0, 1.0}));
  return ClipCorpus(std::move(clips));
}

}  // namespace

TEST_CASE("probability vector invariants") {
  ProbabilityVector p({0.25, 0.25, 0.5});
  CHECK(p.size() == 3);
  CHECK(p[2] == 0.5);
  CHECK_ERROR(ProbabilityVector({}), invalid_argument, "empty");
  CHECK_ERROR(ProbabilityVector({0.5, 0.6}), invalid_argument, "sum");
  CHECK_ERROR(ProbabilityVector({1.5, -0.5}), invalid_argument, "negative");
}

TEST_CASE("similarity weights: identical embeddings are uniform") {
  const ClipCorpus corpus = identical_corpus(4);
  const ProbabilityVector w = similarity_weights(corpus, 0);
  REQUIRE(w.size() == 4);
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(w[i] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("similarity weights: softmax of cosines at temperature 1") {
  // Seed is orthogonal to the two others: cosines are (1, 0, 0), so the
  // weights must be (e, 1, 1) / (e + 2).
  const ClipCorpus corpus({clip("s", "seed", 10.0, {1.0, 0.0}),
                           clip("a", "other", 10.0, {0.0, 1.0}),
                           clip("b", "other", 10.0, {0.0, 2.0})});
  const ProbabilityVector w = similarity_weights(corpus, 0, 1.0);
  const double e = std::exp(1.0);
  CHECK(w[0] == doctest::Approx(e / (e + 2.0)).epsilon(1e-12));
  CHECK(w[0] == doctest::Approx(0.5761168847658291).epsilon(1e-12));
  CHECK(w[1] == doctest::Approx(1.0 / (e + 2.0)).epsilon(1e-12));
  CHECK(w[1] == doctest::Approx(0.21194155761708545).epsilon(1e-12));
  CHECK(w[2] == doctest::Approx(w[1]).epsilon(1e-14));
  // Ratio identity: w_seed / w_other = exp(cos_seed - cos_other) = e.
  CHECK(w[0] / w[1] == doctest::Approx(e).epsilon(1e-12));
}

TEST_CASE("similarity weights: high temperature flattens the distribution") {
  const ClipCorpus corpus = testutil::random_corpus(16, 8, 31);
  const ProbabilityVector w = similarity_weights(corpus, 3, 1e6);
  for (std::size_t i = 0; i < w.size(); ++i)
    CHECK(std::fabs(w[i] - 1.0 / 16.0) < 1e-6);
}

TEST_CASE("similarity weights: seed weight is maximal, sums to 1") {
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    const ClipCorpus corpus = testutil::random_corpus(9, 6, 100 + trial);
    const std::size_t seed = trial % corpus.size();
    const ProbabilityVector w = similarity_weights(corpus, seed, 0.7);
    double total = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      total += w[i];
      CHECK(w[seed] >= w[i]);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("similarity weights: argument validation") {
  const ClipCorpus corpus = identical_corpus(4);
  CHECK_ERROR(similarity_weights(corpus, 4), invalid_argument, "out of range");
  CHECK_ERROR(similarity_weights(corpus, 0, 0.0), invalid_argument,
              "temperature");
  CHECK_ERROR(similarity_weights(corpus, 0, -2.0), invalid_argument,
              "temperature");
  CHECK_ERROR(similarity_weights(corpus, 0, std::nan("")), invalid_argument,
              "temperature");
}

TEST_CASE("pick_weighted follows the distribution") {
  DeterministicRng rng(7);
  SUBCASE("degenerate weights always hit the unit entry") {
    const ProbabilityVector sure({0.0, 1.0, 0.0});
    for (int i = 0; i < 100; ++i) CHECK(pick_weighted(sure, rng) == 1);
    const ProbabilityVector first({1.0, 0.0});
    for (int i = 0; i < 100; ++i) CHECK(pick_weighted(first, rng) == 0);
  }
  SUBCASE("an even split lands near half") {
    const ProbabilityVector half({0.5, 0.5});
    int ones = 0;
    for (int i = 0; i < 10000; ++i) ones += static_cast<int>(pick_weighted(half, rng));
    CHECK(ones > 4600);
    CHECK(ones < 5400);
  }
}

TEST_CASE("relative boundaries") {
  SUBCASE("documented examples are exact") {
    const std::vector<double> a = relative_boundaries({6.0, 8.0, 6.0});
    REQUIRE(a.size() == 4);
    CHECK(a[0] == 0.0);
    CHECK(a[1] == 0.3);
    CHECK(a[2] == 0.7);
    CHECK(a[3] == 1.0);

    const std::vector<double> b = relative_boundaries({10.0});
    REQUIRE(b.size() == 2);
    CHECK(b[0] == 0.0);
    CHECK(b[1] == 1.0);

    const std::vector<double> c = relative_boundaries({7.0, 7.0, 7.0, 7.0});
    REQUIRE(c.size() == 5);
    CHECK(c[1] == 0.25);
    CHECK(c[2] == 0.5);
    CHECK(c[3] == 0.75);
    CHECK(c[4] == 1.0);
  }
  SUBCASE("final boundary is exactly 1 for arbitrary lengths") {
    DeterministicRng rng(55);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> lengths;
      const std::size_t n = 1 + rng.uniform_int(0, 6);
      for (std::size_t i = 0; i < n; ++i)
        lengths.push_back(rng.uniform_real(0.1, 30.0));
      const std::vector<double> bounds = relative_boundaries(lengths);
      REQUIRE(bounds.size() == n + 1);
      CHECK(bounds.front() == 0.0);
      CHECK(bounds.back() == 1.0);  // exact, not approximate
      for (std::size_t i = 0; i + 1 < bounds.size(); ++i)
        CHECK(bounds[i] < bounds[i + 1]);
    }
  }
  SUBCASE("invalid inputs") {
    CHECK_ERROR(relative_boundaries({}), invalid_argument, "empty");
    CHECK_ERROR(relative_boundaries({5.0, 0.0}), invalid_argument, "positive");
    CHECK_ERROR(relative_boundaries({5.0, -1.0}), invalid_argument,
                "positive");
  }
}

TEST_CASE("sample_composition draw protocol") {
  const ClipCorpus corpus = testutil::random_corpus(10, 4, 77);

  SUBCASE("members are distinct, counts and lengths in range") {
    DeterministicRng rng(1);
    for (int trial = 0; trial < 500; ++trial) {
      const CompositionPlan plan = sample_composition(corpus, trial % 10, rng);
      CHECK(plan.seed_id == corpus.clip(trial % 10).id);
      CHECK(plan.members.size() >= 3);
      CHECK(plan.members.size() <= 5);
      REQUIRE(plan.boundaries.size() == plan.members.size() + 1);
      CHECK(plan.boundaries.front() == 0.0);
      CHECK(plan.boundaries.back() == 1.0);
      std::set<std::string> ids;
      for (const PlanMember& m : plan.members) {
        ids.insert(m.clip_id);
        CHECK(m.length_s >= 6.0);
        CHECK(m.length_s < 10.0);
        CHECK(corpus.index_of(m.clip_id) >= 0);
      }
      CHECK(ids.size() == plan.members.size());
      for (std::size_t i = 0; i + 1 < plan.boundaries.size(); ++i)
        CHECK(plan.boundaries[i] < plan.boundaries[i + 1]);
    }
  }

  SUBCASE("member count clamps to a tiny corpus") {
    const ClipCorpus three = testutil::random_corpus(3, 4, 5);
    DeterministicRng rng(2);
    for (int trial = 0; trial < 50; ++trial) {
      const CompositionPlan plan = sample_composition(three, 0, rng);
      CHECK(plan.members.size() == 3);
    }
  }

  SUBCASE("a corpus below 3 clips is rejected") {
    const ClipCorpus two({clip("a", "x", 5.0, {1.0, 0.0}),
                          clip("b", "y", 5.0, {0.0, 1.0})});
    DeterministicRng rng(3);
    CHECK_ERROR(sample_composition(two, 0, rng), domain, "at least 3");
  }

  SUBCASE("seed index is validated") {
    DeterministicRng rng(4);
    CHECK_ERROR(sample_composition(corpus, 10, rng), invalid_argument,
                "out of range");
  }

  SUBCASE("identical rng state reproduces the plan bitwise") {
    DeterministicRng a(99), b(99), c(100);
    const CompositionPlan pa = sample_composition(corpus, 2, a);
    const CompositionPlan pb = sample_composition(corpus, 2, b);
    CHECK(pa == pb);  // lengths compare bitwise through operator==
    bool diverged = false;
    for (int i = 0; i < 20 && !diverged; ++i)
      diverged = !(sample_composition(corpus, 2, c) ==
                   sample_composition(corpus, 2, b));
    CHECK(diverged);
  }

  SUBCASE("force_include_seed puts the seed clip first") {
    DeterministicRng rng(7);
    SamplerOptions options;
    options.force_include_seed = true;
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t seed = trial % 10;
      const CompositionPlan plan =
          sample_composition(corpus, seed, rng, options);
      REQUIRE(!plan.members.empty());
      CHECK(plan.members[0].clip_id == corpus.clip(seed).id);
    }
  }

  SUBCASE("without the flag the seed still appears by weight") {
    DeterministicRng rng(8);
    int seed_seen = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const CompositionPlan plan = sample_composition(corpus, 0, rng);
      for (const PlanMember& m : plan.members)
        if (m.clip_id == corpus.clip(0).id) ++seed_seen;
    }
    CHECK(seed_seen > 0);
  }

  SUBCASE("temperature feeds through the options") {
    DeterministicRng rng(9);
    SamplerOptions options;
    options.temperature = std::nan("");
    CHECK_ERROR(sample_composition(corpus, 0, rng, options), invalid_argument,
                "temperature");
  }
}

TEST_CASE("render_template interleaves boundaries and captions") {
  const ClipCorpus corpus({clip("A", "a", 10.0, {1.0, 0.0}),
                           clip("B", "b", 10.0, {0.0, 1.0}),
                           clip("C", "c", 10.0, {1.0, 1.0})});

  CompositionPlan plan;
  plan.seed_id = "A";
  plan.members = {{"A", 6.0}, {"B", 8.0}, {"C", 6.0}};
  plan.boundaries = relative_boundaries({6.0, 8.0, 6.0});

  const TemplatedCaption templated = render_template(plan, corpus);
  REQUIRE(templated.size() == 3);
  CHECK(templated.entries()[0] == TemplatedCaption::Entry{0.0, 0.3, "a"});
  CHECK(templated.entries()[1] == TemplatedCaption::Entry{0.3, 0.7, "b"});
  CHECK(templated.entries()[2] == TemplatedCaption::Entry{0.7, 1.0, "c"});

  SUBCASE("single-member plan spans the whole track") {
    CompositionPlan solo;
    solo.seed_id = "B";
    solo.members = {{"B", 9.0}};
    solo.boundaries = {0.0, 1.0};
    const TemplatedCaption t = render_template(solo, corpus);
    REQUIRE(t.size() == 1);
    CHECK(t.entries()[0] == TemplatedCaption::Entry{0.0, 1.0, "b"});
  }

  SUBCASE("unknown member id is named in the error") {
    CompositionPlan bad = plan;
    bad.members[1].clip_id = "Z";
    CHECK_ERROR(render_template(bad, corpus), invalid_argument, "\"Z\"");
  }
}

TEST_CASE("templated caption construction invariants") {
  using Entry = TemplatedCaption::Entry;
  CHECK_NOTHROW(TemplatedCaption({{0.0, 0.5, "x"}, {0.5, 1.0, "y"}}));
  CHECK_ERROR(TemplatedCaption(std::vector<Entry>{}), invalid_argument,
              "no entries");
  CHECK_ERROR(TemplatedCaption({{0.1, 1.0, "x"}}), invalid_argument, "start");
  CHECK_ERROR(TemplatedCaption({{0.0, 0.9, "x"}}), invalid_argument, "end");
  CHECK_ERROR(TemplatedCaption({{0.0, 0.4, "x"}, {0.5, 1.0, "y"}}),
              invalid_argument, "contiguous");
  CHECK_ERROR(TemplatedCaption({{0.0, 0.0, "x"}}), invalid_argument, "");
}

TEST_CASE("plan JSONL round-trip preserves every bit") {
  testutil::TempDir tmp;
  const ClipCorpus corpus = testutil::random_corpus(8, 4, 21);
  DeterministicRng rng(13);

  std::vector<CompositionPlan> plans;
  std::vector<std::string> lines;
  for (int i = 0; i < 40; ++i) {
    plans.push_back(sample_composition(corpus, i % 8, rng));
    if (i % 2 == 0) {
      lines.push_back(plan_to_jsonl(plans.back()));
    } else {
      const std::string caption = "caption #" + std::to_string(i);
      lines.push_back(plan_to_jsonl(plans.back(), &caption));
    }
  }
  write_lines(tmp.path("plans.jsonl"), lines);

  const auto loaded = load_plans(tmp.path("plans.jsonl"));
  REQUIRE(loaded.size() == plans.size());
  for (std::size_t i = 0; i < plans.size(); ++i) {
    CHECK(loaded[i].first == plans[i]);  // bitwise doubles via operator==
    if (i % 2 == 1)
      CHECK(loaded[i].second == "caption #" + std::to_string(i));
    else
      CHECK(loaded[i].second.empty());
  }

  SUBCASE("malformed plan records carry line numbers") {
    tmp.write("bad.jsonl", "{\"seed_id\":\"a\"}\n");
    const tempocap::Error e =
        testutil::expect_error([&] { load_plans(tmp.path("bad.jsonl")); });
    CHECK(e.kind() == ErrorKind::parse);
    CHECK(e.line() == 1);
  }
}
