#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "oracles.hpp"

using namespace ngf;

namespace {

std::vector<CalibrationPair> pairs_from(const std::vector<double>& same, const std::vector<double>& diff) {
  std::vector<CalibrationPair> out;
  for (double d : same) out.push_back({d, true});
  for (double d : diff) out.push_back({d, false});
  return out;
}

}  // namespace

TEST_SUITE("calibration") {
  const std::vector<double> same{0.1, 0.2, 0.3, 0.4};
  const std::vector<double> diff{0.35, 0.5, 0.6, 0.7};

  TEST_CASE("equal error rate on overlapping classes") {
    const auto r = calibrate(pairs_from(same, diff), 1.0, 0.0);
    CHECK(r.threshold == doctest::Approx(0.375).epsilon(1e-12));
    CHECK(r.fnr_at_t == 0.25);
    CHECK(r.fpr_at_t == 0.25);
    CHECK(r.n_same == 4);
    CHECK(r.n_diff == 4);
  }

  TEST_CASE("separable classes pick the midpoint") {
    const auto r = calibrate(pairs_from({0.1}, {0.9}), 1.0, 0.0);
    CHECK(r.threshold == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.fnr_at_t == 0.0);
    CHECK(r.fpr_at_t == 0.0);
  }

  TEST_CASE("pure false-positive budget takes the smallest qualifying threshold") {
    const auto sweep = oracle::calibration_sweep(same, diff, 0.0, 0.25);
    double best = 1e300, at = 0;
    for (const auto& s : sweep)
      if (s.objective < best) best = s.objective, at = s.threshold;
    const auto r = calibrate(pairs_from(same, diff), 0.0, 0.25);
    CHECK(r.threshold == at);
    CHECK(r.threshold == doctest::Approx(0.375).epsilon(1e-12));
    CHECK(r.fpr_at_t == 0.25);
  }

  TEST_CASE("candidate thresholds") {
    const auto c = candidate_thresholds(pairs_from({0.2, 0.2}, {0.4}));
    REQUIRE(c.size() == 3);
    CHECK(c[0] == doctest::Approx(-0.8));
    CHECK(c[1] == doctest::Approx(0.3));
    CHECK(c[2] == doctest::Approx(1.4));
  }

  TEST_CASE("input validation") {
    CHECK_ERRC(calibrate(pairs_from({}, {0.5}), 1, 0), Errc::invalid_argument);
    CHECK_ERRC(calibrate(pairs_from({0.5}, {}), 1, 0), Errc::invalid_argument);
    CHECK_ERRC(calibrate(pairs_from({0.5}, {0.6}), -1, 0), Errc::invalid_argument);
    CHECK_ERRC(calibrate(pairs_from({-0.5}, {0.6}), 1, 0), Errc::invalid_argument);
  }

  TEST_CASE("calibrate matches the brute-force sweep on random samples") {
    std::mt19937_64 rng(21);
    std::normal_distribution<double> near(1.0, 0.4), far(2.0, 0.5);
    for (int round = 0; round < 50; ++round) {
      std::vector<double> s, d;
      for (int i = 0; i < 30; ++i) s.push_back(std::abs(near(rng)));
      for (int i = 0; i < 30; ++i) d.push_back(std::abs(far(rng)));
      const double alpha = static_cast<double>(rng() % 4) / 2.0;
      const double beta = static_cast<double>(rng() % 3) / 10.0;
      const auto sweep = oracle::calibration_sweep(s, d, alpha, beta);
      double best = 1e300, at = 0;
      for (const auto& x : sweep)
        if (x.objective < best) best = x.objective, at = x.threshold;
      const auto r = calibrate(pairs_from(s, d), alpha, beta);
      CHECK(r.threshold == at);
    }
  }

  TEST_CASE("is_equal uses less-or-equal") {
    CalibrationResult cal;
    cal.threshold = 5.0;
    const MetricDescriptor m{MetricId::euclidean, "x", {}};
    CHECK(is_equal(1.0, 1.0, m, cal));
    CHECK(is_equal(0.0, 5.0, m, cal));
    CHECK_FALSE(is_equal(0.0, 5.000001, m, cal));
    cal.metric = MetricId::cosine_distance;
    CHECK_ERRC(is_equal(0.0, 1.0, m, cal), Errc::invalid_argument);
    cal.metric = MetricId::euclidean;
    cal.field = "y";
    CHECK_ERRC(is_equal(0.0, 1.0, m, cal), Errc::invalid_argument);
  }

  TEST_CASE("infer_similarity_edges") {
    auto store = test::seeded_store();
    store.register_schema({"P", {{"x", ValueDictionary::scalar()}}}, Side::vertex);
    const MetricDescriptor m{MetricId::euclidean, "x", {}};
    CalibrationResult cal;
    cal.threshold = 0.5;

    SUBCASE("identical values give two directed edges") {
      const std::vector<EntityId> ids{store.add_vertex("P", {{"x", 1.0}}), store.add_vertex("P", {{"x", 1.0}})};
      const auto r = infer_similarity_edges(store, ids, m, cal);
      REQUIRE(r.edges.size() == 2);
      CHECK(store.edge(r.edges[0]).type == "IS_SIMILAR_AS_EUCLIDEAN_ON_x");
      CHECK(store.edge(r.edges[0]).attributes.at("distance") == AttributeValue(0.0));
      CHECK(store.edge(r.edges[0]).source == store.edge(r.edges[1]).target);
    }
    SUBCASE("singleton") {
      const std::vector<EntityId> ids{store.add_vertex("P", {{"x", 1.0}})};
      CHECK(infer_similarity_edges(store, ids, m, cal).edges.empty());
    }
    SUBCASE("one close pair among three") {
      const std::vector<EntityId> ids{store.add_vertex("P", {{"x", 0.0}}), store.add_vertex("P", {{"x", 0.1}}),
                                      store.add_vertex("P", {{"x", 1.0}})};
      CHECK(infer_similarity_edges(store, ids, m, cal).edges.size() == 2);
    }
    SUBCASE("vertices without the field are skipped") {
      const std::vector<EntityId> ids{store.add_vertex("P", {{"x", 0.0}}), store.add_vertex("P")};
      const auto r = infer_similarity_edges(store, ids, m, cal);
      CHECK(r.edges.empty());
      CHECK(r.skipped == 1);
    }
  }
}
