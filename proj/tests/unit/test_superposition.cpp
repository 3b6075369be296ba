#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"

using namespace ngf;

TEST_SUITE("superposition") {
  TEST_CASE("direction probabilities") {
    const auto p = direction_probabilities(DirectionAmplitudes::make(0.6, 0.8, 0.0));
    CHECK(p.forward == 0.36);
    CHECK(p.backward == 0.64);
    CHECK(p.bidirectional == 0.0);

    const auto c = direction_probabilities(DirectionAmplitudes::concrete());
    CHECK(c.forward == 1.0);
    CHECK(c.backward == 0.0);

    const double r = 1.0 / std::sqrt(3.0);
    const auto s = direction_probabilities({r, r, r});
    CHECK(s.forward == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(std::abs(s.forward + s.backward + s.bidirectional - 1.0) <= 2e-9);

    CHECK_ERRC(DirectionAmplitudes::make(0.5, 0.5, 0.0), Errc::invalid_argument);
    CHECK_ERRC(DirectionAmplitudes::make(-0.6, 0.8, 0.0), Errc::invalid_argument);
  }

  TEST_CASE("probabilities of random unit amplitudes sum to one") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 1000; ++i) {
      double a = u(rng), b = u(rng), c = u(rng);
      const double n = std::sqrt(a * a + b * b + c * c);
      const auto p = direction_probabilities({a / n, b / n, c / n});
      CHECK(std::abs(p.forward + p.backward + p.bidirectional - 1.0) <= 2e-9);
    }
  }

  TEST_CASE("virtual node construction") {
    const EntityId b(EntityKind::vertex, 1, 1), c(EntityKind::vertex, 1, 2), d(EntityKind::vertex, 1, 3),
        e(EntityKind::vertex, 1, 4);
    const auto four = make_virtual_node({{b, 0.4}, {c, 0.3}, {d, 0.2}, {e, 0.1}});
    CHECK(four.constituents.size() == 4);
    const auto alias = make_virtual_node({{b, 1.0}});
    CHECK(alias.is_alias());
    CHECK_ERRC(make_virtual_node({{b, 0.8}, {c, 0.8}}), Errc::invalid_argument);
    CHECK_ERRC(make_virtual_node({}), Errc::invalid_argument);
    CHECK_ERRC(make_virtual_node({{b, 0.0}}), Errc::invalid_argument);
    CHECK_ERRC(make_virtual_node({{b, 0.5}, {b, 0.5}}), Errc::invalid_argument);
    const auto scaled = make_virtual_node({{b, 0.2}, {c, 0.2}});
    CHECK(scaled.constituents[0].weight == 0.5);
  }

  TEST_CASE("collapse") {
    const EntityId b(EntityKind::vertex, 1, 1), c(EntityKind::vertex, 1, 2);
    std::mt19937_64 rng(17);
    const auto alias = make_virtual_node({{b, 1.0}});
    for (int i = 0; i < 100; ++i) CHECK(collapse(alias, rng) == b);

    const auto half = make_virtual_node({{b, 0.5}, {c, 0.5}});
    int hits = 0;
    for (int i = 0; i < 100000; ++i) hits += collapse(half, rng) == b;
    CHECK(std::abs(hits / 100000.0 - 0.5) <= 0.01);

    std::mt19937_64 r1(5), r2(5);
    for (int i = 0; i < 50; ++i) CHECK(collapse(half, r1) == collapse(half, r2));
  }

  TEST_CASE("expected adjacency") {
    auto store = test::seeded_store();
    store.register_schema({"N", {}}, Side::vertex);
    const auto a = store.add_vertex("N");
    const auto b = store.add_vertex("N");
    const auto c = store.add_vertex("N");

    SUBCASE("concrete edge") {
      store.add_edge("IN", a, b);
      const auto t = expected_adjacency(store);
      CHECK(t.size() == 1);
      CHECK(t.at({a, b}) == 1.0);
    }
    SUBCASE("superposed edge") {
      store.add_edge("IN", a, b, {}, SuperpositionDescriptor{DirectionAmplitudes::make(0.6, 0.8, 0.0)});
      const auto t = expected_adjacency(store);
      CHECK(t.at({a, b}) == 0.36);
      CHECK(t.at({b, a}) == 0.64);
    }
    SUBCASE("edge into a virtual node") {
      const auto v = store.add_virtual_node({{b, 0.5}, {c, 0.5}});
      store.add_edge("IN", a, v);
      const auto t = expected_adjacency(store);
      CHECK(t.at({a, b}) == 0.5);
      CHECK(t.at({a, c}) == 0.5);
    }
    SUBCASE("bidirectional mass goes both ways") {
      store.add_edge("IN", a, b, {}, SuperpositionDescriptor{DirectionAmplitudes::make(0.0, 0.0, 1.0)});
      const auto t = expected_adjacency(store);
      CHECK(t.at({a, b}) == 1.0);
      CHECK(t.at({b, a}) == 1.0);
    }
  }
}
