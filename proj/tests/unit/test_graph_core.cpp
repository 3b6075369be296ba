#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "helpers.hpp"
#include "oracles.hpp"

using namespace ngf;

TEST_SUITE("graph-core") {
  TEST_CASE("id prefixes separate vertices from edges") {
    auto store = test::seeded_store();
    const auto v = store.new_id(EntityKind::vertex);
    const auto e = store.new_id(EntityKind::edge);
    CHECK(v.is_vertex());
    CHECK(e.is_edge());
    CHECK(v.prefix() == 0x01);
    CHECK(e.prefix() == 0x02);
    CHECK(v.prefix() != e.prefix());
  }

  TEST_CASE("id text form round-trips") {
    const EntityId id(EntityKind::edge, 0x0123456789abcdefull, 0x00fedcba987654ull);
    CHECK(id.to_string() == "020123456789abcdef00fedcba987654");
    CHECK(EntityId::parse(id.to_string()) == id);
    CHECK_ERRC(EntityId::parse("xyz"), Errc::invalid_argument);
    CHECK_ERRC(EntityId::parse("030123456789abcdef00fedcba987654"), Errc::invalid_argument);
  }

  TEST_CASE("ids order by timestamp then random") {
    const EntityId a(EntityKind::vertex, 5, 9), b(EntityKind::edge, 6, 1), c(EntityKind::vertex, 6, 2);
    CHECK(a < b);
    CHECK(b < c);
  }

  TEST_CASE("constant rng and clock still give distinct ids") {
    Store store([] { return std::uint64_t{1000}; }, [] { return std::uint64_t{42}; });
    const auto a = store.add_vertex(kCellVertexType, {{"hypergram", "h"}, {"label", "a"}});
    const auto b = store.add_vertex(kCellVertexType, {{"hypergram", "h"}, {"label", "b"}});
    CHECK(a != b);
    CHECK(a.random() == 42);
    CHECK(b.random() == 43);
    // An edge may not reuse the (timestamp, random) pair of a vertex.
    const auto e = store.add_edge(kNeighborEdgeType, a, b);
    CHECK(e.random() == 44);
  }

  TEST_CASE("schema registration") {
    auto store = test::seeded_store();
    store.register_schema({"Face", {{"embedding", ValueDictionary::tensor({128})}}}, Side::vertex);
    CHECK(store.find_schema("Face", Side::vertex) != nullptr);
    CHECK(store.find_schema("Face", Side::vertex)->keys.at("embedding").axes ==
          std::vector<AxisRole>{AxisRole::anonymous});

    store.register_schema({"OWNS", {}}, Side::edge);
    CHECK(store.find_schema("OWNS", Side::edge)->keys.empty());

    CHECK_ERRC(store.register_schema({"Face", {}}, Side::vertex), Errc::duplicate);

    auto empty = ValueDictionary::composite({});
    auto nested = ValueDictionary::composite({{"inner", ValueDictionary::composite({})}});
    CHECK_ERRC(store.register_schema({"Bad", {{"k", empty}}}, Side::vertex), Errc::no_admissible_metric);
    CHECK_ERRC(store.register_schema({"Bad2", {{"k", nested}}}, Side::vertex), Errc::no_admissible_metric);
    // One admissible leaf is enough.
    auto mixed = ValueDictionary::composite({{"inner", ValueDictionary::composite({})}, {"x", ValueDictionary::scalar()}});
    store.register_schema({"Good", {{"k", mixed}}}, Side::vertex);

    CHECK_ERRC(store.register_schema({"Z", {{"t", ValueDictionary::tensor({0})}}}, Side::vertex), Errc::invalid_argument);
    CHECK_ERRC(store.register_schema({"H", {{"h", ValueDictionary::histogram(0)}}}, Side::vertex), Errc::invalid_argument);
  }

  TEST_CASE("dictionary validation") {
    auto temp = ValueDictionary::scalar(-10, 10, 0.5);
    temp.validate(2.5, "t");
    CHECK_ERRC(temp.validate(2.3, "t"), Errc::schema_violation);
    CHECK_ERRC(temp.validate(11.0, "t"), Errc::schema_violation);
    CHECK_ERRC(temp.validate(AttributeValue("x"), "t"), Errc::schema_violation);

    auto colour = ValueDictionary::enumeration({"red", "blue"});
    colour.validate(EnumToken{"red"}, "c");
    CHECK_ERRC(colour.validate(EnumToken{"green"}, "c"), Errc::schema_violation);

    auto hist = ValueDictionary::histogram(3);
    hist.validate(Histogram{{1, 2, 3}, false}, "h");
    hist.validate(Histogram{{0.2, 0.3, 0.5}, true}, "h");
    CHECK_ERRC(hist.validate(Histogram{{0.2, 0.3, 0.6}, true}, "h"), Errc::schema_violation);
    CHECK_ERRC(hist.validate(Histogram{{1, -1, 3}, false}, "h"), Errc::schema_violation);
    CHECK_ERRC(hist.validate(Histogram{{1, 2}, false}, "h"), Errc::shape_mismatch);

    auto tens = ValueDictionary::tensor({2, 2}, {AxisRole::spatial_x, AxisRole::temporal});
    tens.validate(Tensor({2, 2}, {1, 2, 3, 4}), "x");
    CHECK_ERRC(tens.validate(Tensor({4}, {1, 2, 3, 4}), "x"), Errc::shape_mismatch);
    CHECK_ERRC(tens.validate(Tensor({2, 2}, {1, 2, 3}), "x"), Errc::shape_mismatch);

    auto comp = ValueDictionary::composite({{"a", ValueDictionary::scalar()}, {"b", ValueDictionary::string()}});
    comp.validate(Composite{{{"a", 1.0}, {"b", "x"}}}, "c");
    CHECK_ERRC(comp.validate(Composite{{{"a", 1.0}, {"zzz", "x"}}}, "c"), Errc::schema_violation);
  }

  TEST_CASE("axis role tokens") {
    for (auto r : {AxisRole::spatial_x, AxisRole::spatial_y, AxisRole::spatial_z, AxisRole::temporal,
                   AxisRole::spectral, AxisRole::observer, AxisRole::anonymous})
      CHECK(parse_axis_role(to_string(r)) == r);
    CHECK(std::string(to_string(AxisRole::spatial_x)) == "spatial-x");
    CHECK_ERRC(parse_axis_role("sideways"), Errc::invalid_argument);
  }

  TEST_CASE("parallel edges of the same type are kept apart") {
    auto store = test::seeded_store();
    store.register_schema({"Thing", {}}, Side::vertex);
    const auto a = store.add_vertex("Thing");
    const auto b = store.add_vertex("Thing");
    const auto e1 = store.add_edge("IN", a, b);
    const auto e2 = store.add_edge("IN", a, b);
    CHECK(e1 != e2);
    CHECK(store.edges().size() == 2);
    CHECK(store.incident_edges(a).size() == 2);
  }

  TEST_CASE("referential integrity and typing") {
    auto store = test::seeded_store();
    store.register_schema({"Thing", {{"size", ValueDictionary::tensor({3})}}}, Side::vertex);
    const auto a = store.add_vertex("Thing", {{"size", Tensor::vector({1, 2, 3})}});
    const EntityId ghost(EntityKind::vertex, 1, 1);
    CHECK_ERRC(store.add_edge("IN", ghost, a), Errc::dangling_endpoint);
    CHECK_ERRC(store.add_edge("IN", a, ghost), Errc::dangling_endpoint);
    CHECK_ERRC(store.add_vertex("Unknown"), Errc::unknown_type);
    CHECK_ERRC(store.add_edge("NOT_A_TYPE", a, a), Errc::unknown_type);
    CHECK_ERRC(store.add_vertex("Thing", {{"colour", "red"}}), Errc::schema_violation);
    CHECK_ERRC(store.set_vertex_attribute(a, "size", Tensor::vector({1, 2})), Errc::shape_mismatch);
    CHECK(store.vertex(a).attributes.at("size") == AttributeValue(Tensor::vector({1, 2, 3})));
  }

  TEST_CASE("provenance must name an existing attribute and a map") {
    auto store = test::seeded_store();
    store.register_schema({"Face", {{"embedding", ValueDictionary::tensor({2})}}}, Side::vertex);
    const auto v = store.add_vertex("Face", {{"embedding", Tensor::vector({1, 2})}},
                                    {{"embedding", EmbeddingProvenance{"facenet", "1"}}});
    CHECK(store.vertex(v).provenance.at("embedding").map_id == "facenet");
    CHECK_ERRC(store.add_vertex("Face", {}, {{"embedding", EmbeddingProvenance{"facenet", "1"}}}),
               Errc::invalid_argument);
    CHECK_ERRC(store.add_vertex("Face", {{"embedding", Tensor::vector({1, 2})}}, {{"embedding", EmbeddingProvenance{}}}),
               Errc::invalid_argument);
  }

  TEST_CASE("deleting a vertex removes exactly its incident edges") {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 50; ++round) {
      auto store = test::seeded_store(round);
      store.register_schema({"N", {}}, Side::vertex);
      std::vector<EntityId> vs;
      for (int i = 0; i < 6; ++i) vs.push_back(store.add_vertex("N"));
      for (int i = 0; i < 15; ++i) store.add_edge("IN", vs[rng() % 6], vs[rng() % 6]);
      const auto victim = vs[rng() % 6];
      std::set<EntityId> expected;
      for (const auto& [id, e] : store.edges())
        if (e.source != victim && e.target != victim) expected.insert(id);
      store.delete_vertex(victim);
      std::set<EntityId> left;
      for (const auto& [id, _] : store.edges()) left.insert(id);
      CHECK(left == expected);
      CHECK(store.find_vertex(victim) == nullptr);
      CHECK(store.vertices().size() == 5);
    }
  }

  TEST_CASE("constituents of a virtual node cannot be deleted") {
    auto store = test::seeded_store();
    store.register_schema({"N", {}}, Side::vertex);
    const auto b = store.add_vertex("N");
    const auto c = store.add_vertex("N");
    store.add_virtual_node({{b, 0.5}, {c, 0.5}});
    CHECK_ERRC(store.delete_vertex(b), Errc::precondition);
  }

  TEST_CASE("schema soundness scan") {
    auto store = test::seeded_store();
    store.register_schema({"N", {{"x", ValueDictionary::scalar(0, 1)}}}, Side::vertex);
    store.add_vertex("N", {{"x", 0.5}});
    store.add_vertex("N", {{"x", 1.0}});
    CHECK_NOTHROW(store.check_schema_soundness());
  }

  TEST_CASE("vector clocks compare componentwise") {
    VectorClock a{{{"p", 1}, {"q", 0}}}, b{{{"p", 2}, {"q", 1}}}, c{{{"p", 0}, {"q", 1}}};
    CHECK(a.happens_before(b));
    CHECK_FALSE(b.happens_before(a));
    CHECK(a.compare(c) == std::partial_ordering::unordered);
    CHECK(a.compare(a) == std::partial_ordering::equivalent);
    CHECK(VectorClock{{{"p", 1}}}.happens_before(VectorClock{{{"p", 1}, {"q", 1}}}));
  }

  TEST_CASE("query by type and predicate") {
    auto store = test::seeded_store();
    store.register_schema({"P", {{"h", ValueDictionary::scalar()}, {"name", ValueDictionary::string()}}}, Side::vertex);
    const auto a = store.add_vertex("P", {{"h", 5.0}, {"name", "a"}});
    const auto b = store.add_vertex("P", {{"h", 7.0}, {"name", "b"}});
    store.add_vertex("P", {{"name", "c"}});
    CHECK(query_vertices(store, "P", {AttributePredicate::parse("h>=6")}) == std::vector<EntityId>{b});
    CHECK(query_vertices(store, "P", {AttributePredicate::parse("h<6")}) == std::vector<EntityId>{a});
    CHECK(query_vertices(store, "P", {AttributePredicate::parse("h")}).size() == 2);
    CHECK(query_vertices(store, "P", {AttributePredicate::parse("name=b")}) == std::vector<EntityId>{b});
    CHECK(query_vertices(store, "P", {AttributePredicate::parse("name!=b")}).size() == 2);
    CHECK(query_vertices(store, "", {}).size() == 3);
  }
}
