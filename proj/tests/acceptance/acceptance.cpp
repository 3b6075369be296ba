// Runs the nine acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <thread>

#include <boost/math/distributions/chi_squared.hpp>

#include "ngf/ngf.hpp"
#include "oracles.hpp"

using namespace ngf;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first failure message; later ones are counted only.
class Verdict {
 public:
  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (failures_++ == 0) first_ = what;
  }
  Outcome finish(std::string summary) const {
    if (failures_ == 0) return {true, std::move(summary)};
    return {false, first_ + " (" + std::to_string(failures_) + " failures)"};
  }

 private:
  std::size_t failures_ = 0;
  std::string first_;
};

Store seeded_store(std::uint64_t seed) {
  auto tick = std::make_shared<std::uint64_t>(1'700'000'000'000'000'000ull);
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return Store([tick] { return ++*tick; }, [rng] { return (*rng)(); });
}

std::vector<double> random_histogram(std::mt19937_64& rng, std::size_t bins) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> h(bins);
  for (auto& x : h) x = u(rng);
  h[rng() % bins] += 0.01;  // never all zero
  return h;
}

Outcome bhattacharyya_suite() {
  Verdict v;
  std::mt19937_64 rng(1001);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t bins = 2 + rng() % 63;
    const Histogram p{random_histogram(rng, bins)}, q{random_histogram(rng, bins)};
    const double bc = bhattacharyya_coefficient(p, q);
    v.require(bc >= 0.0 && bc <= 1.0, "BC outside [0,1]");
    v.require(std::abs(bc - oracle::bhattacharyya_coefficient(p.counts, q.counts)) <= 1e-12, "BC differs from oracle");
    v.require(bhattacharyya_distance(p, p) <= 1e-12, "D_B(p,p) above 1e-12");
    v.require(std::abs(bhattacharyya_distance(p, q) - bhattacharyya_distance(q, p)) <= 1e-12, "D_B asymmetric");
  }
  const double anchor = bhattacharyya_distance(Histogram{{0.5, 0.5}}, Histogram{{0.9, 0.1}});
  const double oracle_anchor = -std::log(std::sqrt(0.45) + std::sqrt(0.05));
  v.require(std::abs(anchor - 0.111572) <= 1e-6, "worked pair D_B != 0.111572");
  v.require(std::abs(anchor - oracle_anchor) <= 1e-15, "worked pair differs from arithmetic oracle");
  std::ostringstream s;
  s.precision(7);
  s << "1000 pairs, worked pair D_B=" << anchor;
  return v.finish(s.str());
}

Outcome eer_anchor() {
  Verdict v;
  std::mt19937_64 rng(2002);
  std::normal_distribution<double> same_d(1.0, 0.5), diff_d(2.0, 0.5);
  std::vector<CalibrationPair> pairs;
  std::vector<double> same, diff;
  for (int i = 0; i < 200; ++i) {
    same.push_back(std::abs(same_d(rng)));
    diff.push_back(std::abs(diff_d(rng)));
    pairs.push_back({same.back(), true});
    pairs.push_back({diff.back(), false});
  }
  const auto r = calibrate(pairs, 1.0, 0.0);
  const auto sweep = oracle::calibration_sweep(same, diff, 1.0, 0.0);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : sweep) best = std::min(best, std::abs(s.fnr - s.fpr));
  v.require(std::abs(r.fnr_at_t - r.fpr_at_t) == best, "|FNR-FPR| at threshold is not the brute-force minimum");
  const auto at = std::find_if(sweep.begin(), sweep.end(), [&](const auto& s) { return s.threshold == r.threshold; });
  v.require(at != sweep.end() && at->fpr == r.fpr_at_t && at->fnr == r.fnr_at_t, "threshold rates disagree with oracle");
  std::ostringstream s;
  s << "threshold=" << r.threshold << " |FNR-FPR|=" << best << " over " << sweep.size() << " candidates";
  return v.finish(s.str());
}

AttributeValue random_field(std::mt19937_64& rng, int kind) {
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  switch (kind) {
    case 0: return AttributeValue(u(rng));
    case 1: {
      std::vector<double> h(4);
      for (auto& x : h) x = std::abs(u(rng));
      return AttributeValue(Histogram{h});
    }
    default: {
      std::vector<double> t(6);
      for (auto& x : t) x = u(rng);
      return AttributeValue(Tensor({2, 3}, t));
    }
  }
}

// Nudges one component of a numeric value by a single ulp, or by a large
// step, leaving the kind and shape intact.
AttributeValue perturb(std::mt19937_64& rng, const AttributeValue& value) {
  auto bump = [&](double x) { return rng() % 2 ? std::nextafter(x, INFINITY) : x + 1.0; };
  if (value.holds<double>()) return AttributeValue(bump(value.as<double>()));
  if (value.holds<Histogram>()) {
    auto h = value.as<Histogram>();
    auto& x = h.counts[rng() % h.counts.size()];
    x = bump(x);
    return AttributeValue(h);
  }
  auto t = value.as<Tensor>();
  auto& x = t.data[rng() % t.data.size()];
  x = bump(x);
  return AttributeValue(t);
}

bool bitwise_equal(const AttributeValue& a, const AttributeValue& b) {
  auto same_bits = [](const std::vector<double>& x, const std::vector<double>& y) {
    return x.size() == y.size() && std::memcmp(x.data(), y.data(), x.size() * sizeof(double)) == 0;
  };
  if (a.holds<double>()) return same_bits({a.as<double>()}, {b.as<double>()});
  if (a.holds<Histogram>()) return same_bits(a.as<Histogram>().counts, b.as<Histogram>().counts);
  return a.as<Tensor>().shape == b.as<Tensor>().shape && same_bits(a.as<Tensor>().data, b.as<Tensor>().data);
}

Outcome dirac_degeneracy() {
  Verdict v;
  std::mt19937_64 rng(3003);
  const auto kernel = KernelDescriptor::gaussian({0.0}, {"obs", {"f0", "f1", "f2"}});
  int agree = 0, equal_pairs = 0;
  for (int i = 0; i < 500; ++i) {
    Vertex a, b;
    a.type = b.type = "Probe";
    for (int f = 0; f < 3; ++f) {
      const auto key = "f" + std::to_string(f);
      const auto value = random_field(rng, f);
      a.attributes.emplace(key, value);
      b.attributes.emplace(key, rng() % 4 == 0 ? perturb(rng, value) : value);
    }
    const bool expected = std::all_of(a.attributes.begin(), a.attributes.end(),
                                      [&](const auto& kv) { return bitwise_equal(kv.second, b.attributes.at(kv.first)); });
    equal_pairs += expected;
    agree += kernel_compare(a, b, kernel, 0.0).verdict == expected;
  }
  v.require(agree == 500, std::to_string(agree) + "/500 agree with bitwise equality");
  return v.finish(std::to_string(agree) + "/500 agree (" + std::to_string(equal_pairs) + " equal pairs)");
}

Outcome flow_conservation() {
  Verdict v;
  std::mt19937_64 rng(4004);
  std::uniform_real_distribution<double> flux(-50.0, 50.0);
  double worst = 0.0;
  for (int round = 0; round < 200; ++round) {
    const int n = 2 + static_cast<int>(rng() % 7);
    FlowNetwork net;
    for (int i = 0; i < n; ++i) net.add_node(std::to_string(i));
    std::vector<oracle::CapArc> arcs;
    std::map<std::string, double> caps;
    FlowAssignment assignment;
    const int m = static_cast<int>(rng() % 20);
    for (int i = 0; i < m; ++i) {
      const int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n);
      const std::string id = "a" + std::to_string(i);
      net.add_arc({id, std::to_string(a), std::to_string(b)});
      const double c = static_cast<double>(rng() % 6);
      caps[id] = c;
      arcs.push_back({a, b, c});
      assignment.flux[id] = flux(rng);
    }
    double total = 0.0;
    for (const auto& node : net.nodes()) total += divergence(net, assignment, node);
    worst = std::max(worst, std::abs(total));
    v.require(std::abs(total) <= 1e-9, "sum of divergences exceeds 1e-9");
    const double got = max_flow(net, {}, "0", std::to_string(n - 1), caps).value;
    v.require(got == oracle::min_cut(n, arcs, 0, n - 1), "max flow differs from brute-force min cut");
  }
  std::ostringstream s;
  s << "200 graphs, worst |sum div|=" << worst;
  return v.finish(s.str());
}

Outcome superposition_statistics() {
  Verdict v;
  auto store = seeded_store(5005);
  store.register_schema({"Atom", {}}, Side::vertex);
  std::vector<EntityId> ids;
  for (int i = 0; i < 4; ++i) ids.push_back(store.add_vertex("Atom"));
  const std::vector<double> weights{0.4, 0.3, 0.2, 0.1};
  const auto vn = *store.find_virtual_node(store.add_virtual_node(
      {{ids[0], weights[0]}, {ids[1], weights[1]}, {ids[2], weights[2]}, {ids[3], weights[3]}}));

  constexpr int kDraws = 100000;
  std::mt19937_64 rng(5005);
  std::map<EntityId, int> counts;
  for (int i = 0; i < kDraws; ++i) ++counts[collapse(vn, rng)];
  double chi2 = 0.0;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const double expected = kDraws * weights[i];
    const double diff = counts[ids[i]] - expected;
    chi2 += diff * diff / expected;
  }
  const double critical = boost::math::quantile(boost::math::complement(boost::math::chi_squared(3.0), 0.001));
  v.require(chi2 < critical, "chi-square statistic exceeds the 0.001 critical value");

  const auto p = direction_probabilities(DirectionAmplitudes::make(0.6, 0.8, 0.0));
  v.require(p.forward == 0.36 && p.backward == 0.64 && p.bidirectional == 0.0, "(0.6,0.8,0) is not (0.36,0.64,0)");
  std::ostringstream s;
  s.precision(4);
  s << "chi2=" << chi2 << " < " << critical << ", probabilities exact";
  return v.finish(s.str());
}

Outcome hypergram_convergence() {
  Verdict v;
  std::mt19937_64 rng(6006);
  constexpr int kWriters = 4;
  for (int round = 0; round < 100; ++round) {
    const bool integral = round % 2 == 0;
    std::vector<double> deltas(40 + rng() % 200);
    std::uniform_real_distribution<double> real(-5.0, 5.0);
    for (auto& d : deltas) d = integral ? static_cast<double>(static_cast<int>(rng() % 41) - 20) : real(rng);
    std::shuffle(deltas.begin(), deltas.end(), rng);
    double sequential = 0.0;
    for (double d : deltas) sequential += d;

    HypergramCell cell(EntityId{}, CellKind::scalar, {}, 8);
    std::vector<std::thread> writers;
    std::atomic<int> done{0};
    for (int w = 0; w < kWriters; ++w) {
      const std::uint64_t seed = rng();
      writers.emplace_back([&, w, seed] {
        std::mt19937_64 local(seed);
        for (std::size_t i = static_cast<std::size_t>(w); i < deltas.size(); i += kWriters) {
          if (local() % 2)
            cell.accumulate(deltas[i], local() % 8);
          else
            cell.accumulate(deltas[i]);
          if (local() % 16 == 0) std::this_thread::yield();
        }
        ++done;
      });
    }
    while (done.load() < kWriters) cell.reconcile();
    for (auto& t : writers) t.join();

    const double got = cell.reconcile().as<double>();
    if (integral)
      v.require(got == sequential, "integer reconcile differs from the sequential sum");
    else
      v.require(std::abs(got - sequential) <= 1e-9, "float reconcile off by more than 1e-9");
    v.require(cell.reconcile().as<double>() == got, "reconcile is not idempotent");
  }
  return v.finish("100 rounds, 4 writers over 8 shards");
}

Outcome happens_before_order() {
  Verdict v;
  std::mt19937_64 rng(7007);
  std::size_t total_edges = 0;
  for (int round = 0; round < 300; ++round) {
    auto store = seeded_store(rng());
    store.register_schema({"Event", {{"clock", ValueDictionary::vector_clock()}}}, Side::vertex);
    const std::size_t n = 1 + rng() % 8, procs = 1 + rng() % 4;
    std::vector<EntityId> ids;
    std::vector<oracle::Clock> clocks;
    for (std::size_t i = 0; i < n; ++i) {
      VectorClock vc;
      oracle::Clock oc;
      for (std::size_t p = 0; p < procs; ++p) {
        const auto value = rng() % 4;
        if (value == 0 && rng() % 2) continue;
        vc.entries["p" + std::to_string(p)] = value;
        oc["p" + std::to_string(p)] = value;
      }
      ids.push_back(store.add_vertex("Event", {{"clock", vc}}));
      clocks.push_back(oc);
    }
    derive_happens_before_all(store, ids, "clock");

    std::set<std::pair<EntityId, EntityId>> rel;
    for (const auto& [_, e] : store.edges()) {
      v.require(e.type == "HAPPENS_BEFORE", "unexpected edge type");
      v.require(rel.insert({e.source, e.target}).second, "duplicate happens-before edge");
    }
    total_edges += rel.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const bool edge = rel.contains({ids[i], ids[j]});
        v.require(edge == oracle::clock_before(clocks[i], clocks[j]), "edge set differs from the clock oracle");
        if (i == j) v.require(!edge, "reflexive edge");
        if (edge) v.require(!rel.contains({ids[j], ids[i]}), "antisymmetry violated");
        for (std::size_t k = 0; k < n && edge; ++k)
          if (rel.contains({ids[j], ids[k]})) v.require(rel.contains({ids[i], ids[k]}), "transitivity violated");
      }
  }
  return v.finish("300 clock sets, " + std::to_string(total_edges) + " edges checked");
}

// A store that touches every persisted feature: both schema sides, every
// attribute kind, provenance, parallel and superposed edges, virtual nodes,
// metrics, kernels, calibrations, replication metadata and hypergrams.
Store random_store(std::mt19937_64& rng) {
  auto store = seeded_store(rng());
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  const std::size_t dim = rng() % 3 == 0 ? 1500 : 1 + rng() % 64;
  store.register_schema(
      {"Thing",
       {{"x", ValueDictionary::scalar()},
        {"mood", ValueDictionary::enumeration({"calm", "loud"})},
        {"name", ValueDictionary::string()},
        {"hist", ValueDictionary::histogram(5)},
        {"emb", ValueDictionary::tensor({dim})},
        {"series", ValueDictionary::tensor({4, 2}, {AxisRole::temporal, AxisRole::spectral})},
        {"clock", ValueDictionary::vector_clock()},
        {"meta", ValueDictionary::composite({{"w", ValueDictionary::scalar(0, 1)}, {"tag", ValueDictionary::string()}})}}},
      Side::vertex);
  store.register_schema({"LINK", {{"weight", ValueDictionary::scalar()}}}, Side::edge);
  store.register_schema({"RELATED_TO", {{"since", ValueDictionary::vector_clock()}}}, Side::edge);

  std::vector<EntityId> vs;
  const std::size_t n = 2 + rng() % 10;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> emb(dim), series(8), hist(5);
    for (auto& x : emb) x = u(rng);
    for (auto& x : series) x = u(rng);
    for (auto& x : hist) x = std::abs(u(rng));
    const bool normalized = rng() % 2 == 0;
    if (normalized) {
      double total = 0.0;
      for (double x : hist) total += x;
      for (auto& x : hist) x /= total;
    }
    Attributes attrs{{"x", u(rng)},
                     {"mood", EnumToken{rng() % 2 ? "calm" : "loud"}},
                     {"name", "v" + std::to_string(rng() % 1000) + "\"\\\n"},
                     {"hist", Histogram{hist, normalized}},
                     {"emb", Tensor::vector(emb)},
                     {"series", Tensor({4, 2}, series)},
                     {"clock", VectorClock{{{"p", rng() % 9}, {"q", rng() % 9}}}},
                     {"meta", Composite{{{"w", 0.5}, {"tag", "t"}}}}};
    if (i == 1) attrs["x"] = -0.0;
    if (i > 1 && rng() % 3 == 0) attrs.erase("x");
    ProvenanceMap prov;
    if (rng() % 2) prov["emb"] = EmbeddingProvenance{"model-" + std::to_string(rng() % 4), "1." + std::to_string(i)};
    vs.push_back(store.add_vertex("Thing", std::move(attrs), std::move(prov)));
  }

  std::vector<EntityId> endpoints = vs;
  const std::size_t virtual_nodes = rng() % 3;
  for (std::size_t k = 0; k < virtual_nodes; ++k) {
    const double w = static_cast<double>(1 + rng() % 9) / 10.0;
    endpoints.push_back(store.add_virtual_node({{vs[0], w}, {vs[1], 1.0 - w}}));
  }
  const std::size_t m = rng() % 15;
  for (std::size_t k = 0; k < m; ++k) {
    const auto a = endpoints[rng() % endpoints.size()], b = endpoints[rng() % endpoints.size()];
    std::optional<SuperpositionDescriptor> sup;
    if (rng() % 3 == 0) {
      const double theta = std::uniform_real_distribution<double>(0.0, 1.5707963267948966)(rng);
      sup = SuperpositionDescriptor{DirectionAmplitudes::make(std::cos(theta), std::sin(theta), 0.0)};
    }
    if (rng() % 2)
      store.add_edge("LINK", a, b, {{"weight", u(rng)}}, sup);
    else
      store.add_edge("RELATED_TO", a, b, {{"since", VectorClock{{{"p", rng() % 4}}}}}, sup);
  }

  store.register_metric("l2", "Thing", {MetricId::euclidean, "emb", {}});
  store.register_metric("bc", "Thing", {MetricId::bhattacharyya, "hist", {}});
  store.register_metric("warp", "Thing", {MetricId::dtw, "series", {{"band", 2}}});
  store.register_kernel("eye", KernelDescriptor::gaussian({u(rng) > 0 ? 0.5 : 1.25}, {"eye", {"emb", "x"}}));
  CalibrationResult cal;
  cal.threshold = u(rng);
  cal.alpha = 1.0 / 3.0;
  cal.fpr_at_t = 0.1;
  cal.n_same = 7;
  cal.metric = MetricId::euclidean;
  cal.field = "emb";
  store.store_calibration("l2-cal", cal);
  store.replication() = {1 + rng() % 5, "declared"};

  create_hypergram(store, "grid", TopologyKind::dense({1 + rng() % 3, 1 + rng() % 3}), CellKind::histogram, {3},
                   1 + rng() % 4, "weather");
  for (auto& [id, cell] : store.hypergram("grid").cells) {
    cell.accumulate(Histogram{{1, 2, static_cast<double>(rng() % 5)}});
    if (rng() % 2) cell.reconcile();
    cell.accumulate(Histogram{{0.25, 0, 0}});
  }
  create_hypergram(store, "free", TopologyKind::sparse(), CellKind::tensor, {2, 2});
  const auto c0 = add_cell(store, "free", "c0");
  const auto c1 = add_cell(store, "free", "c1");
  link_cells(store, "free", c0, c1);
  store.hypergram("free").cell(c1).accumulate(Tensor({2, 2}, {u(rng), u(rng), u(rng), u(rng)}));
  return store;
}

Outcome persistence() {
  Verdict v;
  std::mt19937_64 rng(8008);
  std::size_t bytes_total = 0;
  for (int i = 0; i < 50; ++i) {
    const auto store = random_store(rng);
    const auto first = serialize(store);
    const auto second = serialize(store);
    v.require(first == second, "double save is not deterministic");
    const auto back = deserialize(first);
    v.require(back.same_content(store), "reloaded store differs");
    v.require(serialize(back) == first, "round trip is not byte-identical");
    bytes_total += first.size();
  }
  return v.finish("50 stores, " + std::to_string(bytes_total) + " bytes round-tripped");
}

Outcome end_to_end() {
  Verdict v;
  constexpr std::size_t kDim = 128, kClusters = 4, kPerCluster = 5;
  constexpr double kRadius = 1.0, kSeparation = 5.0 * kRadius;
  std::mt19937_64 rng(9009);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto unit = [&] {
    std::vector<double> x(kDim);
    double n = 0.0;
    for (auto& c : x) n += (c = gauss(rng)) * c;
    for (auto& c : x) c /= std::sqrt(n);
    return x;
  };

  // Centres on scaled coordinate axes are pairwise 2*kSeparation apart, and
  // members sit inside the radius, so intra < 2r <= inter - 2r by a margin.
  std::vector<std::vector<double>> centres(kClusters, std::vector<double>(kDim, 0.0));
  for (std::size_t c = 0; c < kClusters; ++c) centres[c][c] = kSeparation * std::sqrt(2.0);

  auto store = seeded_store(9009);
  store.register_schema({"Face", {{"embedding", ValueDictionary::tensor({kDim})}, {"cluster", ValueDictionary::scalar()}}},
                        Side::vertex);
  std::vector<EntityId> faces;
  std::map<EntityId, std::size_t> cluster_of;
  for (std::size_t c = 0; c < kClusters; ++c)
    for (std::size_t k = 0; k < kPerCluster; ++k) {
      auto dir = unit();
      const double r = kRadius * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      std::vector<double> x(kDim);
      for (std::size_t d = 0; d < kDim; ++d) x[d] = centres[c][d] + r * dir[d];
      const auto id = store.add_vertex("Face", {{"embedding", Tensor::vector(x)}, {"cluster", static_cast<double>(c)}},
                                       {{"embedding", EmbeddingProvenance{"synthetic", "1"}}});
      faces.push_back(id);
      cluster_of[id] = c;
    }

  const MetricDescriptor metric{MetricId::euclidean, "embedding", {}};
  store.register_metric("face-l2", "Face", metric);
  std::vector<CalibrationPair> labelled;
  for (std::size_t i = 0; i < faces.size(); ++i)
    for (std::size_t j = i + 1; j < faces.size(); ++j)
      labelled.push_back({distance(metric, store.vertex(faces[i]).attributes.at("embedding"),
                                   store.vertex(faces[j]).attributes.at("embedding")),
                          cluster_of[faces[i]] == cluster_of[faces[j]]});
  auto cal = calibrate(labelled, 1.0, 0.0);
  cal.metric = metric.metric;
  cal.field = metric.field;
  store.store_calibration("faces", cal);

  const auto inferred = infer_similarity_edges(store, faces, metric, cal);
  std::size_t intra = 0;
  for (EntityId e : inferred.edges) {
    const auto& edge = store.edge(e);
    if (cluster_of.at(edge.source) == cluster_of.at(edge.target))
      ++intra;
    else
      v.require(false, "similarity edge crosses clusters");
  }
  const std::size_t expected = kClusters * kPerCluster * (kPerCluster - 1);
  v.require(intra == expected, "expected " + std::to_string(expected) + " intra-cluster edges, got " + std::to_string(intra));
  v.require(cal.fpr_at_t == 0.0 && cal.fnr_at_t == 0.0, "calibration did not separate the clusters");
  std::ostringstream s;
  s << inferred.edges.size() << " edges, all intra-cluster, threshold=" << cal.threshold;
  return v.finish(s.str());
}

struct Criterion {
  int number;
  const char* name;
  std::function<Outcome()> run;
  double budget_seconds;  // 0 means no runtime bound
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "bhattacharyya suite", bhattacharyya_suite, 1.0},
      {2, "equal error rate anchor", eer_anchor, 1.0},
      {3, "dirac degeneracy", dirac_degeneracy, 0.0},
      {4, "flow conservation and max flow", flow_conservation, 0.0},
      {5, "superposition statistics", superposition_statistics, 0.0},
      {6, "hypergram convergence", hypergram_convergence, 0.0},
      {7, "happens-before order", happens_before_order, 0.0},
      {8, "persistence round trip", persistence, 0.0},
      {9, "face clustering end to end", end_to_end, 5.0},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("threw: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (outcome.pass && c.budget_seconds > 0.0 && seconds >= c.budget_seconds) {
      outcome.pass = false;
      outcome.detail += " (over the " + std::to_string(c.budget_seconds) + " s budget)";
    }
    failed += !outcome.pass;
    std::cout << "criterion " << c.number << " [" << (outcome.pass ? "PASS" : "FAIL") << "] " << c.name << ": "
              << outcome.detail << " (" << static_cast<long long>(seconds * 1000.0) << " ms)\n";
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
