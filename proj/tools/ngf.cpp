#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ngf/ngf.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

enum Exit : int { kOk = 0, kUsage = 1, kData = 2, kIo = 3 };

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ngf::Error(ngf::Errc::io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Arguments starting with '@' name a file holding the text.
std::string text_or_file(const std::string& arg) { return arg.starts_with("@") ? slurp(arg.substr(1)) : arg; }

std::vector<double> split_numbers(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ngf::Error(ngf::Errc::invalid_argument, "'" + item + "' is not a number");
    }
  }
  return out;
}

std::vector<std::size_t> split_sizes(const std::string& csv) {
  std::vector<std::size_t> out;
  for (double x : split_numbers(csv)) {
    if (x < 0 || x != std::floor(x)) throw ngf::Error(ngf::Errc::invalid_argument, "extents must be whole numbers");
    out.push_back(static_cast<std::size_t>(x));
  }
  return out;
}

ngf::Side parse_side(const std::string& side) {
  if (side == "vertex") return ngf::Side::vertex;
  if (side == "edge") return ngf::Side::edge;
  throw ngf::Error(ngf::Errc::invalid_argument, "side must be 'vertex' or 'edge'");
}

struct Globals {
  std::optional<std::uint64_t> seed;
};

ngf::Store open_store(const fs::path& path, const Globals& g) {
  auto store = ngf::load(path);
  if (g.seed) {
    auto rng = std::make_shared<std::mt19937_64>(*g.seed);
    store.set_id_sources(
        [] {
          return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(
                                                std::chrono::system_clock::now().time_since_epoch())
                                                .count());
        },
        [rng] { return (*rng)(); });
  }
  return store;
}

ngf::EntityId cell_by_id_or_label(const ngf::Store& store, const ngf::Hypergram& hg, const std::string& ref) {
  if (ref.size() == 32) return ngf::EntityId::parse(ref);
  for (const auto& [id, _] : hg.cells) {
    const auto* label = store.vertex(id).find("label");
    if (label && label->holds<std::string>() && label->as<std::string>() == ref) return id;
  }
  throw ngf::Error(ngf::Errc::not_found, "hypergram '" + hg.name + "' has no cell labelled '" + ref + "'");
}

json judgement_json(const ngf::EqualityJudgement& j) {
  return {{"verdict", j.verdict},
          {"score", j.score},
          {"epsilon", j.epsilon},
          {"kernel", ngf::to_string(j.kernel.kind)},
          {"sigma", j.kernel.sigma},
          {"observers", j.observers}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ngf - tensor-typed multigraph store"};
  app.require_subcommand(1);
  Globals globals;
  app.add_option("--seed", globals.seed, "Seed for the random part of new entity ids");

  std::function<int()> action;
  auto on = [&](CLI::App* cmd, std::function<int()> fn) { cmd->callback([&action, fn] { action = fn; }); };

  // init -------------------------------------------------------------------
  std::string store_path;
  bool force = false;
  auto* init = app.add_subcommand("init", "Create an empty store file");
  init->add_option("store", store_path, "Path of the .ngf file")->required();
  init->add_flag("--force", force, "Overwrite an existing file");
  on(init, [&] {
    if (!force && fs::exists(store_path)) throw ngf::Error(ngf::Errc::io, store_path + " already exists");
    ngf::save(ngf::Store{}, store_path);
    return kOk;
  });

  // schema add -------------------------------------------------------------
  std::string side = "vertex", schema_text;
  auto* schema = app.add_subcommand("schema", "Manage type schemas");
  schema->require_subcommand(1);
  auto* schema_add = schema->add_subcommand("add", "Register a type schema given as JSON (or @file)");
  schema_add->add_option("store", store_path)->required();
  schema_add->add_option("schema", schema_text, "{\"type\": ..., \"keys\": {...}}")->required();
  schema_add->add_option("--side", side, "vertex or edge")->capture_default_str();
  on(schema_add, [&] {
    auto store = open_store(store_path, globals);
    store.register_schema(ngf::schema_from_json(text_or_file(schema_text)), parse_side(side));
    ngf::save(store, store_path);
    return kOk;
  });

  // vertex add / edge add --------------------------------------------------
  std::string type, attrs_text = "{}", source, target, amplitudes;
  auto* vertex = app.add_subcommand("vertex", "Manage vertices");
  vertex->require_subcommand(1);
  auto* vertex_add = vertex->add_subcommand("add", "Add a vertex and print its id");
  vertex_add->add_option("store", store_path)->required();
  vertex_add->add_option("--type", type)->required();
  vertex_add->add_option("--attrs", attrs_text, "Tagged attribute JSON (or @file)");
  on(vertex_add, [&] {
    auto store = open_store(store_path, globals);
    const auto id = store.add_vertex(type, ngf::attributes_from_json(text_or_file(attrs_text)));
    ngf::save(store, store_path);
    std::cout << id.to_string() << "\n";
    return kOk;
  });

  auto* edge = app.add_subcommand("edge", "Manage edges");
  edge->require_subcommand(1);
  auto* edge_add = edge->add_subcommand("add", "Add an edge and print its id");
  edge_add->add_option("store", store_path)->required();
  edge_add->add_option("--type", type)->required();
  edge_add->add_option("--source", source)->required();
  edge_add->add_option("--target", target)->required();
  edge_add->add_option("--attrs", attrs_text, "Tagged attribute JSON (or @file)");
  edge_add->add_option("--amplitudes", amplitudes, "forward,backward,bidirectional direction amplitudes");
  on(edge_add, [&] {
    auto store = open_store(store_path, globals);
    std::optional<ngf::SuperpositionDescriptor> sup;
    if (!amplitudes.empty()) {
      const auto a = split_numbers(amplitudes);
      if (a.size() != 3) throw ngf::Error(ngf::Errc::invalid_argument, "--amplitudes takes three numbers");
      sup = ngf::SuperpositionDescriptor{ngf::DirectionAmplitudes::make(a[0], a[1], a[2])};
    }
    const auto id = store.add_edge(type, ngf::EntityId::parse(source), ngf::EntityId::parse(target),
                                   ngf::attributes_from_json(text_or_file(attrs_text)), sup);
    ngf::save(store, store_path);
    std::cout << id.to_string() << "\n";
    return kOk;
  });

  // import / export --------------------------------------------------------
  std::string lines_path;
  auto* import = app.add_subcommand("import", "Apply a JSON-lines entity file");
  import->add_option("store", store_path)->required();
  import->add_option("file", lines_path)->required();
  on(import, [&] {
    auto store = open_store(store_path, globals);
    const auto applied = ngf::import_jsonl(store, lines_path);
    ngf::save(store, store_path);
    std::cout << applied << " lines applied\n";
    return kOk;
  });

  auto* exporter = app.add_subcommand("export", "Write the store as JSON-lines");
  exporter->add_option("store", store_path)->required();
  exporter->add_option("file", lines_path)->required();
  on(exporter, [&] {
    ngf::export_jsonl(open_store(store_path, globals), lines_path);
    return kOk;
  });

  // calibrate --------------------------------------------------------------
  std::string csv_path, calibration_name, metric_token, field;
  double alpha = 1.0, beta = 0.0;
  auto* calibrate = app.add_subcommand("calibrate", "Pick a distance threshold from labelled pairs");
  calibrate->add_option("pairs", csv_path, "CSV with header distance,label")->required();
  calibrate->add_option("--alpha", alpha)->capture_default_str();
  calibrate->add_option("--beta", beta)->capture_default_str();
  calibrate->add_option("--metric", metric_token, "Metric the distances came from");
  calibrate->add_option("--field", field, "Attribute the distances came from");
  calibrate->add_option("--store", store_path, "Also record the result in this store");
  calibrate->add_option("--name", calibration_name, "Name for the stored result");
  on(calibrate, [&] {
    std::ifstream in(csv_path);
    if (!in) throw ngf::Error(ngf::Errc::io, "cannot open " + csv_path);
    auto result = ngf::calibrate(ngf::read_calibration_csv(in), alpha, beta);
    if (!metric_token.empty()) result.metric = ngf::parse_metric_id(metric_token);
    if (!field.empty()) result.field = field;
    if (!store_path.empty()) {
      if (calibration_name.empty()) throw ngf::Error(ngf::Errc::invalid_argument, "--store needs --name");
      auto store = open_store(store_path, globals);
      store.store_calibration(calibration_name, result);
      ngf::save(store, store_path);
    }
    std::cout << ngf::calibration_to_json(result) << "\n";
    return kOk;
  });

  // infer-similarity -------------------------------------------------------
  auto* infer = app.add_subcommand("infer-similarity", "Add SIMILAR_* edges for pairs within a stored threshold");
  infer->add_option("store", store_path)->required();
  infer->add_option("--calibration", calibration_name, "Name of a stored calibration")->required();
  infer->add_option("--metric", metric_token)->required();
  infer->add_option("--field", field)->required();
  infer->add_option("--type", type, "Restrict to vertices of this type");
  on(infer, [&] {
    auto store = open_store(store_path, globals);
    const ngf::MetricDescriptor metric{ngf::parse_metric_id(metric_token), field, {}};
    const auto ids = ngf::query_vertices(store, type, {});
    const auto out = ngf::infer_similarity_edges(store, ids, metric, store.calibration(calibration_name));
    ngf::save(store, store_path);
    std::cout << json{{"edges", out.edges.size()}, {"skipped", out.skipped}}.dump() << "\n";
    return kOk;
  });

  // kernel-compare ---------------------------------------------------------
  std::string a_id, b_id, sigma_text, observer = "cli", kernel_name;
  std::vector<std::string> fields;
  double epsilon = 0.0;
  bool annotate = false;
  auto* compare = app.add_subcommand("kernel-compare", "Compare two vertices under a smoothing kernel");
  compare->add_option("store", store_path)->required();
  compare->add_option("a", a_id)->required();
  compare->add_option("b", b_id)->required();
  compare->add_option("--kernel", kernel_name, "Use a registered kernel");
  compare->add_option("--sigma", sigma_text, "Gaussian width, one value or one per axis (comma separated)");
  compare->add_option("--field", fields, "Field visible to the observer (repeatable)");
  compare->add_option("--observer", observer)->capture_default_str();
  compare->add_option("--epsilon", epsilon)->capture_default_str();
  compare->add_flag("--annotate", annotate, "Record an EQUALS_* edge when the verdict holds");
  on(compare, [&] {
    auto store = open_store(store_path, globals);
    ngf::KernelDescriptor kernel;
    if (!kernel_name.empty()) {
      kernel = store.kernel(kernel_name);
    } else {
      if (fields.empty()) throw ngf::Error(ngf::Errc::invalid_argument, "give --kernel or at least one --field");
      ngf::ObserverScope scope{observer, {fields.begin(), fields.end()}};
      kernel = sigma_text.empty() ? ngf::KernelDescriptor::dirac(scope)
                                  : ngf::KernelDescriptor::gaussian(split_numbers(sigma_text), scope);
    }
    const auto a = ngf::EntityId::parse(a_id), b = ngf::EntityId::parse(b_id);
    const auto j = ngf::kernel_compare(store.vertex(a), store.vertex(b), kernel, epsilon);
    auto out = judgement_json(j);
    if (annotate && j.verdict) {
      out["edge"] = ngf::annotate_equality_edge(store, a, b, j).to_string();
      ngf::save(store, store_path);
    }
    std::cout << out.dump() << "\n";
    return kOk;
  });

  // flow -------------------------------------------------------------------
  std::string scenario_path, flow_source, flow_sink;
  auto* flow = app.add_subcommand("flow", "Flow checks over a JSON scenario");
  flow->require_subcommand(1);
  auto* flow_check = flow->add_subcommand("check", "Verify conservation and capacities; exit 2 on violation");
  flow_check->add_option("scenario", scenario_path)->required();
  flow_check->add_option("--store", store_path, "Resolve edge endpoints from this store");
  on(flow_check, [&] {
    std::unique_ptr<ngf::Store> store;
    if (!store_path.empty()) store = std::make_unique<ngf::Store>(open_store(store_path, globals));
    const auto s = ngf::flow_scenario_from_json(slurp(scenario_path), store.get());
    const auto report = ngf::check_kirchhoff(s.network, s.assignment, s.sources, s.sinks);
    std::cout << ngf::kirchhoff_report_to_json(report) << "\n";
    return report.pass ? kOk : kData;
  });

  auto* flow_max = flow->add_subcommand("maxflow", "Maximum flow between two nodes under the scenario capacities");
  flow_max->add_option("scenario", scenario_path)->required();
  flow_max->add_option("--source", flow_source)->required();
  flow_max->add_option("--sink", flow_sink)->required();
  flow_max->add_option("--store", store_path, "Resolve edge endpoints from this store");
  on(flow_max, [&] {
    std::unique_ptr<ngf::Store> store;
    if (!store_path.empty()) store = std::make_unique<ngf::Store>(open_store(store_path, globals));
    const auto s = ngf::flow_scenario_from_json(slurp(scenario_path), store.get());
    const auto r = ngf::max_flow(s.network, s.assignment.cargo, flow_source, flow_sink, s.assignment.capacities);
    std::cout << ngf::max_flow_to_json(r) << "\n";
    return kOk;
  });

  // hypergram --------------------------------------------------------------
  std::string hg_name, cell_kind = "scalar", cell_shape, extents, notes, cell_ref, delta_text;
  std::size_t shards = 4;
  std::optional<std::size_t> shard_hint;
  auto* hypergram = app.add_subcommand("hypergram", "Sharded hyper-histogram cells");
  hypergram->require_subcommand(1);
  auto* hg_create = hypergram->add_subcommand("create", "Create a hypergram (dense when --extents is given)");
  hg_create->add_option("store", store_path)->required();
  hg_create->add_option("name", hg_name)->required();
  hg_create->add_option("--cell-kind", cell_kind, "scalar, histogram or tensor")->capture_default_str();
  hg_create->add_option("--cell-shape", cell_shape, "Bins or tensor shape, comma separated");
  hg_create->add_option("--extents", extents, "Lattice extents, comma separated");
  hg_create->add_option("--shards", shards)->capture_default_str();
  hg_create->add_option("--notes", notes);
  on(hg_create, [&] {
    auto store = open_store(store_path, globals);
    const auto tess = extents.empty() ? ngf::TopologyKind::sparse() : ngf::TopologyKind::dense(split_sizes(extents));
    const auto shape = cell_shape.empty() ? std::vector<std::size_t>{} : split_sizes(cell_shape);
    ngf::create_hypergram(store, hg_name, tess, ngf::parse_cell_kind(cell_kind), shape, shards, notes);
    ngf::save(store, store_path);
    return kOk;
  });

  auto* hg_accumulate = hypergram->add_subcommand("accumulate", "Add a delta to one cell");
  hg_accumulate->add_option("store", store_path)->required();
  hg_accumulate->add_option("name", hg_name)->required();
  hg_accumulate->add_option("--cell", cell_ref, "Cell id or label")->required();
  hg_accumulate->add_option("--delta", delta_text, "Tagged value JSON, e.g. {\"scalar\": 1}")->required();
  hg_accumulate->add_option("--shard", shard_hint, "Shard to write to");
  on(hg_accumulate, [&] {
    auto store = open_store(store_path, globals);
    auto& hg = store.hypergram(hg_name);
    hg.cell(cell_by_id_or_label(store, hg, cell_ref)).accumulate(ngf::value_from_json(text_or_file(delta_text)), shard_hint);
    ngf::save(store, store_path);
    return kOk;
  });

  auto* hg_reconcile = hypergram->add_subcommand("reconcile", "Fold shard residues and print reconciled values");
  hg_reconcile->add_option("store", store_path)->required();
  hg_reconcile->add_option("name", hg_name)->required();
  hg_reconcile->add_option("--cell", cell_ref, "Only this cell (id or label)");
  on(hg_reconcile, [&] {
    auto store = open_store(store_path, globals);
    auto& hg = store.hypergram(hg_name);
    json out = json::object();
    auto emit = [&](ngf::EntityId id) {
      auto& cell = hg.cell(id);
      const auto value = cell.reconcile();
      const auto* label = store.vertex(id).find("label");
      out[label && label->holds<std::string>() ? label->as<std::string>() : id.to_string()] = {
          {"id", id.to_string()}, {"value", json::parse(ngf::value_to_json(value))}, {"version", cell.version()}};
    };
    if (!cell_ref.empty())
      emit(cell_by_id_or_label(store, hg, cell_ref));
    else
      for (const auto& [id, _] : hg.cells) emit(id);
    ngf::save(store, store_path);
    std::cout << out.dump() << "\n";
    return kOk;
  });

  // topology ---------------------------------------------------------------
  auto* topology = app.add_subcommand("topology", "Lattice topologies");
  topology->require_subcommand(1);
  auto* topo_generate = topology->add_subcommand("generate", "Print the neighbour arcs of a dense lattice");
  topo_generate->add_option("--extents", extents, "Lattice extents, comma separated")->required();
  on(topo_generate, [&] {
    const auto net = ngf::generate_topology(ngf::TopologyKind::dense(split_sizes(extents)));
    json arcs = json::array();
    for (const auto& a : net.arcs()) arcs.push_back({{"id", a.id}, {"source", a.source}, {"target", a.target}});
    std::cout << json{{"nodes", net.nodes()}, {"arcs", arcs}}.dump() << "\n";
    return kOk;
  });

  auto* topo_describe = topology->add_subcommand("describe", "Print the topology descriptor of a hypergram");
  topo_describe->add_option("store", store_path)->required();
  topo_describe->add_option("name", hg_name)->required();
  on(topo_describe, [&] {
    const auto d = ngf::describe_topology(open_store(store_path, globals), hg_name);
    std::cout << json{{"metric_dimensionality", d.metric_dimensionality},
                      {"connectional_dimensionality", d.connectional_dimensionality},
                      {"density", d.density},
                      {"notes", d.notes}}
                     .dump()
              << "\n";
    return kOk;
  });

  // query ------------------------------------------------------------------
  std::vector<std::string> predicates;
  auto* query = app.add_subcommand("query", "Print matching vertices as JSON lines");
  query->add_option("store", store_path)->required();
  query->add_option("--type", type, "Vertex type");
  query->add_option("--where", predicates, "key, key=value, key<3, key>=2.5, key!=x (repeatable)");
  on(query, [&] {
    const auto store = open_store(store_path, globals);
    std::vector<ngf::AttributePredicate> parsed;
    for (const auto& p : predicates) parsed.push_back(ngf::AttributePredicate::parse(p));
    for (auto id : ngf::query_vertices(store, type, parsed)) std::cout << ngf::vertex_to_json(store.vertex(id)) << "\n";
    return kOk;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    return action();
  } catch (const ngf::Error& e) {
    std::cerr << "ngf: " << e.what() << "\n";
    return e.code() == ngf::Errc::io ? kIo : kData;
  } catch (const std::exception& e) {
    std::cerr << "ngf: " << e.what() << "\n";
    return kData;
  }
}
