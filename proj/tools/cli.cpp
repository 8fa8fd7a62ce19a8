#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "pmdiam/pmdiam.hpp"

namespace pmdiam::cli {

using io::json;

namespace {

const std::map<std::string, std::string>& command_help() {
  static const std::map<std::string, std::string> help{
      {"enumerate", "list every perfect matching of a bipartite graph"},
      {"skeleton", "skeleton of the perfect matching polytope (json or dot)"},
      {"diameter", "combinatorial diameter of the skeleton"},
      {"mdiam", "monotone diameter: most cycles in a symmetric difference"},
      {"circuits", "circuits of the polytope (json) or its halfspace system (lp)"},
      {"cdiam", "circuit diameter by exhaustive circuit walks"},
      {"gadget tower", "replace an edge by a chain of --towers towers of --height"},
      {"gadget gh", "build G_H from a source graph"},
      {"reduce ham", "Hamiltonian cycle instance -> G_H, threshold and certificate"},
      {"reduce 4dm", "4DM instance -> 4-cycle cover instance and certificate"},
      {"lift 3dm", "3DM instance -> equivalent 4DM instance"},
      {"solve ham", "exhaustive Hamiltonian cycle search (exit 0 yes, 1 no)"},
      {"solve 4dm", "exhaustive perfect 4D matching search (exit 0 yes, 1 no)"},
      {"solve cover", "exhaustive vertex-disjoint 4-cycle cover search (exit 0 yes, 1 no)"},
      {"verify-flipseq", "check a {graph, from, to, sequence} bundle (exit 0 valid, 1 invalid)"},
      {"upper-walk", "flip sequence between two matchings of G_H along a Hamiltonian cycle"},
      {"far-matchings", "tower host with a far-apart matching pair"},
      {"flip-distance", "skeleton distance (and touching flips) of a {graph, from, to} bundle"}};
  return help;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{
      "enumerate",    "skeleton",   "diameter",   "mdiam",      "circuits",      "cdiam",
      "gadget tower", "gadget gh",  "reduce ham", "reduce 4dm", "lift 3dm",      "solve ham",
      "solve 4dm",    "solve cover", "verify-flipseq", "upper-walk", "far-matchings", "flip-distance"};
  return names;
}

namespace {

bool is_one_of(const std::string& s, std::initializer_list<const char*> options) {
  return std::any_of(options.begin(), options.end(), [&](const char* o) { return s == o; });
}

// Formats each command accepts besides json.
bool format_allowed(const std::string& command, const std::string& format) {
  if (format == "json") return true;
  if (format == "dot") {
    return is_one_of(command, {"skeleton", "gadget tower", "gadget gh", "reduce ham", "reduce 4dm", "far-matchings"});
  }
  if (format == "lp") return command == "circuits";
  return false;
}

std::string read_all(const CommandConfig& config, std::istream& in) {
  if (!config.input || *config.input == "-") {
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }
  std::ifstream file(*config.input);
  if (!file) throw std::ios_base::failure("cannot open input file '" + *config.input + "'");
  return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

json read_json(const CommandConfig& config, std::istream& in) {
  const std::string text = read_all(config, in);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse_error, e.what());
  }
}

// A bipartite graph JSON, or a towered graph JSON ({"graph", "towers"}).
struct AnyGraph {
  BipartiteGraph graph;
  std::optional<ToweredGraph> towered;
};

AnyGraph any_graph_from_json(const json& j) {
  if (j.is_object() && j.contains("towers")) {
    auto tg = io::towered_graph_from_json(j);
    return {tg.graph, std::move(tg)};
  }
  return {io::graph_from_json(j), std::nullopt};
}

const json& bundle_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(Errc::parse_error, std::string("missing field '") + key + "'");
  return j.at(key);
}

NamedEdge parse_edge(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos || comma == 0 || comma + 1 == text.size()) {
    throw Error(Errc::invalid_parameter, "edge must be written as v,w");
  }
  return {text.substr(0, comma), text.substr(comma + 1)};
}

// Base graph and edge for the tower commands: the input graph (or the
// fallback when there is none) and --edge (or the graph's first edge).
std::pair<BipartiteGraph, NamedEdge> tower_base(const CommandConfig& config, std::istream& in,
                                                const BipartiteGraph& fallback) {
  BipartiteGraph g = config.input ? io::graph_from_json(read_json(config, in)) : fallback;
  if (config.edge) return {g, parse_edge(*config.edge)};
  if (g.num_edges() == 0) throw Error(Errc::edge_absent, "graph has no edge to replace");
  const auto& e = g.edge(0);
  return {g, {g.name(e.left), g.name(e.right)}};
}

CircuitMethod circuit_method(const CommandConfig& config) {
  return config.method == "support" ? CircuitMethod::support_enumeration : CircuitMethod::cycle_construction;
}

json cycles_json(const BipartiteGraph& g, const std::vector<Cycle>& cycles) {
  json out = json::array();
  for (const auto& c : cycles) out.push_back(io::to_json(g, c));
  return out;
}

// Result of one command: the text to emit and the exit code.
struct Outcome {
  std::string text;
  int code = kExitYes;
};

Outcome emit(const json& j, int code = kExitYes) { return {j.dump(2) + "\n", code}; }

Outcome dispatch(const CommandConfig& c, std::istream& in, std::ostream& err) {
  const std::string& cmd = c.command;

  if (cmd == "enumerate") {
    const auto g = io::graph_from_json(read_json(c, in));
    json list = json::array();
    for (const auto& m : enumerate_perfect_matchings(g, c.cap_matchings)) list.push_back(io::to_json(g, m));
    return emit({{"count", list.size()}, {"matchings", list}});
  }
  if (cmd == "skeleton") {
    const auto s = build_skeleton(io::graph_from_json(read_json(c, in)), c.cap_matchings);
    if (c.format == "dot") return {io::to_dot(s)};
    return emit(io::to_json(s));
  }
  if (cmd == "diameter") return emit(diameter(build_skeleton(io::graph_from_json(read_json(c, in)), c.cap_matchings)));
  if (cmd == "mdiam") return emit(monotone_diameter(io::graph_from_json(read_json(c, in)), c.cap_matchings));
  if (cmd == "circuits") {
    const auto g = io::graph_from_json(read_json(c, in));
    if (c.format == "lp") return {pmp_halfspaces(g).to_lp(g)};
    json list = json::array();
    for (const auto& cv : circuits_of(g, circuit_method(c))) list.push_back(io::to_json(g, cv));
    return emit(list);
  }
  if (cmd == "cdiam") {
    const auto g = io::graph_from_json(read_json(c, in));
    return emit(circuit_diameter_small(build_circuit_walk_graph(g, circuits_of(g, circuit_method(c)), c.cap_matchings)));
  }

  if (cmd == "gadget tower") {
    if (!c.height) throw Error(Errc::invalid_parameter, "gadget tower needs --height");
    const auto [g, e] = tower_base(c, in, BipartiteGraph({"v"}, {"w"}, {{"v", "w"}}));
    const auto tg = add_towers(g, e, c.towers.value_or(1), *c.height);
    if (c.format == "dot") return {io::to_dot(tg)};
    return emit(io::to_json(tg));
  }
  if (cmd == "gadget gh") {
    const auto h = io::simple_graph_from_json(read_json(c, in));
    const auto height = c.height.value_or(static_cast<int>(default_tower_height(static_cast<long long>(h.num_vertices()))));
    const auto tg = build_GH(h, height, c.towers.value_or(4 * height));
    if (c.format == "dot") return {io::to_dot(tg)};
    return emit(io::to_json(tg));
  }
  if (cmd == "reduce ham") {
    const auto r = reduce_hamiltonian_to_diameter(io::simple_graph_from_json(read_json(c, in)), c.height, c.towers);
    err << "G_H: " << r.graph.graph.num_vertices() << " vertices, h=" << r.certificate.parameters.at("h")
        << ", t=" << r.certificate.parameters.at("t") << ", threshold " << r.threshold << "\n";
    if (c.format == "dot") return {io::to_dot(r.graph)};
    return emit({{"graph", io::to_json(r.graph)}, {"threshold", r.threshold}, {"certificate", io::to_json(r.certificate)}});
  }
  if (cmd == "reduce 4dm") {
    const auto r = reduce_4dm_to_4cycle_cover(io::hypergraph_from_json(read_json(c, in)));
    if (c.format == "dot") return {io::to_dot(r.graph)};
    return emit({{"graph", io::to_json(r.graph)}, {"certificate", io::to_json(r.certificate)}});
  }
  if (cmd == "lift 3dm") {
    const auto t = io::three_dm_from_json(read_json(c, in));
    return emit(io::to_json(lift_3dm_to_4dm(t.x_set, t.y_set, t.z_set, t.triples)));
  }

  if (cmd == "solve ham") {
    const auto h = io::simple_graph_from_json(read_json(c, in));
    const auto cycle = brute_hamiltonian(h, c.cap_search.value_or(kDefaultHamiltonianCap));
    err << (cycle ? "Hamiltonian cycle found\n" : "no Hamiltonian cycle\n");
    if (!cycle) return emit({{"hamiltonian", false}}, kExitNo);
    return emit({{"hamiltonian", true}, {"cycle", *cycle}});
  }
  if (cmd == "solve 4dm") {
    const auto inst = io::hypergraph_from_json(read_json(c, in));
    const auto chosen = brute_4dm(inst, c.cap_search.value_or(kDefault4dmCap));
    err << (chosen ? "perfect 4D matching found\n" : "no perfect 4D matching\n");
    if (!chosen) return emit({{"matching", false}}, kExitNo);
    json edges = json::array();
    for (std::size_t j : *chosen) {
      const auto& q = inst.hyperedges[j];
      edges.push_back({q[0], q[1], q[2], q[3]});
    }
    return emit({{"matching", true}, {"indices", *chosen}, {"edges", edges}});
  }
  if (cmd == "solve cover") {
    const auto g = io::graph_from_json(read_json(c, in));
    const auto cover = has_4cycle_cover(g, c.cap_search.value_or(kDefaultCoverCap));
    err << (cover ? "4-cycle cover found\n" : "no 4-cycle cover\n");
    if (!cover) return emit({{"cover", false}}, kExitNo);
    return emit({{"cover", true}, {"cycles", cycles_json(g, *cover)}});
  }

  if (cmd == "verify-flipseq") {
    const auto bundle = read_json(c, in);
    const auto g = any_graph_from_json(bundle_field(bundle, "graph")).graph;
    const auto r = verify_flip_sequence(g, io::matching_from_json(g, bundle_field(bundle, "from")),
                                        io::flip_sequence_from_json(g, bundle_field(bundle, "sequence")),
                                        io::matching_from_json(g, bundle_field(bundle, "to")));
    json out = {{"valid", r.ok}, {"failed_index", nullptr}, {"reason", r.reason}};
    if (r.failed_index) out["failed_index"] = *r.failed_index;
    if (!r.ok) err << "flip sequence rejected: " << r.reason << "\n";
    return emit(out, r.ok ? kExitYes : kExitNo);
  }
  if (cmd == "upper-walk") {
    // Either a bare G_H or {"graph": G_H, "cycle"?, "from"?, "to"?}; missing
    // endpoints are drawn with --seed, a missing cycle is searched for.
    const auto input = read_json(c, in);
    const bool bundled = input.is_object() && input.contains("graph") && input.at("graph").contains("towers");
    const auto tg = io::towered_graph_from_json(bundled ? input.at("graph") : input);
    const auto& origin = detail::require_origin(tg);
    std::vector<VertexId> cycle;
    if (bundled && input.contains("cycle")) {
      cycle = input.at("cycle").get<std::vector<VertexId>>();
    } else {
      auto found = brute_hamiltonian(origin.source, c.cap_search.value_or(kDefaultHamiltonianCap));
      if (!found) throw Error(Errc::not_hamiltonian, "source graph has no Hamiltonian cycle");
      cycle = *found;
    }
    std::mt19937_64 rng(c.seed);
    auto endpoint = [&](const char* key) {
      if (bundled && input.contains(key)) return io::matching_from_json(tg.graph, input.at(key));
      auto m = random_perfect_matching(tg.graph, rng);
      if (!m) throw Error(Errc::no_perfect_matching, "graph has no perfect matching");
      return *m;
    };
    const auto m1 = endpoint("from");
    const auto m2 = endpoint("to");
    const auto walk = hamiltonian_upper_walk(tg, cycle, m1, m2);
    const long long bound = 2LL * origin.height + 4LL * static_cast<long long>(origin.source.num_vertices());
    err << "walk of length " << walk.size() << " (bound " << bound << ")\n";
    return emit({{"cycle", cycle},
                 {"from", io::to_json(tg.graph, m1)},
                 {"to", io::to_json(tg.graph, m2)},
                 {"sequence", io::to_json(tg.graph, walk)},
                 {"length", walk.size()},
                 {"bound", bound}});
  }
  if (cmd == "far-matchings") {
    if (!c.height) throw Error(Errc::invalid_parameter, "far-matchings needs --height");
    // Default host: the 4-cycle v - w - x - y, tower on {v,w}.
    const BipartiteGraph square({"v", "x"}, {"w", "y"}, {{"v", "w"}, {"x", "w"}, {"x", "y"}, {"v", "y"}});
    const auto [g, e] = tower_base(c, in, square);
    const auto tg = add_tower(g, e, *c.height);
    const auto u = g.index_of(e.first);
    const auto w = g.index_of(e.second);
    std::optional<PerfectMatching> base;
    for_each_perfect_matching(g, [&](const std::vector<int>& mate) {
      if (mate[static_cast<std::size_t>(u)] != w) return true;
      base = PerfectMatching(g, mate);
      return false;
    });
    if (!base) throw Error(Errc::e_not_in_matching, "no perfect matching uses the base edge");
    const auto [m1, m2] = far_matchings(tg.graph, tg.towers[0], *base, *base);
    if (c.format == "dot") return {io::to_dot(tg, m1) + io::to_dot(tg, m2)};
    return emit({{"graph", io::to_json(tg)},
                 {"tower", 0},
                 {"from", io::to_json(tg.graph, m1)},
                 {"to", io::to_json(tg.graph, m2)}});
  }
  if (cmd == "flip-distance") {
    // {"graph", "from", "to"} and, for a towered graph, optionally "tower":
    // the index whose touching cycles are counted.
    const auto bundle = read_json(c, in);
    const auto any = any_graph_from_json(bundle_field(bundle, "graph"));
    const auto m1 = io::matching_from_json(any.graph, bundle_field(bundle, "from"));
    const auto m2 = io::matching_from_json(any.graph, bundle_field(bundle, "to"));
    json out = {{"distance", min_flip_distance(any.graph, m1, m2, c.cap_matchings)},
                {"symmetric_difference_cycles", count_symmetric_difference_cycles(m1, m2)}};
    if (bundle.contains("tower")) {
      if (!any.towered) throw Error(Errc::invalid_parameter, "\"tower\" needs a towered graph");
      const auto k = bundle.at("tower").get<std::size_t>();
      if (k >= any.towered->towers.size()) throw Error(Errc::index_out_of_range, "no tower " + std::to_string(k));
      out["touching_flips"] = min_touching_flips(any.graph, any.towered->towers[k], m1, m2, c.cap_matchings);
    }
    return emit(out);
  }
  throw Error(Errc::invalid_parameter, "unknown command '" + cmd + "'");
}

void report(std::ostream& err, const std::string& code, const std::string& message) {
  err << json{{"error", code}, {"message", message}}.dump() << "\n";
}

}  // namespace

void validate(const CommandConfig& config) {
  const auto& names = command_names();
  if (std::find(names.begin(), names.end(), config.command) == names.end()) {
    throw Error(Errc::invalid_parameter, "unknown command '" + config.command + "'");
  }
  if (config.height && *config.height < 1) throw Error(Errc::invalid_height, "--height must be >= 1");
  if (config.towers && *config.towers < 1) throw Error(Errc::invalid_parameter, "--towers must be >= 1");
  if (config.cap_matchings == 0) throw Error(Errc::invalid_parameter, "--cap-matchings must be >= 1");
  if (!is_one_of(config.method, {"cycles", "support"})) {
    throw Error(Errc::invalid_parameter, "--method must be cycles or support");
  }
  if (!format_allowed(config.command, config.format)) {
    throw Error(Errc::invalid_parameter, "format '" + config.format + "' is not available for " + config.command);
  }
}

int run(const CommandConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    const Outcome result = dispatch(config, in, err);
    if (config.output) {
      std::ofstream file(*config.output, std::ios::binary);
      if (!file) throw std::ios_base::failure("cannot open output file '" + *config.output + "'");
      file << result.text;
      if (!file) throw std::ios_base::failure("cannot write output file '" + *config.output + "'");
    } else {
      out << result.text;
    }
    return result.code;
  } catch (const Error& e) {
    report(err, to_string(e.code()), e.what());
  } catch (const json::exception& e) {
    // Type mismatches inside otherwise well-formed JSON.
    report(err, "parse-error", e.what());
  } catch (const std::ios_base::failure& e) {
    report(err, "io-error", e.what());
  }
  return kExitError;
}

int main_entry(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Perfect matching polytope diameters: enumeration, skeletons, tower gadgets, reductions"};
  app.require_subcommand(1);
  CommandConfig config;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-i,--input", config.input, "input JSON file (default: standard input)");
    sub->add_option("-o,--output", config.output, "output file (default: standard output)");
    sub->add_option("--height", config.height, "tower height h");
    sub->add_option("--towers", config.towers, "towers per vertex / chain length t");
    sub->add_option("--cap-matchings", config.cap_matchings, "maximum number of perfect matchings to enumerate");
    sub->add_option("--cap", config.cap_search, "size cap of the exhaustive solvers");
    sub->add_option("--format", config.format, "json | dot | lp");
    sub->add_option("--seed", config.seed, "seed for randomized endpoints");
    sub->add_option("--method", config.method, "circuit source: cycles | support");
    sub->add_option("--edge", config.edge, "base edge v,w for tower commands");
  };

  // Two-word commands are nested subcommands: "gadget tower", "solve cover", ...
  std::vector<std::pair<CLI::App*, std::string>> leaves;
  std::map<std::string, CLI::App*> groups;
  for (const auto& name : command_names()) {
    const auto space = name.find(' ');
    CLI::App* parent = &app;
    std::string leaf = name;
    if (space != std::string::npos) {
      const auto group = name.substr(0, space);
      if (!groups.count(group)) {
        static const std::map<std::string, std::string> group_help{{"gadget", "tower gadget constructions"},
                                                                  {"reduce", "hardness reductions"},
                                                                  {"lift", "instance lifts"},
                                                                  {"solve", "exhaustive decision solvers"}};
        groups[group] = app.add_subcommand(group, group_help.at(group));
        groups[group]->require_subcommand(1);
      }
      parent = groups[group];
      leaf = name.substr(space + 1);
    }
    auto* sub = parent->add_subcommand(leaf, command_help().at(name));
    add_common(sub);
    leaves.emplace_back(sub, name);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    report(err, "usage", e.what());
    return kExitError;
  }
  for (const auto& [sub, name] : leaves) {
    if (sub->parsed()) config.command = name;
  }
  return run(config, in, out, err);
}

}  // namespace pmdiam::cli
