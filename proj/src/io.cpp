#include "siso/io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace siso {
namespace io {

json gens_to_json(const GenSet &g) {
  json out;
  out["n"] = g.degree;
  json arr = json::array();
  for (const Perm &p : g.gens) arr.push_back(p.cycle_string());
  out["gens"] = arr;
  return out;
}

GenSet gens_from_json(const json &j) {
  int n = j.at("n").get<int>();
  std::vector<Perm> gens;
  for (const auto &entry : j.at("gens"))
    gens.push_back(Perm::parse_cycles(entry.get<std::string>(), n));
  return GenSet(n, std::move(gens));
}

json partition_to_json(const Partition &p) {
  json out;
  out["n"] = p.degree();
  json blocks = json::array();
  for (const auto &b : p.blocks()) {
    json blk = json::array();
    for (int v : b) blk.push_back(v + 1);
    blocks.push_back(blk);
  }
  out["blocks"] = blocks;
  return out;
}

Partition partition_from_json(const json &j) {
  int n = j.at("n").get<int>();
  std::vector<std::vector<int>> blocks;
  for (const auto &blk : j.at("blocks")) {
    std::vector<int> b;
    for (const auto &v : blk) b.push_back(v.get<int>() - 1);
    blocks.push_back(std::move(b));
  }
  return Partition(n, std::move(blocks));
}

json sequence_to_json(const PartitionSequence &s) {
  json out;
  out["d"] = s.d;
  out["group"] = gens_to_json(s.group.gen_set());
  json chain = json::array();
  for (const Partition &p : s.chain) chain.push_back(partition_to_json(p));
  out["partitions"] = chain;
  return out;
}

json iso_result_to_json(const IsoResult &r) {
  json out;
  out["empty"] = r.empty();
  if (!r.empty()) {
    json gens = json::array();
    for (const Perm &g : r.subgroup().strong_gens())
      gens.push_back(g.cycle_string());
    out["aut_gens"] = gens;
    out["rep"] = r.rep().cycle_string();
    out["aut_order"] = u128_str(r.subgroup().order());
  }
  return out;
}

ParsedInstance instance_from_json(const json &j) {
  ParsedInstance out;
  int n = j.at("n").get<int>();
  for (const auto &s : j.at("sigma")) out.sigma.push_back(s.is_string() ? s.get<std::string>() : s.dump());
  auto symbol_index = [&](const json &v) {
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    for (std::size_t i = 0; i < out.sigma.size(); ++i)
      if (out.sigma[i] == s) return int(i);
    throw Error("ParseError", "symbol not in sigma: " + s);
  };
  std::vector<int> x, y;
  for (const auto &v : j.at("x")) x.push_back(symbol_index(v));
  for (const auto &v : j.at("y")) y.push_back(symbol_index(v));
  GenSet gens = gens_from_json(j.at("group"));
  if (gens.degree != n) throw Error("ParseError", "group degree mismatch");
  StabChain chain = StabChain::build(gens);
  out.inst = StringInstance::over_group(chain, x, y, int(out.sigma.size()));
  if (j.contains("window")) {
    std::vector<int> w;
    for (const auto &v : j.at("window")) w.push_back(v.get<int>() - 1);
    std::sort(w.begin(), w.end());
    out.inst.window = std::move(w);
    out.inst.check();
  }
  out.seq.group = chain;
  out.seq.d = j.value("d", n);
  if (j.contains("sequence")) {
    for (const auto &p : j.at("sequence"))
      out.seq.chain.push_back(partition_from_json(p));
  } else {
    out.seq = PartitionSequence::trivial(chain);
    out.seq.d = j.value("d", n);
  }
  check_sequence_structure(out.seq);
  return out;
}

json structure_to_json(const RelStructure &s) {
  json out;
  json dom = json::array();
  for (int v : s.domain) dom.push_back(v + 1);
  out["domain"] = dom;
  out["arity"] = s.arity;
  json rels = json::array();
  for (const auto &rel : s.relations) {
    json r = json::array();
    for (const auto &tup : rel) {
      json t = json::array();
      for (int v : tup) t.push_back(v + 1);
      r.push_back(t);
    }
    rels.push_back(r);
  }
  out["relations"] = rels;
  return out;
}

RelStructure structure_from_json(const json &j) {
  RelStructure s;
  for (const auto &v : j.at("domain")) s.domain.push_back(v.get<int>() - 1);
  s.arity = j.at("arity").get<int>();
  for (const auto &rel : j.at("relations")) {
    std::vector<std::vector<int>> r;
    for (const auto &tup : rel) {
      std::vector<int> t;
      for (const auto &v : tup) t.push_back(v.get<int>() - 1);
      r.push_back(std::move(t));
    }
    s.relations.push_back(std::move(r));
  }
  s.normalize();
  return s;
}

Graph graph_from_text(const std::string &text) {
  // JSON?
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) {
    json j = json::parse(text);
    int n = j.at("n").get<int>();
    std::vector<std::pair<int, int>> edges;
    for (const auto &e : j.at("edges"))
      edges.push_back({e.at(0).get<int>() - 1, e.at(1).get<int>() - 1});
    return Graph::from_edges(n, std::move(edges));
  }
  std::istringstream in(text);
  std::string line;
  int n = -1;
  std::vector<std::pair<int, int>> edges;
  int max_seen = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c") continue;
    if (tok == "p") {
      std::string kind;
      int nn, mm;
      if (ls >> kind >> nn >> mm) n = nn;
      continue;
    }
    if (tok == "e") {
      int u, v;
      if (!(ls >> u >> v)) throw Error("ParseError", "bad edge line: " + line);
      edges.push_back({u - 1, v - 1});
      max_seen = std::max(max_seen, std::max(u, v));
      continue;
    }
    int u = std::stoi(tok), v;
    if (!(ls >> v)) throw Error("ParseError", "bad edge line: " + line);
    edges.push_back({u - 1, v - 1});
    max_seen = std::max(max_seen, std::max(u, v));
  }
  if (n < 0) n = max_seen;
  return Graph::from_edges(n, std::move(edges));
}

std::string read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("IoError", "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Graph graph_from_file(const std::string &path) {
  return graph_from_text(read_file(path));
}

json graph_to_json(const Graph &g) {
  json out;
  out["n"] = g.n;
  json edges = json::array();
  for (auto [u, v] : g.edges) edges.push_back(json::array({u + 1, v + 1}));
  out["edges"] = edges;
  return out;
}

Hypergraph hypergraph_from_json(const json &j) {
  Hypergraph h;
  h.n = j.at("n").get<int>();
  for (const auto &e : j.at("edges")) {
    std::vector<int> edge;
    for (const auto &v : e) edge.push_back(v.get<int>() - 1);
    std::sort(edge.begin(), edge.end());
    h.edges.push_back(std::move(edge));
  }
  return h;
}

json cert_outcome_to_json(const CertOutcome &c) {
  json out;
  out["kind"] = c.full ? "FULL" : "NONFULL";
  json gens = json::array();
  const StabChain &grp = c.full ? c.fullness_group : c.nonfullness_group;
  for (const Perm &g : grp.strong_gens()) gens.push_back(g.cycle_string());
  out["generators"] = gens;
  out["group_order"] = u128_str(grp.order());
  json trace = json::array();
  for (int w : c.window_trace) trace.push_back(w + 1);
  out["window"] = trace;
  return out;
}

json classification_to_json(const PrimitiveClassification &c) {
  json out;
  if (c.kind == PrimitiveClassification::SMALL) {
    out["kind"] = "SMALL";
    return out;
  }
  out["kind"] = "JOHNSON_TOWER";
  out["m"] = c.m;
  out["t"] = c.t;
  out["socle"] = gens_to_json(c.socle_group.gen_set());
  out["socle_order"] = u128_str(c.socle_group.order());
  json tower = json::array();
  for (const Partition &p : c.tower) tower.push_back(partition_to_json(p));
  out["tower"] = tower;
  return out;
}

json validation_report_to_json(const AlmostDAryReport &r) {
  json out;
  out["valid"] = r.valid;
  json vio = json::array();
  for (const auto &v : r.violations) {
    json entry;
    entry["level"] = v.level;
    json blk = json::array();
    for (int p : v.block) blk.push_back(p + 1);
    entry["block"] = blk;
    entry["reason"] = v.reason;
    vio.push_back(entry);
  }
  out["violations"] = vio;
  return out;
}

json augmented_to_json(const AugmentedInstance &a,
                       const std::vector<std::string> &sigma) {
  json out;
  out["n"] = a.inst.n;
  json sig = json::array();
  for (const auto &s : sigma) sig.push_back(s);
  out["sigma"] = sig;
  json xs = json::array(), ys = json::array();
  for (int v : a.inst.x) xs.push_back(sigma[v]);
  for (int v : a.inst.y) ys.push_back(sigma[v]);
  out["x"] = xs;
  out["y"] = ys;
  out["group"] = gens_to_json(a.inst.group.subgroup().gen_set());
  json chain = json::array();
  for (const Partition &p : a.seq.chain) chain.push_back(partition_to_json(p));
  out["sequence"] = chain;
  out["d"] = a.seq.d;
  json orig = json::array();
  for (int v : a.origin) orig.push_back(v + 1);
  out["origin"] = orig;
  return out;
}

} // namespace io
} // namespace siso
