#include <chrono>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "siso/io.hpp"
#include "siso/oracle.hpp"
#include "siso/suites.hpp"

using namespace siso;
using nlohmann::json;

namespace {

struct CommonOpts {
  bool emit_json = false;
  std::uint64_t seed = 0x5150;
  double brute_cap = 10000;
  int d_cap = 24;
  double c1 = 1.0;
  double c2 = 10.0;
};

SolverConfig make_config(const CommonOpts &o) {
  SolverConfig cfg;
  cfg.brute_cap = uint128(o.brute_cap);
  cfg.d_cap = o.d_cap;
  cfg.c1 = o.c1;
  cfg.c2 = o.c2;
  cfg.seed = o.seed;
  return cfg;
}

void add_common(CLI::App *cmd, CommonOpts &o) {
  cmd->add_flag("--json", o.emit_json, "emit a JSON report");
  cmd->add_option("--seed", o.seed, "seed for randomized suites");
  cmd->add_option("--brute-cap", o.brute_cap, "base-case enumeration cap");
  cmd->add_option("--d-cap", o.d_cap, "setwise stabilizer size guard");
  cmd->add_option("--c1", o.c1, "size threshold exponent factor c1");
  cmd->add_option("--c2", o.c2, "size threshold exponent offset c2");
}

int report_iso(const IsoResult &res, bool emit_json) {
  if (emit_json) std::cout << io::iso_result_to_json(res).dump(2) << "\n";
  std::cout << (res.empty() ? "NONISO" : "ISO") << "\n";
  return res.empty() ? 1 : 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"string and graph isomorphism toolkit for groups with "
               "restricted composition factors"};
  app.require_subcommand(1);

  CommonOpts opts;

  std::string path1, path2, out_path, suite, step = "both";
  int count = 50, nmax = 7, dmax = 3;
  bool deterministic = false;

  auto *gi = app.add_subcommand("gi", "graph isomorphism (bounded degree)");
  gi->add_option("graph1", path1)->required();
  gi->add_option("graph2", path2)->required();
  add_common(gi, opts);

  auto *si = app.add_subcommand("si", "string isomorphism");
  si->add_option("instance", path1)->required();
  add_common(si, opts);

  auto *aut = app.add_subcommand("aut", "string automorphism group");
  aut->add_option("instance", path1)->required();
  add_common(aut, opts);

  auto *vseq = app.add_subcommand("validate-seq", "almost-d-ary validation");
  vseq->add_option("instance", path1)->required();
  add_common(vseq, opts);

  std::string dot_path;
  auto *red = app.add_subcommand("reduce", "change-of-action reduction");
  red->add_option("instance", path1)->required();
  red->add_option("--step", step, "one | two | both")->capture_default_str();
  red->add_option("--out", out_path, "output path (default stdout)");
  red->add_option("--dot", dot_path, "write the unfolding graph in DOT format");
  add_common(red, opts);

  auto *cert = app.add_subcommand("certify", "local certificates");
  cert->add_option("input", path1)->required();
  add_common(cert, opts);

  auto *bench = app.add_subcommand("bench", "deterministic suite benchmarks");
  bench->add_option("--suite", suite, "si-sweep | gi-corpus")->required();
  bench->add_option("--count", count, "instances for si-sweep");
  bench->add_option("--n-max", nmax, "vertex bound for gi-corpus");
  bench->add_option("--d-max", dmax, "degree bound for gi-corpus");
  bench->add_flag("--deterministic", deterministic,
                  "zero the millis column for byte-stable output");
  add_common(bench, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    SolverConfig cfg = make_config(opts);
    Solver solver(cfg);

    if (gi->parsed()) {
      Graph g1 = io::graph_from_file(path1);
      Graph g2 = io::graph_from_file(path2);
      return report_iso(graph_iso_bounded_degree(solver, g1, g2), opts.emit_json);
    }

    if (si->parsed() || aut->parsed()) {
      auto parsed = io::instance_from_json(json::parse(io::read_file(path1)));
      if (aut->parsed()) parsed.inst.y = parsed.inst.x;
      IsoResult res = solver.string_iso_main(parsed.inst, parsed.seq);
      return report_iso(res, opts.emit_json);
    }

    if (vseq->parsed()) {
      auto parsed = io::instance_from_json(json::parse(io::read_file(path1)));
      auto report = validate_almost_d_ary(parsed.seq);
      std::cout << io::validation_report_to_json(report).dump(2) << "\n";
      return 0;
    }

    if (red->parsed()) {
      auto parsed = io::instance_from_json(json::parse(io::read_file(path1)));
      if (!dot_path.empty()) {
        UnfoldGraph graph = unfold_graph_of(parsed.inst, parsed.seq);
        std::ofstream f(dot_path);
        f << graph.to_dot(parsed.seq.chain);
        std::cout << "wrote " << dot_path << "\n";
      }
      json out;
      if (step == "one") {
        out = io::augmented_to_json(
            reduce_step_one(parsed.inst, parsed.seq.d, cfg), parsed.sigma);
      } else if (step == "two") {
        out = io::augmented_to_json(reduce_step_two(parsed.inst, parsed.seq, cfg),
                                    parsed.sigma);
      } else {
        auto one = reduce_step_one(parsed.inst, parsed.seq.d, cfg);
        out = io::augmented_to_json(reduce_step_two(one.inst, one.seq, cfg),
                                    parsed.sigma);
      }
      if (out_path.empty()) {
        std::cout << out.dump(2) << "\n";
      } else {
        std::ofstream f(out_path);
        f << out.dump(2) << "\n";
        std::cout << "wrote " << out_path << "\n";
      }
      return 0;
    }

    if (cert->parsed()) {
      json j = json::parse(io::read_file(path1));
      auto parsed = io::instance_from_json(j);
      int k = j.at("phi").at("k").get<int>();
      std::vector<Perm> images;
      for (const auto &img : j.at("phi").at("images"))
        images.push_back(Perm::parse_cycles(img.get<std::string>(), k));
      // images must align with the strong generators of the parsed group
      GenSet given = io::gens_from_json(j.at("group"));
      StabChain src = parsed.inst.group.subgroup();
      if (images.size() != given.gens.size())
        throw Error("ParseError", "one phi image per group generator required");
      // recompute images for the chain's strong generating set
      GroupHom seed_hom(StabChain::build(given), k, images);
      std::vector<Perm> strong_images;
      for (const Perm &g : src.strong_gens()) strong_images.push_back(seed_hom.image(g));
      GiantRep rep{GroupHom(src, k, strong_images), k};
      rep.check();
      std::vector<int> t_set;
      for (const auto &v : j.at("T")) t_set.push_back(v.get<int>() - 1);
      CertOutcome outcome =
          local_certificates(solver, parsed.inst, rep, t_set, parsed.seq);
      std::cout << io::cert_outcome_to_json(outcome).dump(2) << "\n";
      return 0;
    }

    if (bench->parsed()) {
      std::cout << "instance_id,n,d,group_order,branch,calls,max_depth,millis\n";
      if (suite == "si-sweep") {
        auto sweep = suites::si_sweep(opts.seed, count);
        for (const auto &item : sweep) {
          Solver s(cfg);
          auto t0 = std::chrono::steady_clock::now();
          IsoResult res = s.string_iso_main(item.inst, item.seq);
          auto t1 = std::chrono::steady_clock::now();
          long ms = deterministic
                        ? 0
                        : std::chrono::duration_cast<std::chrono::milliseconds>(
                              t1 - t0)
                              .count();
          std::cout << item.id << (res.empty() ? "-non" : "-iso") << ","
                    << item.inst.n << "," << item.seq.d << ","
                    << u128_str(item.inst.group.subgroup().order()) << ","
                    << s.stats().top_branch << "," << s.stats().nodes << ","
                    << s.stats().max_depth << "," << ms << "\n";
        }
      } else if (suite == "gi-corpus") {
        auto corpus = suites::gi_corpus(nmax, dmax);
        for (std::size_t i = 0; i < corpus.size(); ++i)
          for (std::size_t j = i; j < corpus.size(); ++j) {
            if (corpus[i].n != corpus[j].n) continue;
            Solver s(cfg);
            auto t0 = std::chrono::steady_clock::now();
            IsoResult res = graph_iso_bounded_degree(s, corpus[i], corpus[j]);
            auto t1 = std::chrono::steady_clock::now();
            long ms = deterministic
                          ? 0
                          : std::chrono::duration_cast<std::chrono::milliseconds>(
                                t1 - t0)
                                .count();
            std::cout << "gi-" << i << "-" << j << (res.empty() ? "-non" : "-iso")
                      << "," << corpus[i].n << "," << dmax << ","
                      << (res.empty() ? "0" : u128_str(res.subgroup().order()))
                      << ",gi," << s.stats().nodes << "," << s.stats().max_depth
                      << "," << ms << "\n";
          }
      } else {
        std::cerr << "unknown suite: " << suite << "\n";
        return 2;
      }
      return 0;
    }
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
