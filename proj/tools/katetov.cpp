// Command-line surface: build towers, verify the extension property,
// extend partial morphisms, embed endomorphism monoids, compare the
// generic and hand-crafted functors, run the metric demo and the
// distortion checks, and export artifacts.
//
// Exit codes: 0 full pass, 1 usage/capacity error, 2 property
// counterexample (with a machine-readable report when --report is set).

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "katetov/bergman.hpp"
#include "katetov/json_io.hpp"
#include "katetov/limits.hpp"
#include "katetov/metric.hpp"
#include "katetov/pushout.hpp"
#include "katetov/tower.hpp"

using namespace katetov;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitCounterexample = 2;

std::size_t budget_from_env() {
  if (const char* env = std::getenv("KATETOV_BUDGET")) {
    const long v = std::atol(env);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultLevelBudget;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

ClassTag parse_class(const std::string& name, int n, int q) {
  if (name == "graph") return {StructureKind::Graph, 0};
  if (name == "kn-free") {
    if (n < 3) throw std::runtime_error("kn-free needs --n >= 3");
    return {StructureKind::KnFreeGraph, n};
  }
  if (name == "digraph") return {StructureKind::Digraph, 0};
  if (name == "linear-order") return {StructureKind::LinearOrder, 0};
  if (name == "poset") return {StructureKind::Poset, 0};
  if (name == "tournament") return {StructureKind::Tournament, 0};
  if (name == "boolean") return {StructureKind::BooleanAlgebra, 0};
  if (name == "metric") {
    if (q < 1) throw std::runtime_error("metric needs --q >= 1");
    return {StructureKind::RationalMetric, q};
  }
  throw std::runtime_error("unknown class: " + name);
}

FiniteStructure preset_seed(const ClassTag& tag, const std::string& preset) {
  auto uniform_metric = [&](int points) {
    std::vector<ElementId> es;
    std::vector<std::vector<Rational>> m(points, std::vector<Rational>(points, Rational(1)));
    for (int i = 0; i < points; ++i) {
      es.push_back(i);
      m[i][i] = Rational(0);
    }
    return make_metric(tag.param, es, std::move(m));
  };
  if (preset == "empty") {
    switch (tag.kind) {
      case StructureKind::Graph: return make_graph({}, {});
      case StructureKind::KnFreeGraph: return make_kn_free_graph(tag.param, {}, {});
      case StructureKind::Digraph: return make_digraph({}, {});
      case StructureKind::LinearOrder: return make_linear_order({}, {});
      case StructureKind::Poset: return make_poset({}, {});
      case StructureKind::Tournament: return make_tournament({}, {});
      case StructureKind::BooleanAlgebra:
        throw std::runtime_error("Boolean algebras need at least one atom; use --seed k1");
      case StructureKind::RationalMetric: return uniform_metric(0);
    }
  }
  if (preset == "k1") {
    switch (tag.kind) {
      case StructureKind::Graph: return make_graph({0}, {});
      case StructureKind::KnFreeGraph: return make_kn_free_graph(tag.param, {0}, {});
      case StructureKind::Digraph: return make_digraph({0}, {});
      case StructureKind::LinearOrder: return make_linear_order({0}, {});
      case StructureKind::Poset: return make_poset({0}, {});
      case StructureKind::Tournament: return make_tournament({0}, {});
      case StructureKind::BooleanAlgebra: return make_boolean_algebra({0});
      case StructureKind::RationalMetric: return uniform_metric(1);
    }
  }
  if (preset == "edge") {
    switch (tag.kind) {
      case StructureKind::Graph: return make_graph({0, 1}, {{0, 1}});
      case StructureKind::KnFreeGraph: return make_kn_free_graph(tag.param, {0, 1}, {{0, 1}});
      case StructureKind::Digraph: return make_digraph({0, 1}, {{0, 1}});
      case StructureKind::LinearOrder: return make_chain({0, 1});
      case StructureKind::Poset: return make_poset({0, 1}, {{0, 1}});
      case StructureKind::Tournament: return make_tournament({0, 1}, {{0, 1}});
      case StructureKind::BooleanAlgebra: return make_boolean_algebra({0, 1});
      case StructureKind::RationalMetric: return uniform_metric(2);
    }
  }
  throw std::runtime_error("unknown seed preset: " + preset + " (use empty, k1 or edge)");
}

struct SeedOptions {
  std::string class_name = "graph";
  int n = 3;
  int q = 1;
  std::string preset = "empty";
  std::string seed_file;

  FiniteStructure resolve() const {
    if (!seed_file.empty()) return structure_from_json(slurp(seed_file));
    return preset_seed(parse_class(class_name, n, q), preset);
  }
};

void add_seed_options(CLI::App* cmd, SeedOptions& seed) {
  cmd->add_option("--class", seed.class_name,
                  "graph | kn-free | digraph | linear-order | poset | tournament | boolean | "
                  "metric");
  cmd->add_option("--n", seed.n, "forbidden clique size for kn-free");
  cmd->add_option("--q", seed.q, "distance denominator for metric");
  cmd->add_option("--seed", seed.preset, "seed preset: empty | k1 | edge");
  cmd->add_option("--seed-file", seed.seed_file, "seed structure JSON file");
}

void write_report(const std::string& path, const nlohmann::ordered_json& doc) {
  if (!path.empty()) spit(path, doc.dump(2));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"one-point-extension functors, towers and their limits"};
  app.require_subcommand(1);
  std::size_t budget = budget_from_env();
  app.add_option("--budget", budget, "element ceiling per tower level");

  // ---- build ----
  SeedOptions build_seed;
  int build_depth = 2;
  std::string build_out = "tower.json";
  auto* cmd_build = app.add_subcommand("build", "iterate a tower and write it as JSON");
  add_seed_options(cmd_build, build_seed);
  cmd_build->add_option("--depth", build_depth, "levels to expand");
  cmd_build->add_option("--out", build_out, "output path");

  // ---- verify-ep ----
  SeedOptions ep_seed;
  int ep_depth = 1, ep_bound = 1, ep_jobs = 1;
  std::string ep_report;
  auto* cmd_ep = app.add_subcommand("verify-ep", "certify one-point extensions at depth+1");
  add_seed_options(cmd_ep, ep_seed);
  cmd_ep->add_option("--depth", ep_depth, "base depth");
  cmd_ep->add_option("--size-bound", ep_bound, "substructure size bound");
  cmd_ep->add_option("--jobs", ep_jobs, "worker threads");
  cmd_ep->add_option("--report", ep_report, "JSON report sidecar");

  // ---- extend ----
  std::string ext_tower, ext_map, ext_out, ext_report;
  int ext_depth = 1;
  auto* cmd_ext = app.add_subcommand("extend", "extend a partial morphism to a truncation endo");
  cmd_ext->add_option("--tower", ext_tower, "tower JSON")->required();
  cmd_ext->add_option("--map", ext_map, "partial map JSON")->required();
  cmd_ext->add_option("--depth", ext_depth, "input truncation depth");
  cmd_ext->add_option("--out", ext_out, "output truncation JSON");
  cmd_ext->add_option("--report", ext_report, "JSON report sidecar");

  // ---- embed-endos ----
  std::string emb_tower, emb_endos, emb_out;
  int emb_depth = 1;
  auto* cmd_emb = app.add_subcommand("embed-endos", "push endomorphisms of the seed into the limit");
  cmd_emb->add_option("--tower", emb_tower, "tower JSON")->required();
  cmd_emb->add_option("--endos", emb_endos, "endomorphism list JSON")->required();
  cmd_emb->add_option("--depth", emb_depth, "truncation depth");
  cmd_emb->add_option("--out", emb_out, "output JSON");

  // ---- generic-k ----
  std::string gk_in, gk_out, gk_compare;
  auto* cmd_gk = app.add_subcommand("generic-k", "iterated-pushout functor value on a graph");
  cmd_gk->add_option("--in", gk_in, "input structure JSON")->required();
  cmd_gk->add_option("--out", gk_out, "output structure JSON");
  cmd_gk->add_option("--compare", gk_compare, "'handcrafted' to cross-check extension types");

  // ---- metric-demo ----
  int md_size = 2, md_q = 2, md_depth = 2;
  auto* cmd_md = app.add_subcommand("metric-demo", "iterate the sphere functor on a uniform space");
  cmd_md->add_option("--size", md_size, "points in the seed space");
  cmd_md->add_option("--q", md_q, "distance denominator");
  cmd_md->add_option("--depth", md_depth, "levels to expand");

  // ---- bergman-check ----
  int bc_depth = 3, bc_n = 2;
  std::string bc_endos, bc_report;
  SeedOptions bc_seed;
  bc_seed.preset = "edge";
  auto* cmd_bc = app.add_subcommand("bergman-check", "distortion identities and word evaluation");
  cmd_bc->add_option("--class", bc_seed.class_name, "graph (the only supported class)");
  cmd_bc->add_option("--seed", bc_seed.preset, "truncation preset: empty | k1 | edge");
  cmd_bc->add_option("--seed-file", bc_seed.seed_file, "truncation structure JSON file");
  cmd_bc->add_option("--depth", bc_depth, "chain depth");
  cmd_bc->add_option("--n", bc_n, "check the shifted identity for 1..n");
  cmd_bc->add_option("--seed-endos", bc_endos, "endomorphism list JSON");
  cmd_bc->add_option("--report", bc_report, "JSON report sidecar");

  // ---- export ----
  std::string xp_tower, xp_in, xp_format = "json", xp_out;
  int xp_level = 0;
  auto* cmd_xp = app.add_subcommand("export", "convert a tower level or structure to JSON/DOT");
  cmd_xp->add_option("--tower", xp_tower, "tower JSON to export from");
  cmd_xp->add_option("--level", xp_level, "level to export");
  cmd_xp->add_option("--in", xp_in, "structure JSON to convert");
  cmd_xp->add_option("--format", xp_format, "json | dot");
  cmd_xp->add_option("--out", xp_out, "output path (stdout if omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_build) {
      auto t = TowerHandle::iterate(build_seed.resolve(), build_depth, budget);
      spit(build_out, tower_to_json(t));
      std::cout << "tower: levels";
      for (int i = 0; i <= t.frozen_depth(); ++i) std::cout << ' ' << t.level(i).size();
      std::cout << " -> " << build_out << "\n";
      return 0;
    }

    if (*cmd_ep) {
      auto t = TowerHandle::iterate(ep_seed.resolve(), ep_depth + 1, budget);
      const auto report = verify_extension_property(t, ep_depth, ep_bound, ep_jobs);
      nlohmann::ordered_json doc;
      doc["ok"] = report.ok;
      doc["certificates"] = report.certificates.size();
      if (report.ok) {
        std::cout << "PASS verify-ep: " << report.certificates.size()
                  << " certificates, witness level " << ep_depth + 1 << "\n";
        write_report(ep_report, doc);
        return 0;
      }
      std::cout << "FAIL verify-ep: " << report.counterexample->reason << "\n";
      doc["counterexample"]["reason"] = report.counterexample->reason;
      write_report(ep_report, doc);
      return kExitCounterexample;
    }

    if (*cmd_ext) {
      auto t = tower_from_json(slurp(ext_tower), budget);
      const auto f = partial_map_from_json(slurp(ext_map));
      const auto endo = extend_partial_morphism(t, f, ext_depth);
      std::cout << "extended to depth_in " << endo.depth_in << ", depth_out " << endo.depth_out
                << ", " << endo.table.size() << " points\n";
      if (!ext_out.empty()) spit(ext_out, endo_truncation_to_json(endo));
      nlohmann::ordered_json doc;
      doc["depth_in"] = endo.depth_in;
      doc["depth_out"] = endo.depth_out;
      doc["points"] = endo.table.size();
      write_report(ext_report, doc);
      return 0;
    }

    if (*cmd_emb) {
      auto t = tower_from_json(slurp(emb_tower), budget);
      const auto endos = endo_list_from_json(t.level(0), slurp(emb_endos));
      const auto images = embed_endomorphisms(t, endos, emb_depth);
      nlohmann::ordered_json out = nlohmann::ordered_json::array();
      for (const auto& e : images)
        out.push_back(nlohmann::ordered_json::parse(endo_truncation_to_json(e)));
      if (!emb_out.empty()) spit(emb_out, out.dump(2));
      std::cout << "embedded " << images.size() << " endomorphisms at depth " << emb_depth << "\n";
      return 0;
    }

    if (*cmd_gk) {
      const auto a = structure_from_json(slurp(gk_in));
      const auto gen = generic_k(a);
      if (!gk_out.empty()) spit(gk_out, structure_to_json(gen.object));
      std::cout << "generic K: " << a.size() << " -> " << gen.object.size() << " elements\n";
      if (gk_compare == "handcrafted") {
        const auto hand = k_object(a);
        bool equivalent = true;
        for (const auto& e : enumerate_one_point_extensions(a))
          equivalent = equivalent && realizes_extension(gen, e) && realizes_extension(hand, e);
        std::cout << (equivalent ? "PASS" : "FAIL")
                  << " extension-type comparison against the hand-crafted functor\n";
        if (!equivalent) return kExitCounterexample;
      }
      return 0;
    }

    if (*cmd_md) {
      SeedOptions seed;
      seed.class_name = "metric";
      seed.q = md_q;
      seed.preset = md_size == 0 ? "empty" : md_size == 1 ? "k1" : "edge";
      FiniteStructure x = seed.resolve();
      if (md_size > 2) {
        std::vector<ElementId> es;
        std::vector<std::vector<Rational>> m(md_size,
                                             std::vector<Rational>(md_size, Rational(1)));
        for (int i = 0; i < md_size; ++i) {
          es.push_back(i);
          m[i][i] = Rational(0);
        }
        x = make_metric(md_q, es, std::move(m));
      }
      auto t = TowerHandle::iterate(x, md_depth, budget);
      std::cout << "sphere tower: levels";
      for (int i = 0; i <= t.frozen_depth(); ++i) std::cout << ' ' << t.level(i).size();
      std::cout << "\n";
      for (int i = 0; i < t.frozen_depth(); ++i) {
        const auto check = check_morphism(t.link(i));
        std::cout << "  eta " << i << " -> " << i + 1 << ": "
                  << (check.ok ? "isometric" : check.violation) << "\n";
        if (!check.ok) return kExitCounterexample;
      }
      return 0;
    }

    if (*cmd_bc) {
      const FiniteStructure l = bc_seed.seed_file.empty() && bc_seed.preset == "edge"
                                    ? make_graph({0, 1, 2}, {{0, 1}, {1, 2}})
                                    : bc_seed.resolve();
      if (l.tag.kind != StructureKind::Graph)
        throw ContractError("bergman-check: graph truncations only");
      std::vector<Morphism> fs;
      if (!bc_endos.empty()) {
        fs = endo_list_from_json(l, slurp(bc_endos));
      } else {
        for (int i = 0; i < bc_depth; ++i) fs.push_back(identity_morphism(l));
      }
      if (static_cast<int>(fs.size()) < bc_depth)
        throw ContractError("bergman-check: need at least depth-many endomorphisms");
      ChainHandle chain(l, bc_depth);
      const auto rep = verify_distortion(chain, fs, bc_n);
      std::cout << (rep.ok ? "PASS" : "FAIL") << " distortion identities: "
                << rep.first_identity_checks << " + " << rep.shifted_identity_checks
                << " pointwise checks\n";
      nlohmann::ordered_json doc;
      doc["identities_ok"] = rep.ok;
      doc["first_identity_checks"] = rep.first_identity_checks;
      doc["shifted_identity_checks"] = rep.shifted_identity_checks;
      doc["mismatches"] = rep.mismatches;
      bool words_ok = true;
      for (int n = 1; n <= bc_n; ++n) {
        const auto w = encode_word(n);
        const auto eval = evaluate_word(l, fs, n, bc_depth);
        words_ok = words_ok && eval.ok && w.length() == static_cast<std::size_t>(2 * n + 1);
        std::cout << (eval.ok ? "PASS" : "FAIL") << " word f_" << n << ": length " << w.length()
                  << ", " << eval.points_checked << " checks at depth " << eval.depth_used
                  << "\n";
        doc["words"][std::to_string(n)] = {{"ok", eval.ok},
                                           {"length", w.length()},
                                           {"checks", eval.points_checked},
                                           {"depth_used", eval.depth_used}};
      }
      write_report(bc_report, doc);
      return rep.ok && words_ok ? 0 : kExitCounterexample;
    }

    if (*cmd_xp) {
      FiniteStructure s;
      if (!xp_tower.empty()) {
        auto t = tower_from_json(slurp(xp_tower), budget);
        if (xp_level > t.frozen_depth()) throw ContractError("export: level beyond the truncation");
        s = t.level(xp_level);
      } else if (!xp_in.empty()) {
        s = structure_from_json(slurp(xp_in));
      } else {
        throw std::runtime_error("export needs --tower or --in");
      }
      const std::string text = xp_format == "dot" ? to_dot(s) : structure_to_json(s);
      if (xp_out.empty())
        std::cout << text;
      else
        spit(xp_out, text);
      return 0;
    }
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ContractError& e) {
    std::cerr << "contract error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
