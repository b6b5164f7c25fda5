#include "katetov/json_io.hpp"

#include <json.hpp>

#include "katetov/kfunctor.hpp"

namespace katetov {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

namespace {

StructureKind kind_from_name(const std::string& name) {
  for (StructureKind k :
       {StructureKind::Graph, StructureKind::KnFreeGraph, StructureKind::Digraph,
        StructureKind::LinearOrder, StructureKind::Poset, StructureKind::Tournament,
        StructureKind::BooleanAlgebra, StructureKind::RationalMetric})
    if (kind_name(k) == name) return k;
  throw ParseError("unknown class name: " + name);
}

ordered structure_doc(const FiniteStructure& s) {
  ordered doc;
  doc["class"] = kind_name(s.tag.kind);
  ordered params = ordered::object();
  if (s.tag.kind == StructureKind::KnFreeGraph) params["n"] = s.tag.param;
  if (s.tag.kind == StructureKind::RationalMetric) params["q"] = s.tag.param;
  doc["params"] = params;
  doc["elements"] = s.elements;
  if (s.tag.kind == StructureKind::RationalMetric) {
    ordered rows = ordered::array();
    for (const auto& row : s.dist) {
      ordered r = ordered::array();
      for (const auto& d : row) r.push_back(to_string(d));
      rows.push_back(r);
    }
    doc["relations"] = rows;
  } else {
    ordered pairs = ordered::array();
    for (const auto& [a, b] : s.pairs) pairs.push_back(ordered::array({a, b}));
    doc["relations"] = pairs;
  }
  return doc;
}

FiniteStructure structure_from_doc(const json& doc) {
  const StructureKind kind = kind_from_name(doc.at("class").get<std::string>());
  std::vector<ElementId> elements = doc.at("elements").get<std::vector<ElementId>>();
  std::vector<IdPair> pairs;
  if (kind != StructureKind::RationalMetric && kind != StructureKind::BooleanAlgebra)
    for (const auto& p : doc.at("relations"))
      pairs.push_back({p.at(0).get<ElementId>(), p.at(1).get<ElementId>()});
  switch (kind) {
    case StructureKind::Graph: return make_graph(elements, pairs);
    case StructureKind::KnFreeGraph:
      return make_kn_free_graph(doc.at("params").at("n").get<int>(), elements, pairs);
    case StructureKind::Digraph: return make_digraph(elements, pairs);
    case StructureKind::Tournament: return make_tournament(elements, pairs);
    case StructureKind::Poset: return make_poset(elements, pairs);
    case StructureKind::LinearOrder: return make_linear_order(elements, pairs);
    case StructureKind::BooleanAlgebra: return make_boolean_algebra(elements);
    case StructureKind::RationalMetric: {
      const int q = doc.at("params").at("q").get<int>();
      std::vector<std::vector<Rational>> matrix;
      for (const auto& row : doc.at("relations")) {
        std::vector<Rational> r;
        for (const auto& cell : row) r.push_back(parse_rational(cell.get<std::string>()));
        matrix.push_back(std::move(r));
      }
      return make_metric(q, elements, std::move(matrix));
    }
  }
  throw ParseError("unreachable");
}

ordered payload_doc(const KElement& e) {
  ordered doc;
  if (const auto* p = std::get_if<OldPayload>(&e)) {
    doc["old"] = p->id;
  } else if (const auto* p = std::get_if<SetPayload>(&e)) {
    doc["new"] = p->members;
  } else if (const auto* p = std::get_if<InOutPayload>(&e)) {
    doc["new"] = ordered{{"in", p->in}, {"out", p->out}};
  } else if (const auto* p = std::get_if<CutPayload>(&e)) {
    doc["new"] = ordered{{"lower", p->lower}, {"upper", p->upper}};
  } else if (const auto* p = std::get_if<BoundsPayload>(&e)) {
    doc["new"] = ordered{{"lower", p->lower}, {"upper", p->upper}};
  } else if (const auto* p = std::get_if<SeqPayload>(&e)) {
    doc["new"] = ordered{{"seq", p->entries}};
  } else if (const auto* p = std::get_if<AtomHalfPayload>(&e)) {
    doc["new"] = ordered{{"bit", p->bit}, {"atom", p->atom}};
  } else if (const auto* p = std::get_if<KatetovPayload>(&e)) {
    ordered values = ordered::array();
    for (const auto& v : p->values) values.push_back(to_string(v));
    doc["new"] = ordered{{"values", values}};
  }
  return doc;
}

ordered link_doc(const Morphism& link) {
  ordered doc = ordered::array();
  if (link.source.tag.kind == StructureKind::BooleanAlgebra) {
    for (const auto& [a, image] : link.atom_map) doc.push_back(ordered::array({a, image}));
  } else {
    for (const auto& [a, b] : link.point_map) doc.push_back(ordered::array({a, b}));
  }
  return doc;
}

}  // namespace

std::string structure_to_json(const FiniteStructure& s) { return structure_doc(s).dump(2); }

FiniteStructure structure_from_json(const std::string& text) {
  try {
    return structure_from_doc(json::parse(text));
  } catch (const json::exception& e) {
    throw ParseError(std::string("structure JSON: ") + e.what());
  }
}

std::string tower_to_json(const TowerHandle& t) {
  ordered doc;
  doc["seed"] = structure_doc(t.level(0));
  doc["depth"] = t.frozen_depth();
  ordered levels = ordered::array();
  for (int i = 0; i <= t.frozen_depth(); ++i) levels.push_back(structure_doc(t.level(i)));
  doc["levels"] = levels;
  ordered links = ordered::array();
  for (int i = 0; i < t.frozen_depth(); ++i) links.push_back(link_doc(t.link(i)));
  doc["links"] = links;
  ordered indices = ordered::array();
  for (int i = 1; i <= t.frozen_depth(); ++i) {
    ordered level_index = ordered::array();
    for (const auto& e : t.level_index(i)) level_index.push_back(payload_doc(e));
    indices.push_back(level_index);
  }
  doc["element_index"] = indices;
  return doc.dump(2);
}

TowerHandle tower_from_json(const std::string& text, std::size_t level_budget) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("tower JSON: ") + e.what());
  }
  const FiniteStructure seed = structure_from_doc(doc.at("seed"));
  const int depth = doc.at("depth").get<int>();
  TowerHandle t = TowerHandle::iterate(seed, depth, level_budget);
  // stored levels must agree with the deterministic reconstruction
  const auto& levels = doc.at("levels");
  if (static_cast<int>(levels.size()) != depth + 1)
    throw ParseError("tower JSON: level count disagrees with depth");
  for (int i = 0; i <= depth; ++i) {
    const FiniteStructure stored = structure_from_doc(levels.at(i));
    if (stored.elements != t.level(i).elements || stored.pairs != t.level(i).pairs ||
        stored.dist != t.level(i).dist)
      throw ParseError("tower JSON: stored level " + std::to_string(i) +
                       " does not match the reconstruction");
  }
  return t;
}

std::string partial_map_to_json(const PartialMap& m) {
  ordered doc;
  doc["kind"] = kind_name(m.kind);
  ordered pairs = ordered::array();
  for (std::size_t i = 0; i < m.domain.size(); ++i)
    pairs.push_back(ordered::array({ordered::array({m.domain[i].level, m.domain[i].id}),
                                    ordered::array({m.images[i].level, m.images[i].id})}));
  doc["pairs"] = pairs;
  return doc.dump(2);
}

PartialMap partial_map_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("map JSON: ") + e.what());
  }
  PartialMap m;
  const std::string kind = doc.value("kind", "isomorphism");
  if (kind == "homomorphism")
    m.kind = MorphismKind::Homomorphism;
  else if (kind == "embedding")
    m.kind = MorphismKind::Embedding;
  else if (kind == "isomorphism")
    m.kind = MorphismKind::Isomorphism;
  else
    throw ParseError("map JSON: unknown kind " + kind);
  for (const auto& p : doc.at("pairs")) {
    m.domain.push_back({p.at(0).at(0).get<int>(), p.at(0).at(1).get<ElementId>()});
    m.images.push_back({p.at(1).at(0).get<int>(), p.at(1).at(1).get<ElementId>()});
  }
  return m;
}

std::string endo_truncation_to_json(const EndoTruncation& e) {
  ordered doc;
  doc["depth_in"] = e.depth_in;
  doc["depth_out"] = e.depth_out;
  ordered pairs = ordered::array();
  for (const auto& [p, q] : e.table)
    pairs.push_back(ordered::array(
        {ordered::array({p.level, p.id}), ordered::array({q.level, q.id})}));
  doc["table"] = pairs;
  return doc.dump(2);
}

EndoTruncation endo_truncation_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("truncation JSON: ") + e.what());
  }
  EndoTruncation out;
  out.depth_in = doc.at("depth_in").get<int>();
  out.depth_out = doc.at("depth_out").get<int>();
  for (const auto& p : doc.at("table"))
    out.table.push_back({{p.at(0).at(0).get<int>(), p.at(0).at(1).get<ElementId>()},
                         {p.at(1).at(0).get<int>(), p.at(1).at(1).get<ElementId>()}});
  std::sort(out.table.begin(), out.table.end());
  return out;
}

std::vector<Morphism> endo_list_from_json(const FiniteStructure& base, const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("endomorphism JSON: ") + e.what());
  }
  std::vector<Morphism> out;
  for (const auto& entry : doc) {
    Morphism m;
    m.source = base;
    m.target = base;
    const std::string kind = entry.value("kind", "homomorphism");
    m.kind = kind == "isomorphism"  ? MorphismKind::Isomorphism
             : kind == "embedding" ? MorphismKind::Embedding
                                   : MorphismKind::Homomorphism;
    for (const auto& p : entry.at("map"))
      m.point_map[p.at(0).get<ElementId>()] = p.at(1).get<ElementId>();
    if (const auto r = check_morphism(m); !r.ok)
      throw ParseError("endomorphism JSON: invalid map: " + r.violation);
    out.push_back(std::move(m));
  }
  return out;
}

std::string endo_list_to_json(const std::vector<Morphism>& endos) {
  ordered doc = ordered::array();
  for (const auto& m : endos) {
    ordered entry;
    entry["kind"] = kind_name(m.kind);
    ordered pairs = ordered::array();
    for (const auto& [a, b] : m.point_map) pairs.push_back(ordered::array({a, b}));
    entry["map"] = pairs;
    doc.push_back(entry);
  }
  return doc.dump(2);
}

std::string to_dot(const FiniteStructure& s) {
  std::string out;
  switch (s.tag.kind) {
    case StructureKind::Graph:
    case StructureKind::KnFreeGraph: {
      out += "graph {\n";
      for (ElementId e : s.elements) out += "  n" + std::to_string(e) + ";\n";
      for (const auto& [a, b] : s.pairs)
        out += "  n" + std::to_string(a) + " -- n" + std::to_string(b) + ";\n";
      out += "}\n";
      return out;
    }
    case StructureKind::Digraph:
    case StructureKind::Tournament: {
      out += "digraph {\n";
      for (ElementId e : s.elements) out += "  n" + std::to_string(e) + ";\n";
      for (const auto& [a, b] : s.pairs)
        out += "  n" + std::to_string(a) + " -> n" + std::to_string(b) + ";\n";
      out += "}\n";
      return out;
    }
    case StructureKind::Poset:
    case StructureKind::LinearOrder: {
      // Hasse diagram: the cover relation, drawn bottom-up
      out += "digraph {\n  rankdir=BT;\n";
      for (ElementId e : s.elements) out += "  n" + std::to_string(e) + ";\n";
      for (const auto& [a, b] : s.pairs) {
        bool covered = false;
        for (ElementId c : s.elements)
          if (c != a && c != b && s.pairs.count({a, c}) && s.pairs.count({c, b})) covered = true;
        if (!covered)
          out += "  n" + std::to_string(a) + " -> n" + std::to_string(b) + ";\n";
      }
      out += "}\n";
      return out;
    }
    default: throw ContractError("to_dot: no drawing for class " + kind_name(s.tag.kind));
  }
}

}  // namespace katetov
