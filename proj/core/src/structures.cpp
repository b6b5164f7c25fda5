#include "katetov/structures.hpp"

#include <algorithm>
#include <sstream>

namespace katetov {

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(text));
    return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational: " + text);
  }
}

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

std::string kind_name(StructureKind kind) {
  switch (kind) {
    case StructureKind::Graph: return "graph";
    case StructureKind::KnFreeGraph: return "kn_free_graph";
    case StructureKind::Digraph: return "digraph";
    case StructureKind::LinearOrder: return "linear_order";
    case StructureKind::Poset: return "poset";
    case StructureKind::Tournament: return "tournament";
    case StructureKind::BooleanAlgebra: return "boolean_algebra";
    case StructureKind::RationalMetric: return "rational_metric";
  }
  return "?";
}

std::string kind_name(MorphismKind kind) {
  switch (kind) {
    case MorphismKind::Homomorphism: return "homomorphism";
    case MorphismKind::Embedding: return "embedding";
    case MorphismKind::Isomorphism: return "isomorphism";
  }
  return "?";
}

bool is_graph_like(StructureKind kind) {
  return kind == StructureKind::Graph || kind == StructureKind::KnFreeGraph;
}
bool is_order_like(StructureKind kind) {
  return kind == StructureKind::Poset || kind == StructureKind::LinearOrder;
}
bool is_arc_like(StructureKind kind) {
  return kind == StructureKind::Digraph || kind == StructureKind::Tournament;
}

bool FiniteStructure::has_element(ElementId e) const {
  return std::binary_search(elements.begin(), elements.end(), e);
}

int FiniteStructure::index_of(ElementId e) const {
  const auto it = std::lower_bound(elements.begin(), elements.end(), e);
  if (it == elements.end() || *it != e) return -1;
  return static_cast<int>(it - elements.begin());
}

bool FiniteStructure::adjacent(ElementId a, ElementId b) const {
  if (a == b) return false;
  return pairs.count({std::min(a, b), std::max(a, b)}) > 0;
}

bool FiniteStructure::has_arc(ElementId a, ElementId b) const {
  return pairs.count({a, b}) > 0;
}

bool FiniteStructure::leq(ElementId a, ElementId b) const {
  return a == b || pairs.count({a, b}) > 0;
}

const Rational& FiniteStructure::distance(ElementId a, ElementId b) const {
  return dist[index_of(a)][index_of(b)];
}

namespace {

std::vector<ElementId> sorted_unique(std::vector<ElementId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

FiniteStructure make_pairs_structure(ClassTag tag, std::vector<ElementId> elements,
                                     const std::vector<IdPair>& raw, bool normalize_unordered) {
  FiniteStructure s;
  s.tag = tag;
  s.elements = sorted_unique(std::move(elements));
  for (auto [a, b] : raw) {
    if (normalize_unordered && a > b) std::swap(a, b);
    s.pairs.insert({a, b});
  }
  return s;
}

}  // namespace

FiniteStructure make_graph(std::vector<ElementId> elements, const std::vector<IdPair>& edges) {
  return make_pairs_structure({StructureKind::Graph, 0}, std::move(elements), edges, true);
}

FiniteStructure make_kn_free_graph(int n, std::vector<ElementId> elements,
                                   const std::vector<IdPair>& edges) {
  return make_pairs_structure({StructureKind::KnFreeGraph, n}, std::move(elements), edges, true);
}

FiniteStructure make_digraph(std::vector<ElementId> elements, const std::vector<IdPair>& arcs) {
  return make_pairs_structure({StructureKind::Digraph, 0}, std::move(elements), arcs, false);
}

FiniteStructure make_tournament(std::vector<ElementId> elements, const std::vector<IdPair>& arcs) {
  return make_pairs_structure({StructureKind::Tournament, 0}, std::move(elements), arcs, false);
}

FiniteStructure make_poset(std::vector<ElementId> elements, const std::vector<IdPair>& strict) {
  return make_pairs_structure({StructureKind::Poset, 0}, std::move(elements), strict, false);
}

FiniteStructure make_linear_order(std::vector<ElementId> elements,
                                  const std::vector<IdPair>& strict) {
  return make_pairs_structure({StructureKind::LinearOrder, 0}, std::move(elements), strict, false);
}

FiniteStructure make_chain(std::vector<ElementId> elements) {
  std::vector<IdPair> strict;
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (std::size_t j = i + 1; j < elements.size(); ++j)
      strict.push_back({elements[i], elements[j]});
  return make_linear_order(std::move(elements), strict);
}

FiniteStructure make_boolean_algebra(std::vector<ElementId> atoms) {
  FiniteStructure s;
  s.tag = {StructureKind::BooleanAlgebra, 0};
  s.elements = sorted_unique(std::move(atoms));
  return s;
}

FiniteStructure make_metric(int q, std::vector<ElementId> elements,
                            std::vector<std::vector<Rational>> matrix) {
  FiniteStructure s;
  s.tag = {StructureKind::RationalMetric, q};
  s.elements = sorted_unique(std::move(elements));
  s.dist = std::move(matrix);
  return s;
}

ElementId fresh_element_id(const FiniteStructure& s) {
  return s.elements.empty() ? 0 : s.elements.back() + 1;
}

namespace {

ValidationReport fail(const std::string& what) { return {false, what}; }

ValidationReport validate_graph(const FiniteStructure& s) {
  for (const auto& [a, b] : s.pairs) {
    if (a == b) return fail("irreflexive violated: loop on element " + std::to_string(a));
    if (a > b) return fail("edge not stored as 2-subset");
    if (!s.has_element(a) || !s.has_element(b)) return fail("edge endpoint outside carrier");
  }
  if (s.tag.kind == StructureKind::KnFreeGraph) {
    const int n = s.tag.param;
    if (n < 3) return fail("forbidden clique size must be >= 3");
    if (contains_clique(s, n)) return fail("contains forbidden clique K_" + std::to_string(n));
  }
  return {};
}

ValidationReport validate_arcs(const FiniteStructure& s) {
  for (const auto& [a, b] : s.pairs) {
    if (a == b) return fail("irreflexive violated: loop on element " + std::to_string(a));
    if (!s.has_element(a) || !s.has_element(b)) return fail("arc endpoint outside carrier");
    if (s.pairs.count({b, a}))
      return fail("antisymmetry violated: both arcs between " + std::to_string(a) + " and " +
                  std::to_string(b));
  }
  if (s.tag.kind == StructureKind::Tournament) {
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j) {
        const ElementId a = s.elements[i], b = s.elements[j];
        if (!s.has_arc(a, b) && !s.has_arc(b, a))
          return fail("tournament totality violated between " + std::to_string(a) + " and " +
                      std::to_string(b));
      }
  }
  return {};
}

ValidationReport validate_order(const FiniteStructure& s) {
  for (const auto& [a, b] : s.pairs) {
    if (a == b) return fail("strict order pair on the diagonal");
    if (!s.has_element(a) || !s.has_element(b)) return fail("order pair outside carrier");
    if (s.pairs.count({b, a}))
      return fail("antisymmetry violated between " + std::to_string(a) + " and " +
                  std::to_string(b));
  }
  for (const auto& [a, b] : s.pairs)
    for (const auto& [c, d] : s.pairs)
      if (b == c && !s.leq(a, d))
        return fail("transitivity violated: " + std::to_string(a) + " < " + std::to_string(b) +
                    " < " + std::to_string(d));
  if (s.tag.kind == StructureKind::LinearOrder) {
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j) {
        const ElementId a = s.elements[i], b = s.elements[j];
        if (!s.leq(a, b) && !s.leq(b, a))
          return fail("totality violated between " + std::to_string(a) + " and " +
                      std::to_string(b));
      }
  }
  return {};
}

ValidationReport validate_boolean(const FiniteStructure& s) {
  if (s.elements.empty()) return fail("Boolean algebra needs at least one atom");
  if (!s.pairs.empty()) return fail("Boolean algebra carries no relation payload");
  return {};
}

ValidationReport validate_metric(const FiniteStructure& s) {
  const int q = s.tag.param;
  if (q < 1) return fail("metric denominator must be positive");
  const std::size_t m = s.size();
  if (s.dist.size() != m) return fail("distance matrix size mismatch");
  for (const auto& row : s.dist)
    if (row.size() != m) return fail("distance matrix not square");
  const Rational zero(0), one(1);
  for (std::size_t i = 0; i < m; ++i) {
    if (s.dist[i][i] != zero) return fail("d(x,x) != 0");
    for (std::size_t j = 0; j < m; ++j) {
      const Rational& d = s.dist[i][j];
      if (i != j && !(d > zero)) return fail("distance not positive for distinct points");
      if (d > one) return fail("distance exceeds 1");
      if ((d * Rational(q)).den != 1) return fail("distance not a multiple of 1/q");
      if (s.dist[j][i] != d) return fail("symmetry violated");
    }
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        if (s.dist[i][j] > s.dist[i][k] + s.dist[k][j]) return fail("triangle inequality violated");
  return {};
}

}  // namespace

bool contains_clique(const FiniteStructure& s, int clique_size) {
  if (clique_size <= 1) return s.size() >= static_cast<std::size_t>(clique_size);
  std::vector<int> pick;
  const int m = static_cast<int>(s.size());
  auto extendable = [&](int cand) {
    for (int p : pick)
      if (!s.adjacent(s.elements[p], s.elements[cand])) return false;
    return true;
  };
  auto search = [&](auto&& self, int start) -> bool {
    if (static_cast<int>(pick.size()) == clique_size) return true;
    for (int c = start; c < m; ++c) {
      if (!extendable(c)) continue;
      pick.push_back(c);
      if (self(self, c + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  return search(search, 0);
}

ValidationReport validate(const FiniteStructure& s) {
  for (std::size_t i = 1; i < s.elements.size(); ++i)
    if (s.elements[i - 1] >= s.elements[i]) return fail("element list not strictly increasing");
  switch (s.tag.kind) {
    case StructureKind::Graph:
    case StructureKind::KnFreeGraph: return validate_graph(s);
    case StructureKind::Digraph:
    case StructureKind::Tournament: return validate_arcs(s);
    case StructureKind::Poset:
    case StructureKind::LinearOrder: return validate_order(s);
    case StructureKind::BooleanAlgebra: return validate_boolean(s);
    case StructureKind::RationalMetric: return validate_metric(s);
  }
  return fail("unknown class");
}

FiniteStructure induced_substructure(const FiniteStructure& s,
                                     const std::vector<ElementId>& subset) {
  FiniteStructure out;
  out.tag = s.tag;
  out.elements = sorted_unique(subset);
  if (s.tag.kind == StructureKind::RationalMetric) {
    const std::size_t m = out.elements.size();
    out.dist.assign(m, std::vector<Rational>(m));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        out.dist[i][j] = s.distance(out.elements[i], out.elements[j]);
    return out;
  }
  if (s.tag.kind == StructureKind::BooleanAlgebra) return out;  // sub-atom-set
  for (const auto& p : s.pairs)
    if (out.has_element(p.first) && out.has_element(p.second)) out.pairs.insert(p);
  return out;
}

std::vector<std::uint64_t> generated_subalgebra_blocks(const FiniteStructure& s,
                                                       const std::vector<std::uint64_t>& carrier) {
  if (s.tag.kind != StructureKind::BooleanAlgebra)
    throw ContractError("generated_subalgebra_blocks: Boolean algebras only");
  const std::size_t m = s.size();
  if (m > 63) throw CapacityError("too many atoms for bitmask carrier");
  // Atoms of the generated subalgebra = blocks of the partition where two
  // atoms fall together iff no generator separates them.
  std::map<std::uint64_t, std::uint64_t> signature_to_block;
  for (std::size_t i = 0; i < m; ++i) {
    std::uint64_t sig = 0;
    for (std::size_t g = 0; g < carrier.size(); ++g)
      if (carrier[g] >> i & 1) sig |= std::uint64_t(1) << g;
    signature_to_block[sig] |= std::uint64_t(1) << i;
  }
  std::vector<std::uint64_t> blocks;
  for (const auto& [sig, block] : signature_to_block) blocks.push_back(block);
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

}  // namespace katetov
