#pragma once

#include <bit>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "symcirc/field.hpp"
#include "symcirc/graph.hpp"
#include "symcirc/matching.hpp"

namespace symcirc {

// ---------------------------------------------------------------------------
// Base graph checks
// ---------------------------------------------------------------------------

struct BaseGraphCheck {
  bool valid = true;
  bool cubic = true;
  bool two_connected = true;
  bool odd = false;  // |E| odd
  std::vector<std::string> diagnostics;
};

inline BaseGraphCheck check_base_graph(const Graph& g) {
  BaseGraphCheck r;
  r.odd = g.edges.size() % 2 == 1;
  for (std::size_t v = 0; v < g.n; ++v)
    if (g.degree(v) != 3) {
      r.cubic = false;
      r.diagnostics.push_back("vertex " + std::to_string(v + 1) + " has degree " + std::to_string(g.degree(v)));
    }
  if (g.n < 3 || !is_connected(g)) {
    r.two_connected = false;
    r.diagnostics.push_back("graph is not connected");
  } else {
    for (std::size_t v = 0; v < g.n; ++v)
      if (!is_connected(g, v)) {
        r.two_connected = false;
        r.diagnostics.push_back("vertex " + std::to_string(v + 1) + " is a cut vertex");
      }
  }
  r.valid = r.cubic && r.two_connected;
  return r;
}

// ---------------------------------------------------------------------------
// CFI graphs
// ---------------------------------------------------------------------------

/// Vertex of X(G): EdgeV(e, bit), Balance(v) or Inner(v, S). S is a bitmask
/// over the incident edges of v in ascending edge-index order.
struct CFIVertex {
  enum class Kind { EdgeV, Balance, Inner };
  Kind kind;
  std::size_t index;     // edge index for EdgeV, base vertex otherwise
  unsigned value = 0;    // bit for EdgeV, subset mask for Inner
  friend auto operator<=>(const CFIVertex&, const CFIVertex&) = default;
};

struct CFIGraph {
  BaseGraph base;
  Graph graph;
  std::vector<CFIVertex> names;
  std::vector<std::vector<std::size_t>> incident;  // base vertex -> incident edges, ascending
  bool twisted = false;
  std::size_t special = 0;
  std::vector<std::size_t> balance_id;
  std::vector<std::vector<std::optional<std::size_t>>> inner_id;  // [v][mask]

  std::size_t edge_vertex(std::size_t e, unsigned bit) const { return 2 * e + bit; }
  std::size_t balance(std::size_t v) const { return balance_id.at(v); }
  std::optional<std::size_t> inner(std::size_t v, unsigned mask) const { return inner_id.at(v).at(mask); }
  /// True for Inner vertices; the other side holds edge and balance vertices.
  bool inner_side(std::size_t x) const { return names[x].kind == CFIVertex::Kind::Inner; }

  /// Position of edge e in the incident list of v.
  unsigned slot(std::size_t v, std::size_t e) const {
    const auto& inc = incident.at(v);
    auto it = std::find(inc.begin(), inc.end(), e);
    if (it == inc.end()) throw InvalidArgument("edge not incident to vertex");
    return static_cast<unsigned>(it - inc.begin());
  }

  std::string name_of(std::size_t x) const {
    const auto& nv = names[x];
    if (nv.kind == CFIVertex::Kind::EdgeV) {
      auto [a, b] = base.graph.edges[nv.index];
      return "e" + std::to_string(a + 1) + "-" + std::to_string(b + 1) + "_" + std::to_string(nv.value);
    }
    if (nv.kind == CFIVertex::Kind::Balance) return "v" + std::to_string(nv.index + 1) + "_b";
    std::string s = "v" + std::to_string(nv.index + 1) + "_{";
    bool first = true;
    for (unsigned i = 0; i < incident[nv.index].size(); ++i)
      if (nv.value >> i & 1) {
        auto [a, b] = base.graph.edges[incident[nv.index][i]];
        s += (first ? "" : ",") + std::to_string(a + 1) + "-" + std::to_string(b + 1);
        first = false;
      }
    return s + "}";
  }
};

inline std::vector<std::vector<std::size_t>> incident_edges(const Graph& g) {
  std::vector<std::vector<std::size_t>> inc(g.n);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    inc[g.edges[e].first].push_back(e);
    inc[g.edges[e].second].push_back(e);
  }
  return inc;
}

/// X(G), or the twisted ~X(G) with odd subsets at `special`.
inline CFIGraph build_cfi(const BaseGraph& base, bool twisted, std::size_t special = 0) {
  const Graph& g = base.graph;
  auto check = check_base_graph(g);
  if (!check.valid)
    throw InvalidArgument("base graph is not 3-regular and 2-connected: " + check.diagnostics.front());
  if (special >= g.n) throw InvalidArgument("special vertex " + std::to_string(special + 1) + " is not in the graph");
  CFIGraph x;
  x.base = base;
  x.twisted = twisted;
  x.special = special;
  x.incident = incident_edges(g);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    x.names.push_back({CFIVertex::Kind::EdgeV, e, 0});
    x.names.push_back({CFIVertex::Kind::EdgeV, e, 1});
  }
  x.balance_id.resize(g.n);
  x.inner_id.assign(g.n, std::vector<std::optional<std::size_t>>(8));
  for (std::size_t v = 0; v < g.n; ++v) {
    x.balance_id[v] = x.names.size();
    x.names.push_back({CFIVertex::Kind::Balance, v, 0});
    unsigned parity = (twisted && v == special) ? 1 : 0;
    for (unsigned mask = 0; mask < 8; ++mask)
      if (static_cast<unsigned>(std::popcount(mask)) % 2 == parity) {
        x.inner_id[v][mask] = x.names.size();
        x.names.push_back({CFIVertex::Kind::Inner, v, mask});
      }
  }
  x.graph = Graph(x.names.size());
  for (std::size_t v = 0; v < g.n; ++v)
    for (unsigned mask = 0; mask < 8; ++mask) {
      auto in = x.inner_id[v][mask];
      if (!in) continue;
      x.graph.add_edge(x.balance_id[v], *in);
      for (unsigned i = 0; i < 3; ++i) x.graph.add_edge(x.edge_vertex(x.incident[v][i], mask >> i & 1), *in);
    }
  return x;
}

/// True when the bijection f (indexed by vertices of a) maps a onto b.
inline bool is_isomorphism(const Graph& a, const Graph& b, const std::vector<std::size_t>& f) {
  if (a.n != b.n || a.edges.size() != b.edges.size() || f.size() != a.n) return false;
  std::vector<char> hit(b.n, 0);
  for (auto y : f) {
    if (y >= b.n || hit[y]) return false;
    hit[y] = 1;
  }
  for (auto [u, v] : a.edges)
    if (!b.has_edge(f[u], f[v])) return false;
  return true;
}

/// Isomorphism from the graph twisted at `from.special` to the graph twisted
/// at `to.special`, obtained by flipping the edge vertices along `path`
/// (base vertices, from one special vertex to the other).
inline std::vector<std::size_t> path_flip_isomorphism(const CFIGraph& from, const CFIGraph& to,
                                                      const std::vector<std::size_t>& path) {
  const Graph& g = from.base.graph;
  if (path.empty() || path.front() != from.special || path.back() != to.special)
    throw InvalidArgument("path must run from the first special vertex to the second");
  std::set<std::size_t> seen(path.begin(), path.end());
  if (seen.size() != path.size()) throw InvalidArgument("path is not simple");
  std::vector<char> on_path(g.edges.size(), 0);
  std::vector<unsigned> flip(g.n, 0);
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    auto e = g.edge_index(path[i], path[i + 1]);
    if (!e) throw InvalidArgument("path uses a non-edge");
    on_path[*e] = 1;
    flip[path[i]] |= 1u << from.slot(path[i], *e);
    flip[path[i + 1]] |= 1u << from.slot(path[i + 1], *e);
  }
  std::vector<std::size_t> f(from.names.size());
  for (std::size_t x = 0; x < from.names.size(); ++x) {
    const auto& nv = from.names[x];
    switch (nv.kind) {
      case CFIVertex::Kind::EdgeV:
        f[x] = to.edge_vertex(nv.index, nv.value ^ on_path[nv.index]);
        break;
      case CFIVertex::Kind::Balance:
        f[x] = to.balance(nv.index);
        break;
      case CFIVertex::Kind::Inner: {
        auto y = to.inner(nv.index, nv.value ^ flip[nv.index]);
        if (!y) throw ConstructionError("path flip produced a subset of the wrong parity");
        f[x] = *y;
        break;
      }
    }
  }
  if (!is_isomorphism(from.graph, to.graph, f)) throw ConstructionError("path flip is not an isomorphism");
  return f;
}

// ---------------------------------------------------------------------------
// Matching classification
// ---------------------------------------------------------------------------

/// Projection p^M(v,e) for every incidence (v,e), listed by base vertex and
/// then by incident-edge slot.
using Projection = std::vector<std::uint8_t>;

struct MatchingClassification {
  BigInt total = 0;
  BigInt uniform = 0;
  BigInt non_uniform = 0;
  std::map<Projection, BigInt> histogram;
  bool projection_equations_hold = true;
};

inline MatchingClassification classify_perfect_matchings(const CFIGraph& x, const MatchingOptions& opt = {}) {
  const Graph& g = x.base.graph;
  std::vector<std::size_t> offset(g.n + 1, 0);
  for (std::size_t v = 0; v < g.n; ++v) offset[v + 1] = offset[v] + x.incident[v].size();
  struct Leaf {
    const CFIGraph* x;
    const std::vector<std::size_t>* offset;
    std::map<Projection, std::uint64_t> hist;
    bool equations = true;
    void operator()(const MatchingEdges& m) {
      Projection p(offset->back(), 0);
      for (auto [a, b] : m) {
        std::size_t ev = x->inner_side(a) ? b : a, in = x->inner_side(a) ? a : b;
        const auto& ne = x->names[ev];
        if (ne.kind != CFIVertex::Kind::EdgeV) continue;
        std::size_t v = x->names[in].index;
        ++p[(*offset)[v] + x->slot(v, ne.index)];
      }
      const Graph& base = x->base.graph;
      for (std::size_t e = 0; e < base.edges.size(); ++e) {
        auto [u, v] = base.edges[e];
        if (p[(*offset)[u] + x->slot(u, e)] + p[(*offset)[v] + x->slot(v, e)] != 2) equations = false;
      }
      for (std::size_t v = 0; v < base.n; ++v) {
        unsigned s = 0;
        for (std::size_t i = (*offset)[v]; i < (*offset)[v + 1]; ++i) s += p[i];
        if (s != 3) equations = false;
      }
      ++hist[p];
    }
  };
  MatchingClassification out;
  for (auto& leaf : visit_perfect_matchings(x.graph, opt, [&] { return Leaf{&x, &offset, {}, true}; })) {
    out.projection_equations_hold = out.projection_equations_hold && leaf.equations;
    for (const auto& [p, c] : leaf.hist) out.histogram[p] += c;
  }
  for (const auto& [p, c] : out.histogram) {
    out.total += c;
    bool uniform = std::all_of(p.begin(), p.end(), [](std::uint8_t v) { return v == 1; });
    (uniform ? out.uniform : out.non_uniform) += c;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Orientations
// ---------------------------------------------------------------------------

inline constexpr std::size_t kMaxOrientationEdges = 24;

/// Orientation as a bitmask over edges: bit e clear directs edge (a,b) with
/// a < b from a to b, set directs it from b to a.
struct Orientation {
  std::uint64_t reversed = 0;
  std::size_t tail(const Graph& g, std::size_t e) const { return reversed >> e & 1 ? g.edges[e].second : g.edges[e].first; }
  std::size_t head(const Graph& g, std::size_t e) const { return reversed >> e & 1 ? g.edges[e].first : g.edges[e].second; }
};

/// Vertices with an odd number of incoming edges, as a bitmask.
inline std::uint64_t odd_set(const Graph& g, const Orientation& o) {
  std::uint64_t odd = 0;
  for (std::size_t e = 0; e < g.edges.size(); ++e) odd ^= std::uint64_t{1} << o.head(g, e);
  return odd;
}

template <typename Visit>
void enumerate_orientations(const Graph& g, Visit&& visit) {
  if (g.edges.size() > kMaxOrientationEdges)
    throw BudgetExceeded("orientation enumeration limited to " + std::to_string(kMaxOrientationEdges) + " edges");
  if (g.n > 64) throw BudgetExceeded("orientation census limited to 64 vertices");
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << g.edges.size()); ++m) {
    Orientation o{m};
    visit(o, odd_set(g, o));
  }
}

struct OrientationCensus {
  std::uint64_t total = 0;
  std::map<std::uint64_t, std::uint64_t> odd_sets;  // odd set -> multiplicity
  bool parity_uniform = true;  // every odd set has the parity of |E|
};

inline OrientationCensus orientation_census(const Graph& g) {
  OrientationCensus c;
  enumerate_orientations(g, [&](const Orientation&, std::uint64_t odd) {
    ++c.total;
    ++c.odd_sets[odd];
    if (static_cast<std::size_t>(std::popcount(odd)) % 2 != g.edges.size() % 2) c.parity_uniform = false;
  });
  return c;
}

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

inline BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline BigInt pow2(unsigned e) { return BigInt(1) << e; }

/// Sum over subsets S of an N-set with |S| of the given parity of 2^|S| 4^(N-|S|).
inline BigInt parity_weighted_sum(unsigned n, unsigned parity) {
  BigInt s = 0;
  for (unsigned k = parity; k <= n; k += 2) s += binomial(n, k) * pow2(k) * pow2(2 * (n - k));
  return s;
}

/// Number of uniform perfect matchings of X(G) (or ~X(G)).
inline BigInt uniform_count_formula(const Graph& g, bool twisted) {
  if (g.n % 2 != 0) throw InvalidArgument("uniform_count_formula: |V| must be even");
  unsigned parity = static_cast<unsigned>(g.edges.size() % 2) ^ (twisted ? 1u : 0u);
  return pow2(static_cast<unsigned>(g.n / 2 + 1)) * parity_weighted_sum(static_cast<unsigned>(g.n), parity);
}

struct PQ {
  BigInt p, q;
  friend bool operator==(const PQ&, const PQ&) = default;
};

/// (P_m, Q_m) by the recurrence P_m = 20P + 16Q, Q_m = 20Q + 16P.
inline PQ pq(unsigned m) {
  if (m < 1) throw InvalidArgument("pq: m must be >= 1");
  PQ r{20, 16};
  for (unsigned i = 2; i <= m; ++i) r = PQ{20 * r.p + 16 * r.q, 20 * r.q + 16 * r.p};
  return r;
}

/// (P_m, Q_m) by direct summation over subsets of a 2m-set.
inline PQ pq_direct(unsigned m) {
  if (m < 1) throw InvalidArgument("pq_direct: m must be >= 1");
  return {parity_weighted_sum(2 * m, 0), parity_weighted_sum(2 * m, 1)};
}

// ---------------------------------------------------------------------------
// Single-gadget matchings
// ---------------------------------------------------------------------------

/// Induced subgraph of one vertex gadget: edge vertices f_{bf}, g_{bg}, h_{bh},
/// the balance vertex and the four even inner vertices.
struct GadgetSubgraph {
  Graph graph;
  std::vector<std::string> names;
};

inline GadgetSubgraph gadget_subgraph(unsigned bf, unsigned bg, unsigned bh) {
  const char* letters = "fgh";
  unsigned bits[3] = {bf, bg, bh};
  GadgetSubgraph s;
  for (int i = 0; i < 3; ++i) s.names.push_back(std::string(1, letters[i]) + std::to_string(bits[i]));
  s.names.push_back("vb");
  std::vector<unsigned> masks;
  for (unsigned mask = 0; mask < 8; ++mask)
    if (std::popcount(mask) % 2 == 0) {
      masks.push_back(mask);
      std::string n = "v{";
      bool first = true;
      for (int i = 0; i < 3; ++i)
        if (mask >> i & 1) {
          n += (first ? "" : ",") + std::string(1, letters[i]);
          first = false;
        }
      s.names.push_back(n + "}");
    }
  s.graph = Graph(s.names.size());
  for (std::size_t k = 0; k < masks.size(); ++k) {
    std::size_t in = 4 + k;
    s.graph.add_edge(3, in);
    for (int i = 0; i < 3; ++i)
      if ((masks[k] >> i & 1) == bits[i]) s.graph.add_edge(i, in);
  }
  return s;
}

using NamedMatching = std::set<std::pair<std::string, std::string>>;

inline std::vector<NamedMatching> named_matchings(const GadgetSubgraph& s) {
  std::vector<NamedMatching> out;
  for (const auto& m : list_perfect_matchings(s.graph)) {
    NamedMatching nm;
    for (auto [a, b] : m) nm.emplace(s.names[a], s.names[b]);
    out.push_back(nm);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Matchings of S (choice f0,g0,h0) and T (choice f0,g0,h1) as listed in the
/// Figure 1 discussion, edge-vertex first.
inline std::vector<NamedMatching> reference_matchings_S() {
  std::vector<NamedMatching> r = {
      {{"f0", "v{}"}, {"g0", "v{f,h}"}, {"h0", "v{f,g}"}, {"vb", "v{g,h}"}},
      {{"f0", "v{g,h}"}, {"g0", "v{}"}, {"h0", "v{f,g}"}, {"vb", "v{f,h}"}},
      {{"f0", "v{g,h}"}, {"g0", "v{f,h}"}, {"h0", "v{f,g}"}, {"vb", "v{}"}},
      {{"f0", "v{g,h}"}, {"g0", "v{f,h}"}, {"h0", "v{}"}, {"vb", "v{f,g}"}},
  };
  std::sort(r.begin(), r.end());
  return r;
}

inline std::vector<NamedMatching> reference_matchings_T() {
  std::vector<NamedMatching> r = {
      {{"f0", "v{}"}, {"g0", "v{f,h}"}, {"h1", "v{g,h}"}, {"vb", "v{f,g}"}},
      {{"f0", "v{g,h}"}, {"g0", "v{}"}, {"h1", "v{f,h}"}, {"vb", "v{f,g}"}},
  };
  std::sort(r.begin(), r.end());
  return r;
}

struct GadgetMatchingsReport {
  std::size_t s_count = 0, t_count = 0;
  bool s_matches_reference = false, t_matches_reference = false;
  std::map<std::string, std::size_t> all_choices;  // "f0g1h0" -> count
  bool parity_classes_consistent = true;           // even choices 4, odd choices 2
  bool ok() const {
    return s_count == 4 && t_count == 2 && s_matches_reference && t_matches_reference && parity_classes_consistent;
  }
};

inline GadgetMatchingsReport gadget_matchings_check() {
  GadgetMatchingsReport r;
  auto s = named_matchings(gadget_subgraph(0, 0, 0));
  auto t = named_matchings(gadget_subgraph(0, 0, 1));
  r.s_count = s.size();
  r.t_count = t.size();
  r.s_matches_reference = s == reference_matchings_S();
  r.t_matches_reference = t == reference_matchings_T();
  for (unsigned choice = 0; choice < 8; ++choice) {
    unsigned bf = choice >> 2 & 1, bg = choice >> 1 & 1, bh = choice & 1;
    auto count = list_perfect_matchings(gadget_subgraph(bf, bg, bh).graph).size();
    r.all_choices["f" + std::to_string(bf) + "g" + std::to_string(bg) + "h" + std::to_string(bh)] = count;
    if (count != (std::popcount(choice) % 2 == 0 ? 4u : 2u)) r.parity_classes_consistent = false;
  }
  return r;
}

}  // namespace symcirc
