#pragma once

#include <algorithm>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "symcirc/error.hpp"

namespace symcirc {

/// Simple undirected graph on vertices 0..n-1. Edges are stored with the
/// smaller endpoint first, in insertion order; adjacency lists are sorted.
struct Graph {
  std::size_t n = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::vector<std::size_t>> adj;

  Graph() = default;
  explicit Graph(std::size_t vertices) : n(vertices), adj(vertices) {}

  bool has_edge(std::size_t u, std::size_t v) const {
    return std::binary_search(adj[u].begin(), adj[u].end(), v);
  }

  /// Adds {u,v}; rejects loops and duplicates.
  void add_edge(std::size_t u, std::size_t v) {
    if (u >= n || v >= n) throw InvalidArgument("edge endpoint out of range");
    if (u == v) throw InvalidArgument("self-loop at vertex " + std::to_string(u + 1));
    if (has_edge(u, v)) throw InvalidArgument("duplicate edge " + std::to_string(u + 1) + "-" + std::to_string(v + 1));
    edges.emplace_back(std::min(u, v), std::max(u, v));
    adj[u].insert(std::upper_bound(adj[u].begin(), adj[u].end(), v), v);
    adj[v].insert(std::upper_bound(adj[v].begin(), adj[v].end(), u), u);
  }

  std::size_t degree(std::size_t v) const { return adj[v].size(); }

  /// Index of edge {u,v} in `edges`, if present.
  std::optional<std::size_t> edge_index(std::size_t u, std::size_t v) const {
    auto key = std::make_pair(std::min(u, v), std::max(u, v));
    auto it = std::find(edges.begin(), edges.end(), key);
    if (it == edges.end()) return std::nullopt;
    return static_cast<std::size_t>(it - edges.begin());
  }
};

/// Relabels vertex v as perm[v].
inline Graph relabel(const Graph& g, const std::vector<std::size_t>& perm) {
  Graph h(g.n);
  for (auto [u, v] : g.edges) h.add_edge(perm[u], perm[v]);
  return h;
}

inline Graph cycle_graph(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

inline Graph path_graph(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

inline Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

inline Graph disjoint_union(const Graph& a, const Graph& b) {
  Graph g(a.n + b.n);
  for (auto [u, v] : a.edges) g.add_edge(u, v);
  for (auto [u, v] : b.edges) g.add_edge(a.n + u, a.n + v);
  return g;
}

/// G(n, p) with a seeded engine.
inline Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  Graph g(n);
  std::bernoulli_distribution coin(p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) g.add_edge(i, j);
  return g;
}

inline bool is_connected(const Graph& g, std::optional<std::size_t> removed = std::nullopt) {
  std::size_t start = 0;
  while (start < g.n && removed && start == *removed) ++start;
  if (start >= g.n) return true;
  std::vector<char> seen(g.n, 0);
  std::vector<std::size_t> stack{start};
  seen[start] = 1;
  if (removed) seen[*removed] = 1;
  while (!stack.empty()) {
    auto u = stack.back();
    stack.pop_back();
    for (auto v : g.adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        stack.push_back(v);
      }
  }
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

/// Two-colouring, if the graph is bipartite.
inline std::optional<std::vector<int>> bipartition(const Graph& g) {
  std::vector<int> side(g.n, -1);
  for (std::size_t s = 0; s < g.n; ++s) {
    if (side[s] != -1) continue;
    side[s] = 0;
    std::vector<std::size_t> stack{s};
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      for (auto v : g.adj[u]) {
        if (side[v] == -1) {
          side[v] = 1 - side[u];
          stack.push_back(v);
        } else if (side[v] == side[u]) {
          return std::nullopt;
        }
      }
    }
  }
  return side;
}

/// Base graph for the CFI construction, with optional documented treewidth.
struct BaseGraph {
  std::string name;
  Graph graph;
  std::optional<int> treewidth;
};

inline BaseGraph builtin_graph(const std::string& name) {
  if (name == "k4") return {"k4", complete_graph(4), 3};
  if (name == "k33") {
    Graph g(6);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 3; j < 6; ++j) g.add_edge(i, j);
    return {"k33", g, 3};
  }
  if (name == "petersen") {
    Graph g(10);
    for (std::size_t i = 0; i < 5; ++i) {
      g.add_edge(i, (i + 1) % 5);
      g.add_edge(i, i + 5);
      g.add_edge(5 + i, 5 + (i + 2) % 5);
    }
    return {"petersen", g, 4};
  }
  throw InvalidArgument("unknown built-in graph '" + name + "' (known: k4, k33, petersen)");
}

/// Parses "graph <n> <m>" followed by m lines "u v" with 1-based vertices.
inline Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string word;
  std::size_t n = 0, m = 0;
  if (!(in >> word >> n >> m) || word != "graph") throw InvalidArgument("graph file must start with 'graph <n> <m>'");
  Graph g(n);
  for (std::size_t i = 0; i < m; ++i) {
    long long u = 0, v = 0;
    if (!(in >> u >> v)) throw InvalidArgument("graph file: expected " + std::to_string(m) + " edges, got " + std::to_string(i));
    if (u < 1 || v < 1 || u > static_cast<long long>(n) || v > static_cast<long long>(n))
      throw InvalidArgument("graph file: edge " + std::to_string(i + 1) + " has a vertex outside 1.." + std::to_string(n));
    g.add_edge(static_cast<std::size_t>(u - 1), static_cast<std::size_t>(v - 1));
  }
  if (in >> word) throw InvalidArgument("graph file: trailing content after " + std::to_string(m) + " edges");
  return g;
}

inline std::string format_graph(const Graph& g) {
  std::ostringstream os;
  os << "graph " << g.n << " " << g.edges.size() << "\n";
  for (auto [u, v] : g.edges) os << u + 1 << " " << v + 1 << "\n";
  return os.str();
}

inline Graph read_graph_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidArgument("cannot open graph file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_graph(ss.str());
}

/// A built-in name or a graph file path.
inline BaseGraph load_base_graph(const std::string& spec) {
  if (spec == "k4" || spec == "k33" || spec == "petersen") return builtin_graph(spec);
  return {spec, read_graph_file(spec), std::nullopt};
}

}  // namespace symcirc
