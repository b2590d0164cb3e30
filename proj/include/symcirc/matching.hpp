#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "symcirc/field.hpp"
#include "symcirc/graph.hpp"

namespace symcirc {

struct MatchingOptions {
  std::uint64_t node_budget = 1'000'000'000ULL;
  unsigned jobs = 1;
};

using MatchingEdges = std::vector<std::pair<std::size_t, std::size_t>>;

namespace detail {

class MatchingSearch {
 public:
  MatchingSearch(const Graph& g, std::atomic<std::uint64_t>& nodes, std::uint64_t budget)
      : g_(g), mate_(g.n, kFree), nodes_(nodes), budget_(budget) {}

  // Matches u-v, then runs the backtracking search below that choice.
  template <typename Leaf>
  void run_branch(std::size_t u, std::size_t v, Leaf& leaf) {
    link(u, v);
    search(leaf);
    unlink(u, v);
  }

  template <typename Leaf>
  void search(Leaf& leaf) {
    if (nodes_.fetch_add(1, std::memory_order_relaxed) >= budget_)
      throw BudgetExceeded("perfect-matching search exceeded " + std::to_string(budget_) + " nodes");
    std::size_t u = 0;
    while (u < g_.n && mate_[u] != kFree) ++u;
    if (u == g_.n) {
      leaf(stack_);
      return;
    }
    for (auto v : g_.adj[u]) {
      if (mate_[v] != kFree) continue;
      link(u, v);
      search(leaf);
      unlink(u, v);
    }
  }

 private:
  static constexpr std::size_t kFree = static_cast<std::size_t>(-1);
  void link(std::size_t u, std::size_t v) {
    mate_[u] = v;
    mate_[v] = u;
    stack_.emplace_back(u, v);
  }
  void unlink(std::size_t u, std::size_t v) {
    mate_[u] = mate_[v] = kFree;
    stack_.pop_back();
  }

  const Graph& g_;
  std::vector<std::size_t> mate_;
  MatchingEdges stack_;
  std::atomic<std::uint64_t>& nodes_;
  std::uint64_t budget_;
};

}  // namespace detail

/// Runs `make_leaf()`-produced visitors over every perfect matching and
/// returns them, one per worker, in worker order. The first pivot's branches
/// are dealt round-robin to workers.
template <typename MakeLeaf>
auto visit_perfect_matchings(const Graph& g, const MatchingOptions& opt, MakeLeaf make_leaf) {
  using Leaf = decltype(make_leaf());
  std::atomic<std::uint64_t> nodes{0};
  if (g.n == 0) {
    std::vector<Leaf> one{make_leaf()};
    MatchingEdges empty;
    one[0](empty);
    return one;
  }
  if (g.n % 2 == 1) return std::vector<Leaf>{make_leaf()};
  const auto& branches = g.adj[0];
  unsigned jobs = std::max(1u, std::min<unsigned>(opt.jobs, static_cast<unsigned>(std::max<std::size_t>(branches.size(), 1))));
  std::vector<Leaf> leaves;
  for (unsigned j = 0; j < jobs; ++j) leaves.push_back(make_leaf());
  auto work = [&](unsigned j) {
    detail::MatchingSearch s(g, nodes, opt.node_budget);
    for (std::size_t b = j; b < branches.size(); b += jobs) s.run_branch(0, branches[b], leaves[j]);
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j)
      pool.emplace_back([&, j] {
        try {
          work(j);
        } catch (...) {
          errors[j] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  return leaves;
}

/// Number of perfect matchings by exhaustive backtracking.
inline BigInt count_perfect_matchings(const Graph& g, const MatchingOptions& opt = {}) {
  struct Counter {
    std::uint64_t n = 0;
    void operator()(const MatchingEdges&) { ++n; }
  };
  BigInt total = 0;
  for (const auto& c : visit_perfect_matchings(g, opt, [] { return Counter{}; })) total += c.n;
  return total;
}

/// All perfect matchings, each as a sorted list of (smaller, larger) pairs.
inline std::vector<MatchingEdges> list_perfect_matchings(const Graph& g, const MatchingOptions& opt = {}) {
  struct Collector {
    std::vector<MatchingEdges> out;
    void operator()(const MatchingEdges& m) {
      MatchingEdges e;
      for (auto [u, v] : m) e.emplace_back(std::min(u, v), std::max(u, v));
      std::sort(e.begin(), e.end());
      out.push_back(std::move(e));
    }
  };
  std::vector<MatchingEdges> all;
  for (auto& c : visit_perfect_matchings(g, opt, [] { return Collector{}; }))
    for (auto& m : c.out) all.push_back(std::move(m));
  std::sort(all.begin(), all.end());
  return all;
}

/// Permanent of the biadjacency matrix by Ryser's formula with Gray-code
/// updates. Independent of the backtracking search.
inline BigInt matching_count_via_permanent(const Graph& g) {
  auto side = bipartition(g);
  if (!side) throw InvalidArgument("matching_count_via_permanent: graph is not bipartite");
  std::vector<std::size_t> left, right_index(g.n, 0);
  std::size_t r = 0;
  for (std::size_t v = 0; v < g.n; ++v) {
    if ((*side)[v] == 0) left.push_back(v);
    else right_index[v] = r++;
  }
  const std::size_t n = left.size();
  if (r != n) return 0;
  if (n == 0) return 1;
  if (n > 30) throw BudgetExceeded("permanent oracle limited to 30x30 biadjacency matrices");
  // Column subsets enumerated in Gray-code order; rowsum[i] = |N(left_i) ∩ S|.
  std::vector<std::vector<std::size_t>> col_rows(n);
  for (std::size_t i = 0; i < n; ++i)
    for (auto v : g.adj[left[i]]) col_rows[right_index[v]].push_back(i);
  // Products fit in 128 bits when the product of row degrees does.
  double log_bound = 0;
  for (auto v : left) log_bound += std::log2(static_cast<double>(std::max<std::size_t>(g.adj[v].size(), 1)));
  const bool narrow = log_bound < 120;
  std::vector<long long> rowsum(n, 0);
  BigInt acc = 0;
  std::uint64_t gray = 0;
  for (std::uint64_t k = 1; k < (std::uint64_t{1} << n); ++k) {
    int bit = __builtin_ctzll(k);
    gray ^= std::uint64_t{1} << bit;
    long long delta = (gray >> bit) & 1 ? 1 : -1;
    for (auto i : col_rows[bit]) rowsum[i] += delta;
    BigInt term;
    if (narrow) {
      unsigned __int128 prod = 1;
      for (auto s : rowsum) prod *= static_cast<unsigned __int128>(s);
      if (prod == 0) continue;
      term = (BigInt(static_cast<std::uint64_t>(prod >> 64)) << 64) + BigInt(static_cast<std::uint64_t>(prod));
    } else {
      term = 1;
      for (auto s : rowsum) term *= s;
      if (term == 0) continue;
    }
    int size = __builtin_popcountll(gray);
    if ((n - size) % 2 == 1) acc -= term;
    else acc += term;
  }
  return acc;
}

}  // namespace symcirc
