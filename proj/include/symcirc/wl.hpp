#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <thread>
#include <vector>

#include "symcirc/graph.hpp"

namespace symcirc {

// k-dimensional Weisfeiler-Leman in the folklore formulation: a k-tuple t is
// refined by the multiset, over all vertices w, of the colours of the k
// tuples t[w/i] together with the atomic relation of w to each entry of t.
// For k = 1 this is colour refinement; for k = 2 it matches the 3-variable
// counting logic. Both graphs are refined with one shared palette, so colour
// ids are comparable across them.

inline constexpr std::uint64_t kWLTupleBudget = 1'000'000;

struct WLResult {
  bool equivalent = false;
  std::size_t rounds = 0;  // refinement rounds until the partition was stable
  std::size_t classes = 0;  // colour classes of the stable joint colouring
  std::optional<std::size_t> distinguishing_round;  // 0 = initial colouring
  std::vector<std::size_t> classes_per_round;
};

namespace detail {

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

struct WLGraphState {
  const Graph* g;
  std::uint64_t tuples;
  std::vector<std::uint32_t> colour;
};

// Entries of tuple index t (base n, position 0 least significant).
inline void decode(std::uint64_t t, std::size_t n, unsigned k, std::size_t* out) {
  for (unsigned i = 0; i < k; ++i) {
    out[i] = t % n;
    t /= n;
  }
}

inline std::uint32_t atomic_bits(const Graph& g, std::size_t a, std::size_t b) {
  return (a == b ? 1u : 0u) | (a != b && g.has_edge(a, b) ? 2u : 0u);
}

inline std::vector<std::uint32_t> initial_signature(const Graph& g, const std::size_t* v, unsigned k) {
  std::vector<std::uint32_t> s;
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = i + 1; j < k; ++j) s.push_back(atomic_bits(g, v[i], v[j]));
  return s;
}

inline std::vector<std::uint32_t> refined_signature(const WLGraphState& st, std::uint64_t t, unsigned k) {
  const Graph& g = *st.g;
  const std::size_t n = g.n;
  std::size_t v[3];
  decode(t, n, k, v);
  std::uint64_t place[3];
  for (unsigned i = 0; i < k; ++i) place[i] = ipow(n, i);
  std::vector<std::vector<std::uint32_t>> items(n);
  for (std::size_t w = 0; w < n; ++w) {
    auto& it = items[w];
    std::uint32_t rel = 0;
    for (unsigned i = 0; i < k; ++i) {
      std::uint64_t sub = t - v[i] * place[i] + w * place[i];
      it.push_back(st.colour[sub]);
      rel = rel * 4 + atomic_bits(g, w, v[i]);
    }
    it.push_back(rel);
  }
  std::sort(items.begin(), items.end());
  std::vector<std::uint32_t> s{st.colour[t]};
  for (const auto& it : items) s.insert(s.end(), it.begin(), it.end());
  return s;
}

// Assigns dense ids to signatures in sorted order, so ids depend only on the
// signatures and not on vertex numbering.
inline std::size_t canonicalize(std::vector<WLGraphState>& states,
                                std::vector<std::vector<std::vector<std::uint32_t>>>& sigs) {
  std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
  for (const auto& per : sigs)
    for (const auto& s : per) ids.emplace(s, 0);
  std::uint32_t next = 0;
  for (auto& [s, id] : ids) id = next++;
  for (std::size_t gi = 0; gi < states.size(); ++gi)
    for (std::uint64_t t = 0; t < states[gi].tuples; ++t) states[gi].colour[t] = ids.at(sigs[gi][t]);
  return ids.size();
}

inline std::vector<std::size_t> histogram(const WLGraphState& st, std::size_t classes) {
  std::vector<std::size_t> h(classes, 0);
  for (auto c : st.colour) ++h[c];
  return h;
}

}  // namespace detail

inline WLResult wl_equivalent(const Graph& g1, const Graph& g2, unsigned k, unsigned jobs = 1) {
  if (k < 1 || k > 3) throw InvalidArgument("WL dimension must be 1, 2 or 3");
  std::vector<detail::WLGraphState> st{{&g1, detail::ipow(g1.n, k), {}}, {&g2, detail::ipow(g2.n, k), {}}};
  if (st[0].tuples + st[1].tuples > kWLTupleBudget)
    throw BudgetExceeded(std::to_string(k) + "-WL needs " + std::to_string(st[0].tuples + st[1].tuples) +
                         " tuples, budget is " + std::to_string(kWLTupleBudget));
  std::vector<std::vector<std::vector<std::uint32_t>>> sigs(2);
  for (std::size_t gi = 0; gi < 2; ++gi) {
    sigs[gi].resize(st[gi].tuples);
    st[gi].colour.resize(st[gi].tuples);
    std::size_t v[3];
    for (std::uint64_t t = 0; t < st[gi].tuples; ++t) {
      detail::decode(t, st[gi].g->n, k, v);
      sigs[gi][t] = detail::initial_signature(*st[gi].g, v, k);
    }
  }
  WLResult r;
  std::size_t classes = detail::canonicalize(st, sigs);
  r.classes_per_round.push_back(classes);
  auto differ = [&](std::size_t c) { return detail::histogram(st[0], c) != detail::histogram(st[1], c); };
  if (differ(classes)) r.distinguishing_round = 0;
  jobs = std::max(1u, jobs);
  while (true) {
    for (std::size_t gi = 0; gi < 2; ++gi) {
      auto fill = [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t t = lo; t < hi; ++t) sigs[gi][t] = detail::refined_signature(st[gi], t, k);
      };
      const std::uint64_t total = st[gi].tuples;
      if (jobs == 1 || total < 1024) {
        fill(0, total);
      } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(fill, total * j / jobs, total * (j + 1) / jobs);
        for (auto& th : pool) th.join();
      }
    }
    std::size_t next = detail::canonicalize(st, sigs);
    ++r.rounds;
    r.classes_per_round.push_back(next);
    if (!r.distinguishing_round && differ(next)) r.distinguishing_round = r.rounds;
    if (next == classes) break;
    classes = next;
  }
  r.classes = classes;
  r.equivalent = !r.distinguishing_round;
  return r;
}

inline std::optional<std::size_t> wl_distinguishing_round(const Graph& g1, const Graph& g2, unsigned k) {
  return wl_equivalent(g1, g2, k).distinguishing_round;
}

}  // namespace symcirc
