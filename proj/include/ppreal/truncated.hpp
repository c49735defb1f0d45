#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ppreal/lattice.hpp"
#include "ppreal/pair_function.hpp"

namespace ppr {

// Enumerations are exact and cached per n; n is capped at 6 throughout.
constexpr int kMaxTruncationOrder = 6;

namespace detail {

inline void require_small_order(int n) {
  if (n < 1 || n > kMaxTruncationOrder)
    throw std::domain_error("order must lie in 1..6");
}

}  // namespace detail

/// All partitions of {0,...,n-1}; each partition is a list of blocks, each
/// block an index bitmask.  Cached per n.
inline const std::vector<std::vector<std::uint32_t>>& set_partitions(int n) {
  detail::require_small_order(n);
  static std::vector<std::vector<std::vector<std::uint32_t>>> cache(kMaxTruncationOrder + 1);
  auto& out = cache[n];
  if (!out.empty()) return out;
  // Recursively peel the block containing the lowest remaining element.
  std::vector<std::uint32_t> current;
  auto rec = [&](auto&& self, std::uint32_t remaining) -> void {
    if (remaining == 0) {
      out.push_back(current);
      return;
    }
    std::uint32_t low = remaining & (~remaining + 1);
    std::uint32_t rest = remaining & ~low;
    // every subset of rest, joined with the lowest element, forms a block
    for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
      current.push_back(low | sub);
      self(self, rest & ~sub);
      current.pop_back();
      if (sub == 0) break;
    }
  };
  rec(rec, (std::uint32_t{1} << n) - 1);
  return out;
}

/// Edge list representation of a graph on labeled vertices.
using EdgeList = std::vector<std::pair<int, int>>;

namespace detail {

inline bool edges_connect(const EdgeList& edges, int n) {
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = n;
  for (auto [a, b] : edges) {
    int ra = find(a), rb = find(b);
    if (ra != rb) {
      parent[ra] = rb;
      --components;
    }
  }
  return components == 1;
}

}  // namespace detail

/// All connected subgraphs of the complete graph on n vertices, as edge
/// lists.  Cached per n.
inline const std::vector<EdgeList>& connected_graphs(int n) {
  detail::require_small_order(n);
  static std::vector<std::vector<EdgeList>> cache(kMaxTruncationOrder + 1);
  auto& out = cache[n];
  if (!out.empty()) return out;
  EdgeList all_edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) all_edges.emplace_back(i, j);
  int m = static_cast<int>(all_edges.size());
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
    EdgeList e;
    for (int k = 0; k < m; ++k)
      if (mask & (std::uint32_t{1} << k)) e.push_back(all_edges[k]);
    if (detail::edges_connect(e, n)) out.push_back(std::move(e));
  }
  return out;
}

/// All labeled trees on n vertices via Prufer sequences (n^{n-2} of them).
/// Cached per n.
inline const std::vector<EdgeList>& labeled_trees(int n) {
  detail::require_small_order(n);
  static std::vector<std::vector<EdgeList>> cache(kMaxTruncationOrder + 1);
  auto& out = cache[n];
  if (!out.empty()) return out;
  if (n == 1) {
    out.push_back({});
    return out;
  }
  if (n == 2) {
    out.push_back({{0, 1}});
    return out;
  }
  std::vector<int> prufer(n - 2, 0);
  for (;;) {
    // decode
    std::vector<int> degree(n, 1);
    for (int v : prufer) ++degree[v];
    EdgeList edges;
    std::vector<bool> used(n, false);
    for (int v : prufer) {
      for (int leaf = 0; leaf < n; ++leaf) {
        if (degree[leaf] == 1 && !used[leaf]) {
          edges.emplace_back(leaf, v);
          used[leaf] = true;
          --degree[v];
          break;
        }
      }
    }
    int a = -1, b = -1;
    for (int v = 0; v < n; ++v)
      if (degree[v] == 1 && !used[v]) (a < 0 ? a : b) = v;
    edges.emplace_back(a, b);
    out.push_back(std::move(edges));
    // next sequence
    int k = n - 3;
    while (k >= 0 && prufer[k] == n - 1) prufer[k--] = 0;
    if (k < 0) break;
    ++prufer[k];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Truncated (Ursell) correlations.  Tables are dense arrays indexed by site
// subset mask; entries with popcount outside 1..max_order are ignored.

/// u_1 = rho_1; u_n(S) = rho_n(S) - sum over nontrivial partitions of
/// products of lower u's (Mobius relation with the full correlations).
inline std::vector<double> truncated_from_full(const std::vector<double>& rho, int sites,
                                               int max_order) {
  detail::require_small_order(max_order);
  if (rho.size() != (std::size_t{1} << sites))
    throw std::invalid_argument("table must have 2^sites entries");
  std::vector<double> u(rho.size(), 0.0);
  for (int order = 1; order <= max_order; ++order) {
    const auto& partitions = set_partitions(order);
    for (Config s = 0; s < rho.size(); ++s) {
      if (particle_count(s) != order) continue;
      std::vector<Config> site_bits;
      for (int b = 0; b < sites; ++b)
        if (s & (Config{1} << b)) site_bits.push_back(Config{1} << b);
      double correction = 0;
      for (const auto& part : partitions) {
        if (part.size() < 2) continue;
        double prod = 1;
        for (std::uint32_t block : part) {
          Config bs = 0;
          for (int i = 0; i < order; ++i)
            if (block & (std::uint32_t{1} << i)) bs |= site_bits[i];
          prod *= u[bs];
        }
        correction += prod;
      }
      u[s] = rho[s] - correction;
    }
  }
  return u;
}

/// Inverse of truncated_from_full: rho_n(S) = sum over all partitions of
/// products of u's.
inline std::vector<double> full_from_truncated(const std::vector<double>& u, int sites,
                                               int max_order) {
  detail::require_small_order(max_order);
  if (u.size() != (std::size_t{1} << sites))
    throw std::invalid_argument("table must have 2^sites entries");
  std::vector<double> rho(u.size(), 0.0);
  for (Config s = 0; s < u.size(); ++s) {
    int order = particle_count(s);
    if (order < 1 || order > max_order) continue;
    std::vector<Config> site_bits;
    for (int b = 0; b < sites; ++b)
      if (s & (Config{1} << b)) site_bits.push_back(Config{1} << b);
    double total = 0;
    for (const auto& part : set_partitions(order)) {
      double prod = 1;
      for (std::uint32_t block : part) {
        Config bs = 0;
        for (int i = 0; i < order; ++i)
          if (block & (std::uint32_t{1} << i)) bs |= site_bits[i];
        prod *= u[bs];
      }
      total += prod;
    }
    rho[s] = total;
  }
  return rho;
}

/// Truncated correlation of the pair ansatz: u_n = rho^n sum over connected
/// graphs of prod (g - 1) along edges.
inline double ansatz_truncated(double rho, const PairFunction& g, const LatticeDomain& dom,
                               const std::vector<int>& sites) {
  int n = static_cast<int>(sites.size());
  detail::require_small_order(n);
  if (n == 1) return rho;
  double sum = 0;
  for (const auto& graph : connected_graphs(n)) {
    double prod = 1;
    for (auto [i, j] : graph) prod *= g.g2(dom, sites[i], sites[j]) - 1.0;
    sum += prod;
  }
  return std::pow(rho, n) * sum;
}

/// Penrose estimate: |u_n| <= rho^n b^{n-2} sum over labeled trees of
/// prod |g - 1| along edges.
inline double penrose_tree_bound(double rho, const PairFunction& g, double b,
                                 const LatticeDomain& dom, const std::vector<int>& sites) {
  int n = static_cast<int>(sites.size());
  detail::require_small_order(n);
  if (n == 1) return rho;
  double sum = 0;
  for (const auto& tree : labeled_trees(n)) {
    double prod = 1;
    for (auto [i, j] : tree) prod *= std::abs(g.g2(dom, sites[i], sites[j]) - 1.0);
    sum += prod;
  }
  return std::pow(rho, n) * std::pow(b, n - 2) * sum;
}

/// Summed form of the Penrose estimate: the L1 norm of u_{n+1} is at most
/// rho^{n+1} ((n+1) b)^{n-1} C(g)^n.
inline double penrose_l1_bound(double rho, double b, double c_of_g, int n) {
  return std::pow(rho, n + 1) * std::pow((n + 1) * b, n - 1) * std::pow(c_of_g, n);
}

}  // namespace ppr
