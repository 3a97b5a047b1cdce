#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "cuckoo/graph.hpp"

namespace cuckoo {

// Exhaustive-search ground truth for small graphs. Both oracles enumerate
// edge subsets in increasing cardinality, so they are independent of the
// component-count formulas they are used to check.

inline constexpr std::size_t kOracleEdgeCap = 20;

namespace detail {

// Calls fn(mask) for every edge subset of size d; fn returns true to stop.
template <typename Fn>
bool for_each_subset_of_size(std::size_t n_edges, std::size_t d, Fn&& fn) {
    std::vector<bool> pick(n_edges, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(d), true);
    do {
        if (fn(pick)) return true;
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return false;
}

inline CuckooGraph drop_edges(const CuckooGraph& g, const std::vector<bool>& drop) {
    std::vector<CuckooGraph::Edge> kept;
    for (std::size_t i = 0; i < g.edges().size(); ++i)
        if (!drop[i]) kept.push_back(g.edges()[i]);
    return CuckooGraph(g.side_size(), std::move(kept));
}

inline bool all_components_at_most_unicyclic(const CuckooGraph& g) {
    for (const auto& comp : components(g).components)
        if (comp.gamma > 1) return false;
    return true;
}

// True iff every edge can be oriented toward one of its endpoints with no
// endpoint receiving two edges; decided by augmenting-path matching between
// edges and nodes.
inline bool orientable(const CuckooGraph& g) {
    const auto& edges = g.edges();
    std::unordered_map<std::uint64_t, std::size_t> node_index;
    std::vector<std::array<std::size_t, 2>> ends(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (int side = 0; side < 2; ++side) {
            const std::uint64_t node = side == 0 ? g.left_node(edges[i]) : g.right_node(edges[i]);
            const auto it = node_index.try_emplace(node, node_index.size()).first;
            ends[i][side] = it->second;
        }
    }
    std::vector<std::ptrdiff_t> owner(node_index.size(), -1);  // node -> matched edge
    std::vector<bool> visited;
    auto try_assign = [&](auto&& self, std::size_t edge) -> bool {
        for (std::size_t node : ends[edge]) {
            if (visited[node]) continue;
            visited[node] = true;
            if (owner[node] < 0 || self(self, static_cast<std::size_t>(owner[node]))) {
                owner[node] = static_cast<std::ptrdiff_t>(edge);
                return true;
            }
        }
        return false;
    };
    for (std::size_t i = 0; i < edges.size(); ++i) {
        visited.assign(node_index.size(), false);
        if (!try_assign(try_assign, i)) return false;
    }
    return true;
}

}  // namespace detail

// Smallest number of edge removals after which every component has gamma <= 1.
inline std::int64_t excess_oracle(const CuckooGraph& g) {
    const std::size_t n = g.edges().size();
    if (n > kOracleEdgeCap) throw std::invalid_argument("excess_oracle: graph too large");
    for (std::size_t d = 0; d <= n; ++d) {
        const bool found = detail::for_each_subset_of_size(n, d, [&](const std::vector<bool>& drop) {
            return detail::all_components_at_most_unicyclic(detail::drop_edges(g, drop));
        });
        if (found) return static_cast<std::int64_t>(d);
    }
    return static_cast<std::int64_t>(n);  // unreachable: dropping all edges always works
}

// True iff some set D of at most `stash_capacity` edges can be removed so the
// rest admits an orientation with in-degree <= 1 everywhere (each key stored
// in one of its two cells, one key per cell).
inline bool feasible_with_stash_oracle(const CuckooGraph& g, std::uint64_t stash_capacity) {
    const std::size_t n = g.edges().size();
    if (n > kOracleEdgeCap)
        throw std::invalid_argument("feasible_with_stash_oracle: graph too large");
    const std::size_t max_d = std::min<std::size_t>(n, stash_capacity);
    for (std::size_t d = 0; d <= max_d; ++d) {
        const bool found = detail::for_each_subset_of_size(n, d, [&](const std::vector<bool>& drop) {
            return detail::orientable(detail::drop_edges(g, drop));
        });
        if (found) return true;
    }
    return false;
}

}  // namespace cuckoo
