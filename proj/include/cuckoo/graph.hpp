#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "cuckoo/hash_pair.hpp"

namespace cuckoo {

// Bipartite multigraph on [m] + [m] with key-labeled edges. Left node i and
// right node i are distinct vertices; parallel edges are allowed. Immutable
// after construction.
class CuckooGraph {
public:
    struct Edge {
        std::uint64_t left;   // h1 endpoint, in [m)
        std::uint64_t right;  // h2 endpoint, in [m)
        std::uint64_t key;    // edge id, unique within the graph
    };

    // Tag for construction from inputs whose invariants the caller has
    // already established (build_graph uses it on its hot path).
    struct Trusted {};

    explicit CuckooGraph(std::uint64_t m) : m_(m) {}

    CuckooGraph(std::uint64_t m, std::vector<Edge> edges) : m_(m), edges_(std::move(edges)) {
        std::vector<std::uint64_t> ids;
        ids.reserve(edges_.size());
        for (const Edge& e : edges_) {
            if (e.left >= m_ || e.right >= m_)
                throw std::invalid_argument("CuckooGraph: node index out of range");
            ids.push_back(e.key);
        }
        std::sort(ids.begin(), ids.end());
        if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
            throw std::invalid_argument("CuckooGraph: duplicate edge id");
    }

    CuckooGraph(std::uint64_t m, std::vector<Edge> edges, Trusted)
        : m_(m), edges_(std::move(edges)) {}

    std::uint64_t side_size() const noexcept { return m_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    // Node ids in the disjoint union: left i -> i, right i -> m + i.
    std::uint64_t left_node(const Edge& e) const noexcept { return e.left; }
    std::uint64_t right_node(const Edge& e) const noexcept { return m_ + e.right; }

    // Edge-list text dump: "m <m>" header, then one "u v key" line per edge.
    void dump(std::ostream& os) const {
        os << "m " << m_ << '\n';
        for (const Edge& e : edges_) os << e.left << ' ' << e.right << ' ' << e.key << '\n';
    }

private:
    std::uint64_t m_;
    std::vector<Edge> edges_;
};

// One edge (h1(x), h2(x)) per key; duplicate keys are rejected. The hash
// values land in [m) by construction, so the graph is built on the trusted
// path once the keys are known distinct.
inline CuckooGraph build_graph(std::span<const std::uint64_t> keys, const HashPairSource& pair) {
    std::vector<std::uint64_t> sorted(keys.begin(), keys.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("build_graph: duplicate key");
    std::vector<CuckooGraph::Edge> edges;
    edges.reserve(keys.size());
    for (std::uint64_t x : keys) {
        const PairValue h = pair(x);
        edges.push_back({h.h1, h.h2, x});
    }
    return CuckooGraph(pair.m(), std::move(edges), CuckooGraph::Trusted{});
}

struct ComponentStats {
    std::uint64_t nodes = 0;
    std::uint64_t edges = 0;
    std::int64_t gamma = 0;  // edges - nodes + 1
    bool cyclic = false;     // gamma >= 1
};

// Per-component counts over non-isolated nodes plus the global quantities:
// zeta (components with at least one edge), gamma = edges - nodes + zeta,
// zeta_cyc (components with a cycle), and excess = gamma - zeta_cyc.
struct ComponentSummary {
    std::vector<ComponentStats> components;
    std::uint64_t zeta = 0;
    std::uint64_t zeta_cyc = 0;
    std::int64_t gamma = 0;
    std::int64_t excess = 0;
};

namespace detail {

// Union-find over the graph's touched nodes only, so isolated points never
// enter any count. Small node universes get a dense index.
class NodeUnion {
public:
    explicit NodeUnion(std::uint64_t universe) {
        if (universe <= kDenseLimit) dense_.assign(universe, kNone);
    }

    std::size_t index_of(std::uint64_t node) {
        if (!dense_.empty()) {
            std::size_t& slot = dense_[node];
            if (slot == kNone) slot = add();
            return slot;
        }
        auto [it, inserted] = index_.try_emplace(node, parent_.size());
        if (inserted) add();
        return it->second;
    }

    std::size_t find(std::size_t a) {
        while (parent_[a] != a) {
            parent_[a] = parent_[parent_[a]];
            a = parent_[a];
        }
        return a;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
    }

    std::size_t size() const noexcept { return parent_.size(); }

private:
    static constexpr std::uint64_t kDenseLimit = 1u << 23;
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    std::size_t add() {
        const std::size_t idx = parent_.size();
        parent_.push_back(idx);
        rank_.push_back(0);
        return idx;
    }

    std::vector<std::size_t> dense_;
    std::unordered_map<std::uint64_t, std::size_t> index_;
    std::vector<std::size_t> parent_;
    std::vector<std::uint8_t> rank_;
};

}  // namespace detail

inline ComponentSummary components(const CuckooGraph& g) {
    detail::NodeUnion uf(2 * g.side_size());
    std::vector<std::pair<std::size_t, std::size_t>> edge_nodes;
    edge_nodes.reserve(g.edge_count());
    for (const auto& e : g.edges()) {
        const std::size_t a = uf.index_of(g.left_node(e));
        const std::size_t b = uf.index_of(g.right_node(e));
        edge_nodes.emplace_back(a, b);
        uf.unite(a, b);
    }

    constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);
    std::vector<std::size_t> comp_of_root(uf.size(), kUnassigned);
    ComponentSummary out;
    for (std::size_t i = 0; i < uf.size(); ++i) {
        const std::size_t root = uf.find(i);
        if (comp_of_root[root] == kUnassigned) {
            comp_of_root[root] = out.components.size();
            out.components.emplace_back();
        }
        ++out.components[comp_of_root[root]].nodes;
    }
    for (const auto& en : edge_nodes)
        ++out.components[comp_of_root[uf.find(en.first)]].edges;

    out.zeta = out.components.size();
    for (auto& comp : out.components) {
        comp.gamma = static_cast<std::int64_t>(comp.edges) - static_cast<std::int64_t>(comp.nodes) + 1;
        comp.cyclic = comp.gamma >= 1;
        out.gamma += comp.gamma;
        if (comp.cyclic) ++out.zeta_cyc;
    }
    out.excess = out.gamma - static_cast<std::int64_t>(out.zeta_cyc);
    return out;
}

// gamma(G) = edges - nodes + zeta over non-isolated nodes.
inline std::int64_t cyclomatic_number(const CuckooGraph& g) { return components(g).gamma; }

inline std::uint64_t count_cyclic_components(const CuckooGraph& g) {
    return components(g).zeta_cyc;
}

// ex(G) = gamma(G) - zeta_cyc(G): the fewest edge removals leaving every
// component acyclic or unicyclic.
inline std::int64_t excess(const CuckooGraph& g) { return components(g).excess; }

// Maximum leafless subgraph: repeatedly peel edges incident to a degree-1
// node until none remain. The result is order-independent.
inline CuckooGraph two_core(const CuckooGraph& g) {
    const auto& edges = g.edges();
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> incident;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        incident[g.left_node(edges[i])].push_back(i);
        incident[g.right_node(edges[i])].push_back(i);
    }
    std::unordered_map<std::uint64_t, std::size_t> degree;
    degree.reserve(incident.size());
    for (const auto& [node, inc] : incident) degree[node] = inc.size();

    std::vector<bool> removed(edges.size(), false);
    std::deque<std::uint64_t> leaves;
    for (const auto& [node, d] : degree)
        if (d == 1) leaves.push_back(node);

    while (!leaves.empty()) {
        const std::uint64_t node = leaves.front();
        leaves.pop_front();
        if (degree[node] != 1) continue;  // stale entry
        for (std::size_t i : incident[node]) {
            if (removed[i]) continue;
            removed[i] = true;
            for (std::uint64_t end : {g.left_node(edges[i]), g.right_node(edges[i])}) {
                if (--degree[end] == 1) leaves.push_back(end);
            }
            break;
        }
    }

    std::vector<CuckooGraph::Edge> kept;
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (!removed[i]) kept.push_back(edges[i]);
    return CuckooGraph(g.side_size(), std::move(kept));
}

inline bool is_leafless(const CuckooGraph& g) {
    std::unordered_map<std::uint64_t, std::size_t> degree;
    for (const auto& e : g.edges()) {
        ++degree[g.left_node(e)];
        ++degree[g.right_node(e)];
    }
    for (const auto& [node, d] : degree)
        if (d == 1) return false;
    return true;
}

}  // namespace cuckoo
