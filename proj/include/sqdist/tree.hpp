#pragma once

/**
 * @file tree.hpp
 * @brief Edge-weighted trees with signed nonzero rational weights.
 *
 * Vertices are labelled 1..n at every public interface. Edge order is the
 * input order and fixes the column order of the incidence matrix and the
 * row/column order of the edge-indexed matrices. The (tail, head) order of
 * each edge fixes its orientation.
 */

#include "sqdist/errors.hpp"
#include "sqdist/matrix.hpp"
#include "sqdist/rational.hpp"

#include <cstddef>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace sqdist {

struct OrientedEdge {
    std::size_t tail = 0;  ///< 1-based
    std::size_t head = 0;  ///< 1-based
    Rational weight;

    friend bool operator==(const OrientedEdge&, const OrientedEdge&) = default;
};

class WeightedTree;
WeightedTree build_tree(std::size_t n, std::vector<OrientedEdge> edges);

class WeightedTree {
public:
    struct Neighbor {
        std::size_t vertex;  ///< 0-based
        std::size_t edge;    ///< index into edges()
    };

    std::size_t vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<OrientedEdge>& edges() const noexcept { return edges_; }
    const OrientedEdge& edge(std::size_t index) const { return edges_.at(index); }

    /// Neighbours of a 0-based vertex.
    const std::vector<Neighbor>& neighbors(std::size_t vertex) const { return adjacency_.at(vertex); }
    std::size_t degree(std::size_t vertex) const { return adjacency_.at(vertex).size(); }

    Rational weight_sum() const {
        Rational s;
        for (const auto& e : edges_) s += e.weight;
        return s;
    }
    Rational weight_product() const {
        Rational p(1);
        for (const auto& e : edges_) p *= e.weight;
        return p;
    }

    /// Returns a copy with edge `index` stored in the opposite direction.
    WeightedTree with_reversed_edge(std::size_t index) const {
        auto edges = edges_;
        std::swap(edges.at(index).tail, edges.at(index).head);
        return build_tree(n_, std::move(edges));
    }

    friend bool operator==(const WeightedTree& a, const WeightedTree& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    friend WeightedTree build_tree(std::size_t n, std::vector<OrientedEdge> edges);
    WeightedTree() = default;

    std::size_t n_ = 0;
    std::vector<OrientedEdge> edges_;
    std::vector<std::vector<Neighbor>> adjacency_;
};

/// Validates an edge list and returns the tree, or throws TreeError.
inline WeightedTree build_tree(std::size_t n, std::vector<OrientedEdge> edges) {
    if (n == 0) throw TreeError(TreeErrorKind::WrongEdgeCount, "a tree needs at least one vertex");
    if (edges.size() != n - 1)
        throw TreeError(TreeErrorKind::WrongEdgeCount,
                        "a tree on " + std::to_string(n) + " vertices needs " +
                            std::to_string(n - 1) + " edges, got " + std::to_string(edges.size()));

    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const auto& e = edges[k];
        const std::string where = "edge " + std::to_string(k + 1) + " (" + std::to_string(e.tail) +
                                  "," + std::to_string(e.head) + ")";
        if (e.tail < 1 || e.tail > n || e.head < 1 || e.head > n)
            throw TreeError(TreeErrorKind::VertexOutOfRange,
                            where + ": vertex id outside 1.." + std::to_string(n), k);
        if (e.tail == e.head) throw TreeError(TreeErrorKind::SelfLoop, where + ": self-loop", k);
        if (e.weight.is_zero())
            throw TreeError(TreeErrorKind::ZeroWeight, where + ": weight must be nonzero", k);
        if (!seen.emplace(std::min(e.tail, e.head), std::max(e.tail, e.head)).second)
            throw TreeError(TreeErrorKind::DuplicateEdge, where + ": duplicate edge", k);
    }

    // n - 1 edges and no cycle <=> tree; detect the first cycle-closing edge with union-find.
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const auto a = find(edges[k].tail - 1);
        const auto b = find(edges[k].head - 1);
        if (a == b)
            throw TreeError(TreeErrorKind::NotATree,
                            "edge " + std::to_string(k + 1) + " closes a cycle; graph is not a tree", k);
        parent[a] = b;
    }

    WeightedTree t;
    t.n_ = n;
    t.adjacency_.resize(n);
    for (std::size_t k = 0; k < edges.size(); ++k) {
        t.adjacency_[edges[k].tail - 1].push_back({edges[k].head - 1, k});
        t.adjacency_[edges[k].head - 1].push_back({edges[k].tail - 1, k});
    }
    t.edges_ = std::move(edges);
    return t;
}

namespace detail {

/// Single-source path sums over the tree, with `length(edge)` giving each edge's contribution.
template <typename T, typename Length>
std::vector<T> path_sums_from(const WeightedTree& t, std::size_t root, Length length) {
    std::vector<T> dist(t.vertex_count());
    std::vector<bool> visited(t.vertex_count(), false);
    std::vector<std::size_t> stack{root};
    visited[root] = true;
    while (!stack.empty()) {
        const auto v = stack.back();
        stack.pop_back();
        for (const auto& nb : t.neighbors(v)) {
            if (visited[nb.vertex]) continue;
            visited[nb.vertex] = true;
            dist[nb.vertex] = dist[v] + length(nb.edge);
            stack.push_back(nb.vertex);
        }
    }
    return dist;
}

}  // namespace detail

/// Weighted distance matrix: entry (i,j) is the sum of weights along the i-j path.
inline RationalMatrix distances(const WeightedTree& t) {
    const auto n = t.vertex_count();
    RationalMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = detail::path_sums_from<Rational>(
            t, i, [&](std::size_t e) -> const Rational& { return t.edge(e).weight; });
        for (std::size_t j = 0; j < n; ++j) d(i, j) = row[j];
    }
    return d;
}

/// Edge-count distances of the underlying unweighted tree.
inline RationalMatrix hop_distances(const WeightedTree& t) {
    const auto n = t.vertex_count();
    RationalMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = detail::path_sums_from<long>(t, i, [](std::size_t) { return 1L; });
        for (std::size_t j = 0; j < n; ++j) d(i, j) = row[j];
    }
    return d;
}

struct DegreeData {
    std::vector<long> delta;          ///< vertex degrees
    std::vector<long> tau;            ///< 2 - degree
    std::vector<Rational> delta_hat;  ///< weighted degrees

    std::vector<Rational> tau_rational() const { return {tau.begin(), tau.end()}; }
};

inline DegreeData degree_data(const WeightedTree& t) {
    const auto n = t.vertex_count();
    DegreeData d{std::vector<long>(n), std::vector<long>(n), std::vector<Rational>(n)};
    for (std::size_t v = 0; v < n; ++v) {
        d.delta[v] = static_cast<long>(t.degree(v));
        d.tau[v] = 2 - d.delta[v];
        for (const auto& nb : t.neighbors(v)) d.delta_hat[v] += t.edge(nb.edge).weight;
    }
    return d;
}

/// Number of vertices of degree two.
inline std::size_t degree_two_count(const WeightedTree& t) {
    std::size_t c = 0;
    for (std::size_t v = 0; v < t.vertex_count(); ++v) c += t.degree(v) == 2;
    return c;
}

inline bool has_unit_weights(const WeightedTree& t) {
    for (const auto& e : t.edges())
        if (e.weight != Rational(1)) return false;
    return true;
}

enum class Orientation { Similar, Opposite };

inline const char* to_string(Orientation o) { return o == Orientation::Similar ? "Similar" : "Opposite"; }

namespace detail {

inline Orientation orientation_from(const RationalMatrix& hops, const WeightedTree& t, std::size_t i,
                                    std::size_t j) {
    const auto& a = t.edge(i);
    const auto& b = t.edge(j);
    return hops(a.tail - 1, b.tail - 1) == hops(a.head - 1, b.head - 1) ? Orientation::Similar
                                                                        : Orientation::Opposite;
}

}  // namespace detail

/**
 * Relation between two distinct directed edges e_i = (p,q), e_j = (r,s).
 *
 * Similar iff hop(p,r) = hop(q,s) in the underlying unweighted tree. Hop
 * counts are used instead of weighted distances because signed or unequal
 * weights can make the weighted test coincide by accident.
 */
inline Orientation orientation_relation(const WeightedTree& t, std::size_t i, std::size_t j) {
    if (i >= t.edge_count() || j >= t.edge_count())
        throw std::out_of_range("edge index out of range");
    if (i == j) throw std::invalid_argument("orientation_relation needs two distinct edges");
    return detail::orientation_from(hop_distances(t), t, i, j);
}

}  // namespace sqdist
