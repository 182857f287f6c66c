#pragma once

#include "sqdist/matrix.hpp"
#include "sqdist/rational.hpp"
#include "sqdist/tree.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace sqdist {

/// Oriented vertex-edge incidence matrix: +1 at the tail of each edge, -1 at its head.
inline RationalMatrix build_incidence(const WeightedTree& t) {
    RationalMatrix q(t.vertex_count(), t.edge_count());
    for (std::size_t k = 0; k < t.edge_count(); ++k) {
        q(t.edge(k).tail - 1, k) = 1;
        q(t.edge(k).head - 1, k) = -1;
    }
    return q;
}

/// Diagonal matrix of edge weights, in edge order.
inline RationalMatrix build_weight_diagonal(const WeightedTree& t) {
    RationalMatrix f(t.edge_count(), t.edge_count());
    for (std::size_t k = 0; k < t.edge_count(); ++k) f(k, k) = t.edge(k).weight;
    return f;
}

/// Edge orientation matrix: +1 for similarly oriented edge pairs, -1 otherwise, unit diagonal.
inline RationalMatrix build_edge_orientation(const WeightedTree& t) {
    const auto m = t.edge_count();
    const auto hops = hop_distances(t);
    RationalMatrix h(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        h(i, i) = 1;
        for (std::size_t j = i + 1; j < m; ++j) {
            const Rational s = detail::orientation_from(hops, t, i, j) == Orientation::Similar ? 1 : -1;
            h(i, j) = s;
            h(j, i) = s;
        }
    }
    return h;
}

/// Weighted Laplacian: -1/w on adjacent pairs, diagonal chosen for zero row sums.
inline RationalMatrix build_laplacian(const WeightedTree& t) {
    RationalMatrix l(t.vertex_count(), t.vertex_count());
    for (const auto& e : t.edges()) {
        const Rational c = e.weight.reciprocal();
        const auto u = e.tail - 1, v = e.head - 1;
        l(u, v) -= c;
        l(v, u) -= c;
        l(u, u) += c;
        l(v, v) += c;
    }
    return l;
}

struct TreeMatrixBundle {
    RationalMatrix D;          ///< distance matrix, n x n
    RationalMatrix Delta;      ///< squared distance matrix D o D
    RationalMatrix L;          ///< Laplacian
    RationalMatrix Q;          ///< incidence, n x (n-1)
    RationalMatrix F;          ///< diag(w), (n-1) x (n-1)
    RationalMatrix H;          ///< edge orientation, (n-1) x (n-1)
    RationalMatrix tau_tilde;  ///< diag(tau)
    std::optional<RationalMatrix> tau_hat;  ///< diag(1/tau); absent when some vertex has degree 2
    RationalMatrix tau;        ///< column vector tau
    RationalMatrix delta_hat;  ///< column vector of weighted degrees
};

inline TreeMatrixBundle build_bundle(const WeightedTree& t) {
    const auto deg = degree_data(t);
    const auto tau = deg.tau_rational();

    TreeMatrixBundle b;
    b.D = distances(t);
    b.Delta = b.D.hadamard(b.D);
    b.L = build_laplacian(t);
    b.Q = build_incidence(t);
    b.F = build_weight_diagonal(t);
    b.H = build_edge_orientation(t);
    b.tau_tilde = RationalMatrix::diagonal(tau);
    b.tau = RationalMatrix::column(tau);
    b.delta_hat = RationalMatrix::column(deg.delta_hat);

    bool invertible = true;
    std::vector<Rational> inv_tau;
    for (const auto& x : tau) {
        if (x.is_zero()) {
            invertible = false;
            break;
        }
        inv_tau.push_back(x.reciprocal());
    }
    if (invertible) b.tau_hat = RationalMatrix::diagonal(inv_tau);
    return b;
}

}  // namespace sqdist
