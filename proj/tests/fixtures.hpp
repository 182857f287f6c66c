#pragma once

// Shared trees and test-only oracles. Nothing here calls into linalg.hpp.

#include "sqdist/sqdist.hpp"

#include <cstddef>
#include <random>
#include <string>
#include <vector>

namespace sqdist::testing {

inline Rational q(const char* text) { return Rational::parse(text); }

inline WeightedTree edge_tree(const Rational& w) { return build_tree(2, {{1, 2, w}}); }

inline WeightedTree unweighted_path(std::size_t n) {
    std::vector<OrientedEdge> e;
    for (std::size_t v = 1; v < n; ++v) e.push_back({v, v + 1, 1});
    return build_tree(n, e);
}

/// Star with centre 1 and all edges directed out of the centre.
inline WeightedTree unweighted_star(std::size_t leaves) {
    std::vector<OrientedEdge> e;
    for (std::size_t v = 2; v <= leaves + 1; ++v) e.push_back({1, v, 1});
    return build_tree(leaves + 1, e);
}

/// Seven-vertex example with weights 2, -3, 1, 5, -2, 4.
inline WeightedTree seven_vertex_example() {
    return build_tree(7, {{1, 3, 2}, {3, 2, -3}, {3, 4, 1}, {4, 5, 5}, {4, 6, -2}, {4, 7, 4}});
}

inline const char* kSevenVertexLaplacian[7][7] = {
    {"1/2", "0", "-1/2", "0", "0", "0", "0"},
    {"0", "-1/3", "1/3", "0", "0", "0", "0"},
    {"-1/2", "1/3", "7/6", "-1", "0", "0", "0"},
    {"0", "0", "-1", "19/20", "-1/5", "1/2", "-1/4"},
    {"0", "0", "0", "-1/5", "1/5", "0", "0"},
    {"0", "0", "0", "1/2", "0", "-1/2", "0"},
    {"0", "0", "0", "-1/4", "0", "0", "1/4"},
};

/// Star at vertex 1 with leaves 2,3,4,5; the edge to 4 has weight gamma, the rest 1.
inline WeightedTree gamma_star(const Rational& gamma) {
    return build_tree(5, {{1, 2, 1}, {1, 3, 1}, {1, 4, gamma}, {1, 5, 1}});
}

/// Coefficients (ascending) of -32 g^2 (g^2 - 6 g - 3) = 96 g^2 + 192 g^3 - 32 g^4.
inline std::vector<Rational> gamma_star_det_poly() { return {0, 0, 96, 192, -32}; }

/// (g^2 - 6 g - 3) / 2, ascending.
inline std::vector<Rational> gamma_star_beta_poly() { return {q("-3/2"), -3, q("1/2")}; }

// ---------------------------------------------------------------------------
// Independent oracles

/// Laplace expansion along the first row. Exponential; n <= 7 only.
inline Rational cofactor_expansion_det(const RationalMatrix& a) {
    const std::size_t n = a.rows();
    if (n == 0) return Rational(1);
    if (n == 1) return a(0, 0);
    Rational total;
    for (std::size_t c = 0; c < n; ++c) {
        if (a(0, c).is_zero()) continue;
        RationalMatrix minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0, jj = 0; j < n; ++j)
                if (j != c) minor(i - 1, jj++) = a(i, j);
        const Rational term = a(0, c) * cofactor_expansion_det(minor);
        total += (c % 2 == 0) ? term : -term;
    }
    return total;
}

/// Sum of all n^2 signed minors, each computed by expansion.
inline Rational direct_cofactor_sum(const RationalMatrix& a) {
    const std::size_t n = a.rows();
    Rational total;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            RationalMatrix minor(n - 1, n - 1);
            for (std::size_t i = 0, ii = 0; i < n; ++i) {
                if (i == r) continue;
                for (std::size_t j = 0, jj = 0; j < n; ++j)
                    if (j != c) minor(ii, jj++) = a(i, j);
                ++ii;
            }
            const Rational m = cofactor_expansion_det(minor);
            total += ((r + c) % 2 == 0) ? m : -m;
        }
    return total;
}

/// Random square matrix with small rational entries (numerators in [-4,4], denominators in [1,3]).
inline RationalMatrix random_matrix(std::size_t n, std::mt19937_64& rng, double zero_bias = 0.2) {
    std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
    std::bernoulli_distribution zero(zero_bias);
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = zero(rng) ? Rational(0) : Rational(num(rng), den(rng));
    return m;
}

inline RationalMatrix rational_matrix(std::initializer_list<std::initializer_list<const char*>> rows) {
    RationalMatrix m(rows.size(), rows.size() ? rows.begin()->size() : 0);
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (const char* x : row) m(i, j++) = Rational::parse(x);
        ++i;
    }
    return m;
}

/// Random trees over every generator shape, n in [lo, hi].
inline std::vector<WeightedTree> random_trees(std::size_t count, std::size_t lo, std::size_t hi, std::uint64_t seed,
                                              std::vector<Rational> pool = default_weight_pool()) {
    std::mt19937_64 rng(seed);
    const TreeShape shapes[] = {TreeShape::UniformPrufer, TreeShape::UniformPrufer, TreeShape::Star,
                                TreeShape::Path, TreeShape::Caterpillar};
    std::vector<WeightedTree> trees;
    for (std::size_t k = 0; k < count; ++k) {
        TreeGenSpec spec;
        spec.n = std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
        spec.shape = shapes[k % 5];
        spec.seed = rng();
        spec.weight_pool = pool;
        trees.push_back(generate_tree(spec));
    }
    return trees;
}

}  // namespace sqdist::testing
