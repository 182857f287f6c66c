#pragma once

/**
 * @file verify.hpp
 * @brief Random tree generation and the differential identity battery.
 *
 * run_identity_suite() evaluates every closed form and matrix identity on one
 * tree and compares it with the elimination oracles from linalg.hpp. An
 * identity whose hypothesis the tree violates is reported as Skipped with
 * the violated hypothesis as reason; it is never counted as a pass.
 */

#include "sqdist/closed_forms.hpp"
#include "sqdist/errors.hpp"
#include "sqdist/linalg.hpp"
#include "sqdist/matrix.hpp"
#include "sqdist/rational.hpp"
#include "sqdist/tree.hpp"
#include "sqdist/tree_matrices.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sqdist {

// ---------------------------------------------------------------------------
// Generation
// ---------------------------------------------------------------------------

enum class TreeShape { UniformPrufer, Star, Path, Caterpillar };

inline const char* to_string(TreeShape s) {
    switch (s) {
        case TreeShape::UniformPrufer: return "UniformPrufer";
        case TreeShape::Star: return "Star";
        case TreeShape::Path: return "Path";
        case TreeShape::Caterpillar: return "Caterpillar";
    }
    return "?";
}

inline std::vector<Rational> default_weight_pool() {
    std::vector<Rational> pool;
    for (const char* w : {"1", "2", "3", "1/2", "5/2", "3/7"}) {
        pool.push_back(Rational::parse(w));
        pool.push_back(-Rational::parse(w));
    }
    return pool;
}

struct TreeGenSpec {
    std::size_t n = 2;
    std::vector<Rational> weight_pool = default_weight_pool();
    std::uint64_t seed = 0;
    TreeShape shape = TreeShape::UniformPrufer;
};

namespace detail {

using Rng = std::mt19937_64;
using UndirectedEdge = std::pair<std::size_t, std::size_t>;  // 0-based

inline std::size_t uniform_index(Rng& rng, std::size_t bound) {
    return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
}

/// Decodes a uniformly random Pruefer sequence; uniform over labelled trees.
inline std::vector<UndirectedEdge> prufer_edges(std::size_t n, Rng& rng) {
    if (n < 2) return {};
    if (n == 2) return {{0, 1}};
    std::vector<std::size_t> seq(n - 2);
    for (auto& x : seq) x = uniform_index(rng, n);

    std::vector<std::size_t> degree(n, 1);
    for (auto x : seq) ++degree[x];
    std::set<std::size_t> leaves;
    for (std::size_t v = 0; v < n; ++v)
        if (degree[v] == 1) leaves.insert(v);

    std::vector<UndirectedEdge> edges;
    for (auto x : seq) {
        const auto leaf = *leaves.begin();
        leaves.erase(leaves.begin());
        edges.emplace_back(leaf, x);
        if (--degree[x] == 1) leaves.insert(x);
    }
    const auto u = *leaves.begin();
    const auto v = *std::next(leaves.begin());
    edges.emplace_back(u, v);
    return edges;
}

inline std::vector<UndirectedEdge> path_edges(std::size_t n) {
    std::vector<UndirectedEdge> edges;
    for (std::size_t v = 1; v < n; ++v) edges.emplace_back(v - 1, v);
    return edges;
}

inline std::vector<UndirectedEdge> star_edges(std::size_t n) {
    std::vector<UndirectedEdge> edges;
    for (std::size_t v = 1; v < n; ++v) edges.emplace_back(0, v);
    return edges;
}

/**
 * Caterpillar with exactly one degree-2 vertex: a caterpillar on n - 1
 * vertices whose spine vertices all have degree >= 3, with one edge
 * subdivided. Only n = 3 and n >= 5 admit exactly one degree-2 vertex;
 * other n fall back to a path.
 */
inline std::vector<UndirectedEdge> caterpillar_edges(std::size_t n, Rng& rng) {
    if (n < 5) return path_edges(n);
    const std::size_t m = n - 1;
    const std::size_t max_spine = std::max<std::size_t>(1, (m - 2) / 2);
    const std::size_t spine = 1 + uniform_index(rng, max_spine);

    std::vector<std::size_t> legs(spine, 1);
    if (spine == 1) {
        legs[0] = 3;
    } else {
        legs.front() = 2;
        legs.back() = 2;
    }
    std::size_t used = spine + std::accumulate(legs.begin(), legs.end(), std::size_t{0});
    for (; used < m; ++used) ++legs[uniform_index(rng, spine)];

    std::vector<UndirectedEdge> edges = path_edges(spine);
    std::size_t next = spine;
    for (std::size_t s = 0; s < spine; ++s)
        for (std::size_t k = 0; k < legs[s]; ++k) edges.emplace_back(s, next++);

    const auto split = uniform_index(rng, edges.size());
    const auto [a, b] = edges[split];
    edges[split] = {a, next};
    edges.emplace_back(next, b);
    return edges;
}

}  // namespace detail

/// Random tree of the requested shape. Labels, orientations and edge order are
/// randomised; weights are drawn uniformly from the pool. Same parameters, same tree.
inline WeightedTree generate_tree(const TreeGenSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("generate_tree: n must be at least 1");
    if (spec.weight_pool.empty()) throw std::invalid_argument("generate_tree: empty weight pool");
    for (const auto& w : spec.weight_pool)
        if (w.is_zero()) throw std::invalid_argument("generate_tree: weight pool contains 0");

    detail::Rng rng(spec.seed);
    std::vector<detail::UndirectedEdge> shape;
    switch (spec.shape) {
        case TreeShape::UniformPrufer: shape = detail::prufer_edges(spec.n, rng); break;
        case TreeShape::Star: shape = detail::star_edges(spec.n); break;
        case TreeShape::Path: shape = detail::path_edges(spec.n); break;
        case TreeShape::Caterpillar: shape = detail::caterpillar_edges(spec.n, rng); break;
    }

    std::vector<std::size_t> label(spec.n);
    std::iota(label.begin(), label.end(), std::size_t{1});
    if (spec.shape != TreeShape::UniformPrufer) std::shuffle(label.begin(), label.end(), rng);
    std::shuffle(shape.begin(), shape.end(), rng);

    std::vector<OrientedEdge> edges;
    edges.reserve(shape.size());
    for (auto [u, v] : shape) {
        if (std::bernoulli_distribution(0.5)(rng)) std::swap(u, v);
        edges.push_back({label[u], label[v], spec.weight_pool[detail::uniform_index(rng, spec.weight_pool.size())]});
    }
    return build_tree(spec.n, std::move(edges));
}

/// Orientation test on weighted distances. Diagnostic only: it can disagree
/// with orientation_relation() when weights are unequal or signed.
inline Orientation weighted_orientation_relation(const WeightedTree& t, std::size_t i, std::size_t j) {
    if (i == j) throw std::invalid_argument("weighted_orientation_relation needs two distinct edges");
    const auto d = distances(t);
    const auto& a = t.edge(i);
    const auto& b = t.edge(j);
    return d(a.tail - 1, b.tail - 1) == d(a.head - 1, b.head - 1) ? Orientation::Similar
                                                                  : Orientation::Opposite;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

enum class ReportStatus { Pass, Fail, Skipped };

inline const char* to_string(ReportStatus s) {
    switch (s) {
        case ReportStatus::Pass: return "Pass";
        case ReportStatus::Fail: return "Fail";
        case ReportStatus::Skipped: return "Skipped";
    }
    return "?";
}

struct Counterexample {
    RationalMatrix lhs;
    RationalMatrix rhs;
};

struct IdentityReport {
    std::string identity_id;
    WeightedTree tree;
    ReportStatus status = ReportStatus::Pass;
    std::string reason;  ///< violated hypothesis when Skipped, diagnosis when Fail
    std::optional<Counterexample> counterexample;
};

struct IdentityInfo {
    const char* id;
    const char* statement;
};

/// Every identity checked by run_identity_suite, in evaluation order.
inline const std::vector<IdentityInfo>& identity_catalog() {
    static const std::vector<IdentityInfo> catalog = {
        {"laplacian-factorization", "L = Q F^-1 Q' and L 1 = 0"},
        {"incidence-distance", "Q' D Q = -2 F"},
        {"laplacian-distance-laplacian", "L D L = -2 L"},
        {"det-distance", "det D = (-1)^(n-1) 2^(n-2) (sum w)(prod w)"},
        {"inverse-distance", "D^-1 = -L/2 + tau tau' / (2 sum w)"},
        {"distance-tau", "D tau = (sum w) 1"},
        {"squared-distance-tau", "Delta tau = D delta_hat"},
        {"det-orientation", "det H = 2^(n-2) prod tau"},
        {"inverse-orientation", "H^-1 = Q' tau_hat Q / 2"},
        {"incidence-squared-distance", "Q' Delta Q = -2 F H F"},
        {"squared-distance-laplacian", "Delta L = 2 D tau_tilde - 1 delta_hat'"},
        {"distance-laplacian", "D L = -2 I + 1 tau'"},
        {"det-squared-distance-no-degree-two", "det Delta, no degree-2 vertex"},
        {"det-squared-distance-unweighted", "det Delta, unit weights, no degree-2 vertex"},
        {"det-squared-distance-one-degree-two", "det Delta, exactly one degree-2 vertex"},
        {"det-squared-distance-many-degree-two", "det Delta = 0 with two or more degree-2 vertices"},
        {"squared-distance-eta", "Delta eta = beta 1"},
        {"cofactor-sum-squared-distance", "cof Delta = (-1)^(n-1) 2^(2n-3) prod w^2 prod tau"},
        {"ones-inverse-ones", "1' Delta^-1 1 = 4 / beta"},
        {"beta-zero-singular", "beta = 0 implies det Delta = 0"},
        {"inverse-squared-distance", "Delta^-1 = -L tau_hat L / 4 + eta eta' / (4 beta)"},
    };
    return catalog;
}

namespace detail {

inline RationalMatrix scalar_matrix(const Rational& x) { return RationalMatrix(1, 1, x); }

/// Lazily computed elimination oracles for one tree.
class OracleCache {
public:
    explicit OracleCache(const TreeMatrixBundle& b) : b_(b) {}

    const Rational& det_D() { return get(det_D_, [&] { return det(b_.D); }); }
    const Rational& det_H() { return get(det_H_, [&] { return det(b_.H); }); }
    const Rational& det_Delta() { return get(det_Delta_, [&] { return det(b_.Delta); }); }
    const Rational& cof_Delta() { return get(cof_Delta_, [&] { return cofactor_sum(b_.Delta); }); }
    const RationalMatrix& inv_D() { return get(inv_D_, [&] { return inverse(b_.D); }); }
    const RationalMatrix& inv_H() { return get(inv_H_, [&] { return inverse(b_.H); }); }
    const RationalMatrix& inv_Delta() { return get(inv_Delta_, [&] { return inverse(b_.Delta); }); }

private:
    template <typename T, typename F>
    static const T& get(std::optional<T>& slot, F&& compute) {
        if (!slot) slot = compute();
        return *slot;
    }

    const TreeMatrixBundle& b_;
    std::optional<Rational> det_D_, det_H_, det_Delta_, cof_Delta_;
    std::optional<RationalMatrix> inv_D_, inv_H_, inv_Delta_;
};

}  // namespace detail

/// Runs every identity in identity_catalog() on one tree; one report per identity.
inline std::vector<IdentityReport> run_identity_suite(const WeightedTree& t) {
    const auto b = build_bundle(t);
    const auto n = t.vertex_count();
    const auto regime = delta_regime(t);
    const Rational weight_sum = t.weight_sum();
    detail::OracleCache oracle(b);

    std::optional<Rational> beta_value;
    if (regime == DeltaRegime::NoDegreeTwo) beta_value = beta(t);

    const auto ones_col = RationalMatrix::ones(n, 1);
    const auto ident = RationalMatrix::identity(n);

    std::vector<IdentityReport> reports;
    reports.reserve(identity_catalog().size());

    // A check returns nullopt to skip (with reason set), or a (lhs, rhs) pair to compare.
    using Sides = std::optional<std::pair<RationalMatrix, RationalMatrix>>;
    auto record = [&](const char* id, const std::function<Sides(std::string&)>& check) {
        IdentityReport r{id, t, ReportStatus::Pass, {}, {}};
        try {
            std::string reason;
            const Sides sides = check(reason);
            if (!sides) {
                r.status = ReportStatus::Skipped;
                r.reason = reason;
            } else if (sides->first != sides->second) {
                r.status = ReportStatus::Fail;
                r.reason = "lhs != rhs";
                r.counterexample = Counterexample{sides->first, sides->second};
            }
        } catch (const std::exception& e) {
            r.status = ReportStatus::Fail;
            r.reason = std::string("exception: ") + e.what();
        }
        reports.push_back(std::move(r));
    };
    auto scalars = [](const Rational& lhs, const Rational& rhs) -> Sides {
        return std::pair{detail::scalar_matrix(lhs), detail::scalar_matrix(rhs)};
    };
    auto no_degree_two = [&](std::string& reason) {
        if (regime == DeltaRegime::NoDegreeTwo) return true;
        reason = hypothesis::kDegreeTwo + std::string(" present");
        return false;
    };
    auto nonzero_beta = [&](std::string& reason) {
        if (!no_degree_two(reason)) return false;
        if (!beta_value->is_zero()) return true;
        reason = hypothesis::kBetaZero;
        return false;
    };

    record("laplacian-factorization", [&](std::string&) -> Sides {
        const RationalMatrix zero(n, 1);
        if (b.L * ones_col != zero) return std::pair{b.L * ones_col, zero};
        RationalMatrix f_inv = b.F;
        for (std::size_t k = 0; k < f_inv.rows(); ++k) f_inv(k, k) = f_inv(k, k).reciprocal();
        return std::pair{b.L, b.Q * f_inv * b.Q.transpose()};
    });
    record("incidence-distance", [&](std::string&) -> Sides {
        return std::pair{b.Q.transpose() * b.D * b.Q, Rational(-2) * b.F};
    });
    record("laplacian-distance-laplacian", [&](std::string&) -> Sides {
        return std::pair{b.L * b.D * b.L, Rational(-2) * b.L};
    });
    record("det-distance", [&](std::string&) -> Sides { return scalars(oracle.det_D(), det_D_closed(t)); });
    record("inverse-distance", [&](std::string& reason) -> Sides {
        if (weight_sum.is_zero()) {
            reason = hypothesis::kWeightSumZero;
            return std::nullopt;
        }
        return std::pair{oracle.inv_D(), inv_D_closed(t)};
    });
    record("distance-tau", [&](std::string&) -> Sides {
        return std::pair{b.D * b.tau, weight_sum * ones_col};
    });
    record("squared-distance-tau", [&](std::string&) -> Sides {
        return std::pair{b.Delta * b.tau, b.D * b.delta_hat};
    });
    record("det-orientation", [&](std::string&) -> Sides { return scalars(oracle.det_H(), det_H_closed(t)); });
    record("inverse-orientation", [&](std::string& reason) -> Sides {
        if (!no_degree_two(reason)) return std::nullopt;
        return std::pair{oracle.inv_H(), inv_H_closed(t)};
    });
    record("incidence-squared-distance", [&](std::string&) -> Sides {
        return std::pair{b.Q.transpose() * b.Delta * b.Q, Rational(-2) * (b.F * b.H * b.F)};
    });
    record("squared-distance-laplacian", [&](std::string&) -> Sides {
        return std::pair{b.Delta * b.L, Rational(2) * (b.D * b.tau_tilde) - ones_col * b.delta_hat.transpose()};
    });
    record("distance-laplacian", [&](std::string&) -> Sides {
        return std::pair{b.D * b.L, Rational(-2) * ident + ones_col * b.tau.transpose()};
    });
    record("det-squared-distance-no-degree-two", [&](std::string& reason) -> Sides {
        if (!no_degree_two(reason)) return std::nullopt;
        return scalars(oracle.det_Delta(), det_Delta_closed(t).value);
    });
    record("det-squared-distance-unweighted", [&](std::string& reason) -> Sides {
        if (!has_unit_weights(t)) {
            reason = hypothesis::kNonUnitWeight;
            return std::nullopt;
        }
        if (!no_degree_two(reason)) return std::nullopt;
        const Rational closed = det_Delta_closed(t).value;
        const Rational unweighted = det_Delta_unweighted(t);
        if (unweighted != closed) return scalars(unweighted, closed);
        return scalars(oracle.det_Delta(), unweighted);
    });
    record("det-squared-distance-one-degree-two", [&](std::string& reason) -> Sides {
        if (regime != DeltaRegime::OneDegreeTwo) {
            reason = "needs exactly one degree-2 vertex";
            return std::nullopt;
        }
        return scalars(oracle.det_Delta(), det_Delta_closed(t).value);
    });
    record("det-squared-distance-many-degree-two", [&](std::string& reason) -> Sides {
        if (regime != DeltaRegime::ManyDegreeTwo) {
            reason = "needs two or more degree-2 vertices";
            return std::nullopt;
        }
        const auto closed = det_Delta_closed(t);
        if (!closed.value.is_zero()) return scalars(closed.value, Rational(0));
        return scalars(oracle.det_Delta(), Rational(0));
    });
    record("squared-distance-eta", [&](std::string& reason) -> Sides {
        if (!no_degree_two(reason)) return std::nullopt;
        return std::pair{b.Delta * RationalMatrix::column(eta(t)), *beta_value * ones_col};
    });
    record("cofactor-sum-squared-distance", [&](std::string& reason) -> Sides {
        if (!no_degree_two(reason)) return std::nullopt;
        return scalars(oracle.cof_Delta(), cof_Delta_closed(t));
    });
    record("ones-inverse-ones", [&](std::string& reason) -> Sides {
        if (!nonzero_beta(reason)) return std::nullopt;
        return scalars(entry_sum(oracle.inv_Delta()), ones_inv_ones(t));
    });
    record("beta-zero-singular", [&](std::string& reason) -> Sides {
        if (!no_degree_two(reason)) return std::nullopt;
        if (!beta_value->is_zero()) {
            reason = "beta != 0";
            return std::nullopt;
        }
        return scalars(oracle.det_Delta(), Rational(0));
    });
    record("inverse-squared-distance", [&](std::string& reason) -> Sides {
        if (!nonzero_beta(reason)) return std::nullopt;
        return std::pair{oracle.inv_Delta(), inv_Delta_closed(t).matrix};
    });

    return reports;
}

struct SuiteTally {
    std::size_t passed = 0;
    std::size_t skipped = 0;
    std::size_t failed = 0;

    void add(const IdentityReport& r) {
        switch (r.status) {
            case ReportStatus::Pass: ++passed; break;
            case ReportStatus::Skipped: ++skipped; break;
            case ReportStatus::Fail: ++failed; break;
        }
    }
};

// ---------------------------------------------------------------------------
// Polynomial identities over a one-parameter family of trees
// ---------------------------------------------------------------------------

using TreeFamily = std::function<WeightedTree(const Rational&)>;
using TreeQuantity = std::function<Rational(const WeightedTree&)>;

/// Horner evaluation; coefficients in ascending order of degree.
inline Rational evaluate_polynomial(std::span<const Rational> coefficients, const Rational& x) {
    Rational acc;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + *it;
    return acc;
}

inline Rational squared_distance_determinant(const WeightedTree& t) {
    const auto d = distances(t);
    return det(d.hadamard(d));
}

/**
 * Checks quantity(family(x)) == p(x) at every sample point.
 *
 * A point at which the family is not a valid tree (e.g. a zero weight) is
 * evaluated on the polynomial side only and does not count towards the
 * degree bound. At least deg(p) + 1 valid distinct points are required, so a
 * Pass certifies the identity whenever the quantity is itself a polynomial
 * of degree at most deg(p) in the parameter.
 */
inline IdentityReport polynomial_identity_check(std::string identity_id, const TreeFamily& family,
                                                std::span<const Rational> sample_points,
                                                std::span<const Rational> expected_poly,
                                                const TreeQuantity& quantity = squared_distance_determinant) {
    std::size_t degree = expected_poly.size();
    while (degree > 0 && expected_poly[degree - 1].is_zero()) --degree;
    degree = degree == 0 ? 0 : degree - 1;

    std::set<Rational, std::less<>> distinct(sample_points.begin(), sample_points.end());
    if (distinct.size() != sample_points.size())
        throw std::invalid_argument("polynomial_identity_check: sample points must be distinct");

    std::vector<std::pair<Rational, WeightedTree>> valid;
    for (const auto& x : sample_points) {
        try {
            valid.emplace_back(x, family(x));
        } catch (const TreeError&) {
            // polynomial side only
        }
    }
    if (valid.size() < degree + 1)
        throw std::invalid_argument("polynomial_identity_check: need " + std::to_string(degree + 1) +
                                    " valid sample points, got " + std::to_string(valid.size()));

    IdentityReport report{std::move(identity_id), valid.front().second, ReportStatus::Pass, {}, {}};
    for (const auto& [x, tree] : valid) {
        const Rational lhs = quantity(tree);
        const Rational rhs = evaluate_polynomial(expected_poly, x);
        if (lhs != rhs) {
            report.tree = tree;
            report.status = ReportStatus::Fail;
            report.reason = "mismatch at parameter " + x.str();
            report.counterexample = Counterexample{detail::scalar_matrix(lhs), detail::scalar_matrix(rhs)};
            break;
        }
    }
    return report;
}

}  // namespace sqdist
