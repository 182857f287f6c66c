#pragma once

/**
 * @file closed_forms.hpp
 * @brief Closed-form determinants and inverses of the matrices of a weighted tree.
 *
 * Everything here is evaluated from tree data (weights, degrees, Laplacian)
 * without eliminating the target matrix; linalg.hpp provides the independent
 * values these are checked against.
 *
 * Hypothesis gates throw HypothesisError with one of the names below.
 */

#include "sqdist/errors.hpp"
#include "sqdist/matrix.hpp"
#include "sqdist/rational.hpp"
#include "sqdist/tree.hpp"
#include "sqdist/tree_matrices.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sqdist {

namespace hypothesis {
inline constexpr const char* kDegreeTwo = "degree-2 vertex";
inline constexpr const char* kWeightSumZero = "sum of weights = 0";
inline constexpr const char* kBetaZero = "beta = 0";
inline constexpr const char* kNonUnitWeight = "non-unit weight";
}  // namespace hypothesis

enum class DeltaRegime { NoDegreeTwo, OneDegreeTwo, ManyDegreeTwo };

inline const char* to_string(DeltaRegime r) {
    switch (r) {
        case DeltaRegime::NoDegreeTwo: return "NoDegreeTwo";
        case DeltaRegime::OneDegreeTwo: return "OneDegreeTwo";
        case DeltaRegime::ManyDegreeTwo: return "ManyDegreeTwo";
    }
    return "?";
}

inline DeltaRegime delta_regime(const WeightedTree& t) {
    switch (degree_two_count(t)) {
        case 0: return DeltaRegime::NoDegreeTwo;
        case 1: return DeltaRegime::OneDegreeTwo;
        default: return DeltaRegime::ManyDegreeTwo;
    }
}

struct DetDeltaResult {
    Rational value;
    DeltaRegime regime = DeltaRegime::NoDegreeTwo;
    std::optional<Rational> beta;  ///< present in the NoDegreeTwo regime
};

struct InverseCertificate {
    RationalMatrix matrix;
    std::vector<Rational> eta;
    Rational beta;
};

namespace detail {

inline long signed_one(long exponent) { return exponent % 2 == 0 ? 1 : -1; }

inline Rational squared_weight_product(const WeightedTree& t) {
    const Rational p = t.weight_product();
    return p * p;
}

inline Rational tau_product(const DegreeData& d) {
    Rational p(1);
    for (long x : d.tau) p *= x;
    return p;
}

inline void require_no_degree_two(const WeightedTree& t, const char* what) {
    if (degree_two_count(t) != 0)
        throw HypothesisError(hypothesis::kDegreeTwo,
                              std::string(what) + " requires a tree with no degree-2 vertex");
}

}  // namespace detail

/// det D = (-1)^{n-1} 2^{n-2} (sum w)(prod w). For n = 1 this is 0, the determinant of [0].
inline Rational det_D_closed(const WeightedTree& t) {
    const long n = static_cast<long>(t.vertex_count());
    return Rational(detail::signed_one(n - 1)) * pow2(n - 2) * t.weight_sum() * t.weight_product();
}

/// D^{-1} = -L/2 + tau tau' / (2 sum w); requires sum w != 0.
inline RationalMatrix inv_D_closed(const WeightedTree& t) {
    const Rational sum = t.weight_sum();
    if (sum.is_zero())
        throw HypothesisError(hypothesis::kWeightSumZero,
                              "sum of edge weights is 0, so the distance matrix is singular");
    const auto tau = RationalMatrix::column(degree_data(t).tau_rational());
    return Rational(-1, 2) * build_laplacian(t) + (Rational(1) / (2 * sum)) * (tau * tau.transpose());
}

/// det H = 2^{n-2} prod tau.
inline Rational det_H_closed(const WeightedTree& t) {
    const long n = static_cast<long>(t.vertex_count());
    return pow2(n - 2) * detail::tau_product(degree_data(t));
}

/// H^{-1} = Q' tau_hat Q / 2; requires no vertex of degree 2.
inline RationalMatrix inv_H_closed(const WeightedTree& t) {
    detail::require_no_degree_two(t, "edge orientation inverse");
    const auto deg = degree_data(t);
    std::vector<Rational> inv_tau;
    for (long x : deg.tau) inv_tau.push_back(Rational(1) / x);
    const auto q = build_incidence(t);
    return Rational(1, 2) * (q.transpose() * RationalMatrix::diagonal(inv_tau) * q);
}

/// beta = sum delta_hat_i^2 / tau_i; requires no vertex of degree 2.
inline Rational beta(const WeightedTree& t) {
    detail::require_no_degree_two(t, "beta");
    const auto deg = degree_data(t);
    Rational b;
    for (std::size_t i = 0; i < deg.tau.size(); ++i)
        b += deg.delta_hat[i] * deg.delta_hat[i] / deg.tau[i];
    return b;
}

/**
 * Determinant of the squared distance matrix, dispatched on the number of
 * degree-2 vertices:
 *   none:  (-1)^{n-1} (4^{n-2}/2) prod(tau) prod(w^2) beta
 *   one:   (-1)^{n-1} 2^{2n-5} (w_i + w_j)^2 prod(w^2) prod_{k != q} tau_k,
 *          with e_i, e_j the two edges at the degree-2 vertex q
 *   more:  0
 */
inline DetDeltaResult det_Delta_closed(const WeightedTree& t) {
    const long n = static_cast<long>(t.vertex_count());
    const auto deg = degree_data(t);
    const Rational sign(detail::signed_one(n - 1));
    DetDeltaResult r;
    r.regime = delta_regime(t);

    switch (r.regime) {
        case DeltaRegime::NoDegreeTwo: {
            const Rational b = beta(t);
            r.beta = b;
            r.value = sign * pow2(2 * (n - 2) - 1) * detail::tau_product(deg) *
                      detail::squared_weight_product(t) * b;
            break;
        }
        case DeltaRegime::OneDegreeTwo: {
            std::size_t q = 0;
            while (t.degree(q) != 2) ++q;
            const auto& nbs = t.neighbors(q);
            const std::size_t ei = std::min(nbs[0].edge, nbs[1].edge);
            const std::size_t ej = std::max(nbs[0].edge, nbs[1].edge);
            const Rational pair = t.edge(ei).weight + t.edge(ej).weight;
            Rational others(1);
            for (std::size_t k = 0; k < deg.tau.size(); ++k)
                if (k != q) others *= deg.tau[k];
            r.value = sign * pow2(2 * n - 5) * pair * pair * detail::squared_weight_product(t) * others;
            break;
        }
        case DeltaRegime::ManyDegreeTwo:
            r.value = Rational(0);
            break;
    }
    return r;
}

/// Unit-weight form (-1)^n 4^{n-2} (2n - 1 - 2 sum 1/tau) prod tau; no degree-2 vertex allowed.
inline Rational det_Delta_unweighted(const WeightedTree& t) {
    if (!has_unit_weights(t))
        throw HypothesisError(hypothesis::kNonUnitWeight, "unweighted formula requires all weights = 1");
    detail::require_no_degree_two(t, "unweighted squared-distance determinant");
    const long n = static_cast<long>(t.vertex_count());
    const auto deg = degree_data(t);
    Rational inv_sum;
    for (long x : deg.tau) inv_sum += Rational(1) / x;
    return Rational(detail::signed_one(n)) * pow2(2 * (n - 2)) * (Rational(2 * n - 1) - 2 * inv_sum) *
           detail::tau_product(deg);
}

/// cof Delta = (-1)^{n-1} 2^{2n-3} prod(w^2) prod(tau); no degree-2 vertex allowed.
inline Rational cof_Delta_closed(const WeightedTree& t) {
    detail::require_no_degree_two(t, "cofactor sum formula");
    const long n = static_cast<long>(t.vertex_count());
    return Rational(detail::signed_one(n - 1)) * pow2(2 * n - 3) * detail::squared_weight_product(t) *
           detail::tau_product(degree_data(t));
}

/// 1' Delta^{-1} 1 = 4 / beta.
inline Rational ones_inv_ones(const WeightedTree& t) {
    const Rational b = beta(t);
    if (b.is_zero())
        throw HypothesisError(hypothesis::kBetaZero, "beta = 0, so the squared distance matrix is singular");
    return Rational(4) / b;
}

/// eta = 2 tau - L tau_hat delta_hat; requires no vertex of degree 2.
inline std::vector<Rational> eta(const WeightedTree& t) {
    detail::require_no_degree_two(t, "eta");
    const auto deg = degree_data(t);
    std::vector<Rational> scaled(deg.tau.size());
    for (std::size_t i = 0; i < scaled.size(); ++i) scaled[i] = deg.delta_hat[i] / deg.tau[i];
    const auto l_term = build_laplacian(t) * RationalMatrix::column(scaled);
    std::vector<Rational> e(scaled.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = Rational(2 * deg.tau[i]) - l_term(i, 0);
    return e;
}

/**
 * Delta^{-1} = -L tau_hat L / 4 + eta eta' / (4 beta).
 *
 * The returned certificate has been checked: Delta * matrix = I and
 * Delta * eta = beta * 1. A failed check throws std::logic_error.
 */
inline InverseCertificate inv_Delta_closed(const WeightedTree& t) {
    detail::require_no_degree_two(t, "squared distance inverse");
    const Rational b = beta(t);
    if (b.is_zero())
        throw HypothesisError(hypothesis::kBetaZero, "beta = 0, so the squared distance matrix is singular");

    const auto deg = degree_data(t);
    std::vector<Rational> inv_tau;
    for (long x : deg.tau) inv_tau.push_back(Rational(1) / x);
    const auto l = build_laplacian(t);
    const auto e = eta(t);
    const auto ecol = RationalMatrix::column(e);

    InverseCertificate cert;
    cert.matrix = Rational(-1, 4) * (l * RationalMatrix::diagonal(inv_tau) * l) +
                  (Rational(1) / (4 * b)) * (ecol * ecol.transpose());
    cert.eta = e;
    cert.beta = b;

    const auto d = distances(t);
    const auto delta = d.hadamard(d);
    const auto n = t.vertex_count();
    if (delta * cert.matrix != RationalMatrix::identity(n))
        throw std::logic_error("squared distance inverse certificate: Delta * X != I");
    if (delta * ecol != RationalMatrix::ones(n, 1) * b)
        throw std::logic_error("squared distance inverse certificate: Delta * eta != beta * 1");
    return cert;
}

}  // namespace sqdist
