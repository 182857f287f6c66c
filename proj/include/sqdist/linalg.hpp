#pragma once

/**
 * @file linalg.hpp
 * @brief Exact determinant, inverse and cofactor sum for rational matrices.
 *
 * These kernels are the reference oracles for every closed form in the
 * library, so they deliberately share no code with closed_forms.hpp.
 */

#include "sqdist/errors.hpp"
#include "sqdist/matrix.hpp"
#include "sqdist/rational.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <utility>
#include <vector>

namespace sqdist {

/**
 * Determinant by fraction-free (Bareiss) elimination.
 *
 * Each row is first scaled by the lcm of its denominators so elimination
 * runs over integers; the accumulated scale is divided out at the end.
 * Every Bareiss division is exact. The 0x0 determinant is 1.
 */
inline Rational det(const RationalMatrix& a) {
    if (!a.is_square()) throw DimensionError("determinant of non-square " + a.shape() + " matrix");
    const std::size_t n = a.rows();
    if (n == 0) return Rational(1);

    std::vector<mpz_class> b(n * n);
    mpz_class scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        mpz_class row_lcm = 1;
        for (std::size_t j = 0; j < n; ++j) mpz_lcm(row_lcm.get_mpz_t(), row_lcm.get_mpz_t(),
                                                   a(i, j).raw().get_den_mpz_t());
        for (std::size_t j = 0; j < n; ++j) {
            const auto& q = a(i, j).raw();
            b[i * n + j] = q.get_num() * (row_lcm / q.get_den());
        }
        scale *= row_lcm;
    }
    auto at = [&](std::size_t i, std::size_t j) -> mpz_class& { return b[i * n + j]; };

    int sign = 1;
    mpz_class prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && at(pivot, k) == 0) ++pivot;
        if (pivot == n) return Rational(0);
        if (pivot != k) {
            for (std::size_t j = k; j < n; ++j) std::swap(at(pivot, j), at(k, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                at(i, j) = at(i, j) * at(k, k) - at(i, k) * at(k, j);
                mpz_divexact(at(i, j).get_mpz_t(), at(i, j).get_mpz_t(), prev.get_mpz_t());
            }
            at(i, k) = 0;
        }
        prev = at(k, k);
    }
    return Rational(mpz_class(sign * at(n - 1, n - 1)), scale);
}

/// Gauss-Jordan inverse with first-nonzero pivoting. Throws SingularMatrixError with the rank.
inline RationalMatrix inverse(const RationalMatrix& a) {
    if (!a.is_square()) throw DimensionError("inverse of non-square " + a.shape() + " matrix");
    const std::size_t n = a.rows();
    RationalMatrix work = a;
    RationalMatrix inv = RationalMatrix::identity(n);

    std::size_t rank = 0;
    bool singular = false;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = rank;
        while (pivot < n && work(pivot, col).is_zero()) ++pivot;
        if (pivot == n) {
            singular = true;  // keep eliminating so the reported rank is exact
            continue;
        }
        if (pivot != rank) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(work(pivot, j), work(rank, j));
                std::swap(inv(pivot, j), inv(rank, j));
            }
        }
        const Rational scale = work(rank, col).reciprocal();
        for (std::size_t j = 0; j < n; ++j) {
            work(rank, j) *= scale;
            inv(rank, j) *= scale;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == rank || work(i, col).is_zero()) continue;
            const Rational factor = work(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                work(i, j) -= factor * work(rank, j);
                inv(i, j) -= factor * inv(rank, j);
            }
        }
        ++rank;
    }
    if (singular) throw SingularMatrixError(rank, n);
    return inv;
}

/// Sum of all n^2 cofactors, via det(A + J) - det(A) with J the all-ones matrix.
inline Rational cofactor_sum(const RationalMatrix& a) {
    if (!a.is_square()) throw DimensionError("cofactor sum of non-square " + a.shape() + " matrix");
    return det(a + RationalMatrix::ones(a.rows(), a.cols())) - det(a);
}

/// Sum of all entries, i.e. 1' A 1.
inline Rational entry_sum(const RationalMatrix& a) {
    Rational s;
    for (const auto& x : a.entries()) s += x;
    return s;
}

}  // namespace sqdist
