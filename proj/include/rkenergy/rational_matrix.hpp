#pragma once

#include "rkenergy/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace rkenergy {

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols);
    RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

    static RationalMatrix identity(std::size_t n);
    static RationalMatrix diagonal(std::span<const Rational> entries);

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] bool is_square() const { return rows_ == cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    [[nodiscard]] std::span<const Rational> entries() const { return entries_; }

    [[nodiscard]] RationalMatrix transpose() const;
    /// Top-left n x n block.
    [[nodiscard]] RationalMatrix leading_block(std::size_t n) const;

    [[nodiscard]] bool is_symmetric() const;
    [[nodiscard]] bool is_zero() const;
    [[nodiscard]] bool is_unit_upper_triangular() const;

    RationalMatrix& operator+=(const RationalMatrix& rhs);
    RationalMatrix& operator-=(const RationalMatrix& rhs);

    friend RationalMatrix operator+(RationalMatrix lhs, const RationalMatrix& rhs) { return lhs += rhs; }
    friend RationalMatrix operator-(RationalMatrix lhs, const RationalMatrix& rhs) { return lhs -= rhs; }
    friend RationalMatrix operator*(const RationalMatrix& lhs, const RationalMatrix& rhs);
    friend RationalMatrix operator*(const Rational& scale, RationalMatrix m);
    friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) = default;

    /// Nested-list rendering, e.g. ((1, -1/2), (0, 1)).
    [[nodiscard]] std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> entries_;
};

/// Exact determinant by Gaussian elimination with row swaps on zero pivots.
Rational determinant(RationalMatrix m);

/// Result of the position-fixed factorization  S - diag(delta) = -U^T diag(d) U.
struct UtduFactorization {
    RationalMatrix U;            ///< unit upper triangular
    std::vector<Rational> d;     ///< nonnegative
    std::vector<Rational> delta; ///< nonnegative diagonal shift (all zero unless repaired)
    bool success = false;
};

/// Factorizes a symmetric S as S - diag(delta) = -U^T D U without pivoting.
///
/// Elimination runs column by column on M = -S. With repair disabled the
/// factorization fails (success = false) as soon as a pivot is negative, or
/// zero while the rest of its row is not. With repair enabled a failing
/// pivot p is lifted greedily: delta_k = -p when the rest of the row is
/// already zero (pivot becomes 0), otherwise delta_k = 1 - p (pivot becomes 1).
///
/// Throws ContractViolation when S is not square and symmetric.
UtduFactorization utdu_factorize(const RationalMatrix& S, bool repair);

/// True iff -S is positive semidefinite, decided exactly from pivot signs.
bool is_negative_semidefinite(const RationalMatrix& S);

/// Largest m in [0, n] such that the leading m x m block of S is negative
/// semidefinite.
std::size_t largest_nsd_leading_block(const RationalMatrix& S);

}  // namespace rkenergy
